#include "ccgf/measure.hpp"

#include <algorithm>
#include <cmath>

namespace ccgf {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

}  // namespace

std::uint64_t mix_key(std::initializer_list<std::uint64_t> parts) {
    std::uint64_t h = 0x2545f4914f6cdd1dull;
    for (std::uint64_t p : parts) h = splitmix64(h ^ p);
    return h;
}

std::mt19937_64 keyed_engine(std::initializer_list<std::uint64_t> parts) {
    return std::mt19937_64(mix_key(parts));
}

namespace {

// Applies U(t) for a fixed channel configuration, caching the spectral
// decomposition in exact mode.
class Propagator {
  public:
    Propagator(const AimParams& p, const EvolutionConfig& cfg)
        : params_(p), cfg_(cfg) {
        if (!cfg_.trotter) {
            Eigen::SelfAdjointEigenSolver<Mat> eig(build_hamiltonian(p));
            q_ = eig.eigenvectors();
            w_ = eig.eigenvalues();
        }
    }

    CVec apply(const CVec& v, double t) const {
        if (!cfg_.trotter) {
            const double tau = 2.0 * M_PI * cfg_.sign;
            CVec c = q_.transpose() * v;
            for (long k = 0; k < c.size(); ++k)
                c[k] *= std::exp(cplx(0.0, tau * (w_[k] - cfg_.e_cc) * t));
            return q_ * c;
        }
        StateVector s;
        s.n = params_.n_spin_orbitals();
        s.amplitudes = v;
        EvolutionConfig c = cfg_;
        c.t = t;
        trotter_evolve(s, params_, c);
        return s.amplitudes;
    }

    CMat dense(double t) const {
        const long dim = params_.dim();
        CMat u(dim, dim);
        for (long d = 0; d < dim; ++d) {
            CVec e = CVec::Zero(dim);
            e[d] = 1.0;
            u.col(d) = apply(e, t);
        }
        return u;
    }

  private:
    const AimParams& params_;
    EvolutionConfig cfg_;
    Mat q_;
    Vec w_;
};

CVec reference_cvec(const ReferenceState& ref) {
    CVec phi = CVec::Zero(1L << ref.n);
    phi[(long)ref.occupation] = 1.0;
    return phi;
}

double clamp01(double x) { return std::min(1.0, std::max(0.0, x)); }

}  // namespace

cplx exact_expectation(const PauliString& wk, const PauliString& wl,
                       const AimParams& p, const ReferenceState& ref,
                       const EvolutionConfig& cfg) {
    StateVector a = StateVector::from_reference(ref);
    apply_pauli(a, wl);
    evolve(a, p, cfg);
    StateVector b = StateVector::from_reference(ref);
    apply_pauli(b, wk);
    return b.amplitudes.dot(a.amplitudes);
}

double hadamard_test(const PauliString& wk, const PauliString& wl,
                     const AimParams& p, const ReferenceState& ref,
                     const EvolutionConfig& cfg, Part part,
                     const MeasurementConfig& mcfg, std::uint64_t stream) {
    const cplx val = exact_expectation(wk, wl, p, ref, cfg);
    const double target = part == Part::real_part ? val.real() : val.imag();
    if (mcfg.shots <= 0) return target;
    const double p0 = clamp01(0.5 * (1.0 + target));
    auto eng = keyed_engine({mcfg.seed, stream, part == Part::real_part ? 1ull : 2ull});
    std::binomial_distribution<long> dist(mcfg.shots, p0);
    const long k = dist(eng);
    return 2.0 * (double)k / (double)mcfg.shots - 1.0;
}

LcuOutcome lcu_estimate(const LcuExpansion& expansion, const AimParams& p,
                        const ReferenceState& ref, const EvolutionConfig& cfg,
                        Part part, const MeasurementConfig& mcfg,
                        std::uint64_t stream) {
    if (expansion.ket.empty() || expansion.bra.empty())
        throw std::invalid_argument("expansion has no terms to measure");

    std::vector<double> coeffs;
    coeffs.reserve(expansion.bra.size() * expansion.ket.size());
    for (const auto& bk : expansion.bra)
        for (const auto& kl : expansion.ket)
            coeffs.push_back(bk.coefficient * kl.coefficient);
    double s = 0.0;
    for (double c : coeffs) s += std::abs(c);
    if (s == 0.0) throw std::invalid_argument("expansion coefficients are all zero");

    const CVec phi = reference_cvec(ref);
    CVec yb = CVec::Zero(phi.size());
    for (const auto& term : expansion.ket)
        yb += term.coefficient * term.w.apply(phi);
    const Propagator prop(p, cfg);
    const CVec uy = prop.apply(yb, cfg.t);
    CVec rphi = CVec::Zero(phi.size());
    for (const auto& term : expansion.bra)
        rphi += term.coefficient * term.w.adjoint().apply(uy);
    const CVec w = rphi / s;

    double p_plus, p_minus;
    if (part == Part::real_part) {
        p_plus = clamp01(0.25 * (phi + w).squaredNorm());
        p_minus = clamp01(0.25 * (phi - w).squaredNorm());
    } else {
        p_plus = clamp01(0.25 * (phi - cplx(0, 1) * w).squaredNorm());
        p_minus = clamp01(0.25 * (phi + cplx(0, 1) * w).squaredNorm());
    }

    LcuOutcome out;
    out.one_norm = s;
    out.exact = s * (p_plus - p_minus);
    out.success_exact = p_plus + p_minus;
    if (mcfg.shots <= 0) {
        out.estimate = out.exact;
        out.success_rate = out.success_exact;
        out.stderr_est = 0.0;
    } else {
        auto eng =
            keyed_engine({mcfg.seed, stream, part == Part::real_part ? 3ull : 4ull});
        const long n = mcfg.shots;
        std::binomial_distribution<long> dp(n, p_plus);
        const long k_plus = dp(eng);
        long k_minus = 0;
        if (n - k_plus > 0 && p_plus < 1.0) {
            std::binomial_distribution<long> dm(n - k_plus,
                                                clamp01(p_minus / (1.0 - p_plus)));
            k_minus = dm(eng);
        }
        out.estimate = s * (double)(k_plus - k_minus) / (double)n;
        out.success_rate = (double)(k_plus + k_minus) / (double)n;
        const double hp = (double)k_plus / n, hm = (double)k_minus / n;
        out.stderr_est =
            s * std::sqrt((hp * (1 - hp) + hm * (1 - hm) + 2 * hp * hm) / n);
    }
    if (mcfg.collect_stats) {
        const CMat u = prop.dense(cfg.t);
        std::vector<CMat> select;
        select.reserve(coeffs.size());
        for (const auto& bk : expansion.bra) {
            const CMat wk = bk.w.matrix().adjoint() * u;
            for (const auto& kl : expansion.ket) select.push_back(wk * kl.w.matrix());
        }
        out.stats = lcu_failure_bound(coeffs, &select);
    }
    return out;
}

namespace {

struct ChannelAccumulator {
    std::vector<cplx> value;
    std::vector<double> var_re;
    std::vector<double> var_im;
};

ChannelAccumulator evaluate_channel(const AimParams& p, const ReferenceState& ref,
                                    const LcuExpansion& expansion,
                                    const EvolutionConfig& cfg,
                                    const MeasurementConfig& mcfg,
                                    const std::vector<double>& grid,
                                    std::uint64_t chan_key) {
    ChannelAccumulator acc;
    acc.value.assign(grid.size(), 0.0);
    acc.var_re.assign(grid.size(), 0.0);
    acc.var_im.assign(grid.size(), 0.0);
    if (expansion.ket.empty() || expansion.bra.empty()) return acc;

    const CVec phi = reference_cvec(ref);
    const Propagator prop(p, cfg);

    // With an explicit Trotter step count, the series counts cfg.r substeps
    // per grid interval, so the substep duration stays fixed as the horizon
    // grows instead of stretching with t.
    const bool stepped = cfg.trotter && cfg.r > 0 &&
                         std::is_sorted(grid.begin(), grid.end());

    if (mcfg.mode == MeasureMode::exact || mcfg.shots <= 0) {
        CVec yb = CVec::Zero(phi.size());
        for (const auto& term : expansion.ket)
            yb += term.coefficient * term.w.apply(phi);
        CVec zb = CVec::Zero(phi.size());
        for (const auto& term : expansion.bra)
            zb += term.coefficient * term.w.apply(phi);
        if (stepped) {
            CMat u_inc;
            double inc = -1.0, prev = 0.0;
            CVec cur = yb;
            for (size_t i = 0; i < grid.size(); ++i) {
                const double d = grid[i] - prev;
                if (d > 0.0) {
                    if (std::abs(d - inc) > 1e-12 * std::max(1.0, d))
                        u_inc = prop.dense(inc = d);
                    cur = u_inc * cur;
                    prev = grid[i];
                }
                acc.value[i] = zb.dot(cur);
            }
            return acc;
        }
        for (size_t i = 0; i < grid.size(); ++i)
            acc.value[i] = zb.dot(prop.apply(yb, grid[i]));
        return acc;
    }

    if (mcfg.mode == MeasureMode::hadamard) {
        // Matching product families are measured once per unordered pair;
        // the pair expectation is symmetric because the propagator matrix
        // is symmetric and the product states are real.
        bool shared = expansion.bra.size() == expansion.ket.size();
        if (shared)
            for (size_t k = 0; k < expansion.bra.size(); ++k)
                if (expansion.bra[k].modes != expansion.ket[k].modes) {
                    shared = false;
                    break;
                }
        struct PairTerm {
            double coeff;
            size_t k, l;
        };
        std::vector<PairTerm> pairs;
        if (shared) {
            for (size_t k = 0; k < expansion.bra.size(); ++k)
                for (size_t l = k; l < expansion.ket.size(); ++l) {
                    const double c =
                        k == l ? expansion.bra[k].coefficient * expansion.ket[l].coefficient
                               : expansion.bra[k].coefficient * expansion.ket[l].coefficient +
                                     expansion.bra[l].coefficient * expansion.ket[k].coefficient;
                    pairs.push_back({c, k, l});
                }
        } else {
            for (size_t k = 0; k < expansion.bra.size(); ++k)
                for (size_t l = 0; l < expansion.ket.size(); ++l)
                    pairs.push_back(
                        {expansion.bra[k].coefficient * expansion.ket[l].coefficient, k, l});
        }

        std::vector<CVec> kets, bras;
        for (const auto& term : expansion.ket) kets.push_back(term.w.apply(phi));
        for (const auto& term : expansion.bra) bras.push_back(term.w.apply(phi));

        CMat u_inc;
        double inc = -1.0, prev = 0.0;
        for (size_t i = 0; i < grid.size(); ++i) {
            std::vector<CVec> ukets;
            if (stepped) {
                const double d = grid[i] - prev;
                if (d > 0.0) {
                    if (std::abs(d - inc) > 1e-12 * std::max(1.0, d))
                        u_inc = prop.dense(inc = d);
                    for (auto& kv : kets) kv = u_inc * kv;
                    prev = grid[i];
                }
            } else {
                ukets.reserve(kets.size());
                for (const auto& kv : kets) ukets.push_back(prop.apply(kv, grid[i]));
            }
            const std::vector<CVec>& evolved = stepped ? kets : ukets;
            for (size_t pi = 0; pi < pairs.size(); ++pi) {
                const auto& pr = pairs[pi];
                if (pr.coeff == 0.0) continue;
                const cplx val = bras[pr.k].dot(evolved[pr.l]);
                const std::uint64_t stream = mix_key({chan_key, (std::uint64_t)i, pi});
                double est_re, est_im;
                {
                    const double target = val.real();
                    auto eng = keyed_engine({mcfg.seed, stream, 1ull});
                    std::binomial_distribution<long> dist(mcfg.shots,
                                                          clamp01(0.5 * (1 + target)));
                    est_re = 2.0 * dist(eng) / (double)mcfg.shots - 1.0;
                }
                {
                    const double target = val.imag();
                    auto eng = keyed_engine({mcfg.seed, stream, 2ull});
                    std::binomial_distribution<long> dist(mcfg.shots,
                                                          clamp01(0.5 * (1 + target)));
                    est_im = 2.0 * dist(eng) / (double)mcfg.shots - 1.0;
                }
                acc.value[i] += pr.coeff * cplx(est_re, est_im);
                const double pr_re = clamp01(0.5 * (1 + est_re));
                const double pr_im = clamp01(0.5 * (1 + est_im));
                acc.var_re[i] +=
                    pr.coeff * pr.coeff * 4.0 * pr_re * (1 - pr_re) / mcfg.shots;
                acc.var_im[i] +=
                    pr.coeff * pr.coeff * 4.0 * pr_im * (1 - pr_im) / mcfg.shots;
            }
        }
        return acc;
    }

    // Single-circuit mode.
    for (size_t i = 0; i < grid.size(); ++i) {
        EvolutionConfig c = cfg;
        c.t = grid[i];
        if (stepped && i > 0) c.r = cfg.r * (int)i;
        const std::uint64_t stream = mix_key({chan_key, (std::uint64_t)i});
        const LcuOutcome re =
            lcu_estimate(expansion, p, ref, c, Part::real_part, mcfg, stream);
        const LcuOutcome im =
            lcu_estimate(expansion, p, ref, c, Part::imag_part, mcfg, stream);
        acc.value[i] = cplx(re.estimate, im.estimate);
        acc.var_re[i] = re.stderr_est * re.stderr_est;
        acc.var_im[i] = im.stderr_est * im.stderr_est;
    }
    return acc;
}

std::string mode_name(MeasureMode m) {
    switch (m) {
        case MeasureMode::exact: return "exact";
        case MeasureMode::hadamard: return "hadamard";
        case MeasureMode::lcu: return "lcu";
    }
    return "exact";
}

}  // namespace

GreensSeries greens_series(const AimParams& p, const CCAmplitudes& amps,
                           int orb_p, int orb_q, const std::vector<double>& grid,
                           const EvolutionConfig& cfg, const MeasurementConfig& mcfg,
                           MapMode map_mode) {
    p.validate();
    const LcuExpansion less = build_lesser_lcu(orb_p, orb_q, amps, map_mode);
    const LcuExpansion grt = build_greater_lcu(orb_p, orb_q, amps, map_mode);

    EvolutionConfig lc = cfg;
    lc.sign = -1;
    lc.e_cc = amps.e_cc;
    EvolutionConfig gc = cfg;
    gc.sign = +1;
    gc.e_cc = amps.e_cc;

    const std::uint64_t key_less =
        mix_key({(std::uint64_t)orb_p, (std::uint64_t)orb_q, 1ull});
    const std::uint64_t key_grt =
        mix_key({(std::uint64_t)orb_p, (std::uint64_t)orb_q, 2ull});
    const ChannelAccumulator al =
        evaluate_channel(p, amps.ref, less, lc, mcfg, grid, key_less);
    const ChannelAccumulator ag =
        evaluate_channel(p, amps.ref, grt, gc, mcfg, grid, key_grt);

    GreensSeries out;
    out.grid = grid;
    out.mode = mcfg.shots <= 0 ? "exact" : mode_name(mcfg.mode);
    out.seed = mcfg.seed;
    for (size_t i = 0; i < grid.size(); ++i) {
        out.lesser.push_back(al.value[i]);
        out.greater.push_back(ag.value[i]);
        out.total.push_back(al.value[i] + ag.value[i]);
        out.stderr_re.push_back(std::sqrt(al.var_re[i] + ag.var_re[i]));
        out.stderr_im.push_back(std::sqrt(al.var_im[i] + ag.var_im[i]));
    }
    return out;
}

GreensSeries site_greens_series(const AimParams& p, const CCAmplitudes& amps,
                                const std::vector<double>& grid,
                                const EvolutionConfig& cfg,
                                const MeasurementConfig& mcfg, MapMode map_mode) {
    const int qd = jw_qubit_index(0, Spin::down, p.n_bath);
    const int qu = jw_qubit_index(0, Spin::up, p.n_bath);
    const GreensSeries gd = greens_series(p, amps, qd, qd, grid, cfg, mcfg, map_mode);
    const GreensSeries gu = greens_series(p, amps, qu, qu, grid, cfg, mcfg, map_mode);
    GreensSeries out = gd;
    for (size_t i = 0; i < grid.size(); ++i) {
        out.lesser[i] = 0.5 * (gd.lesser[i] + gu.lesser[i]);
        out.greater[i] = 0.5 * (gd.greater[i] + gu.greater[i]);
        out.total[i] = out.lesser[i] + out.greater[i];
        out.stderr_re[i] = 0.5 * std::sqrt(gd.stderr_re[i] * gd.stderr_re[i] +
                                           gu.stderr_re[i] * gu.stderr_re[i]);
        out.stderr_im[i] = 0.5 * std::sqrt(gd.stderr_im[i] * gd.stderr_im[i] +
                                           gu.stderr_im[i] * gu.stderr_im[i]);
    }
    return out;
}

}  // namespace ccgf
