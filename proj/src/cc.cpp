#include "ccgf/cc.hpp"

#include <algorithm>
#include <cmath>

namespace ccgf {

namespace {

int bath_count(const ReferenceState& ref) { return ref.n / 2 - 1; }

bool same_spin(int p, int q, int nb) { return spin_of(p, nb) == spin_of(q, nb); }

}  // namespace

Excitations excitation_basis(const ReferenceState& ref, int truncation_level) {
    if (truncation_level < 1 || truncation_level > 2)
        throw std::invalid_argument("truncation level must be 1 or 2");
    const int nb = bath_count(ref);
    Excitations exc;
    for (int i : ref.occupied)
        for (int a : ref.virtuals)
            if (same_spin(i, a, nb)) exc.singles.push_back({i, a});
    if (truncation_level >= 2) {
        const auto& O = ref.occupied;
        const auto& S = ref.virtuals;
        for (size_t ii = 0; ii < O.size(); ++ii)
            for (size_t jj = ii + 1; jj < O.size(); ++jj)
                for (size_t aa = 0; aa < S.size(); ++aa)
                    for (size_t bb = aa + 1; bb < S.size(); ++bb) {
                        const int i = O[ii], j = O[jj], a = S[aa], b = S[bb];
                        const int szi = (int)spin_of(i, nb) + (int)spin_of(j, nb);
                        const int sza = (int)spin_of(a, nb) + (int)spin_of(b, nb);
                        if (szi == sza) exc.doubles.push_back({i, j, a, b});
                    }
    }
    return exc;
}

namespace {

// E_ij^ab = c_a^+ c_b^+ c_j c_i, singles analogously, applied right to left.
Vec apply_single(const Vec& v, int i, int a) {
    return apply_create(apply_annihilate(v, i), a);
}

Vec apply_double(const Vec& v, int i, int j, int a, int b) {
    Vec w = apply_annihilate(v, i);
    w = apply_annihilate(w, j);
    w = apply_create(w, b);
    return apply_create(w, a);
}

Vec apply_cluster(const Vec& v, const Vec& amps, const Excitations& exc) {
    Vec out = Vec::Zero(v.size());
    int k = 0;
    for (const auto& [i, a] : exc.singles) {
        if (amps[k] != 0.0) out += amps[k] * apply_single(v, i, a);
        ++k;
    }
    for (const auto& [i, j, a, b] : exc.doubles) {
        if (amps[k] != 0.0) out += amps[k] * apply_double(v, i, j, a, b);
        ++k;
    }
    return out;
}

Vec apply_cluster_dagger(const Vec& v, const Vec& amps, const Excitations& exc) {
    Vec out = Vec::Zero(v.size());
    int k = 0;
    for (const auto& [i, a] : exc.singles) {
        if (amps[k] != 0.0) out += amps[k] * apply_single(v, a, i);
        ++k;
    }
    for (const auto& [i, j, a, b] : exc.doubles) {
        if (amps[k] != 0.0) out += amps[k] * apply_double(v, a, b, i, j);
        ++k;
    }
    return out;
}

// Exponential of a terminating excitation operator.
template <class Apply>
Vec exp_series(const Vec& v, int n, double sign, Apply&& apply) {
    Vec out = v;
    Vec term = v;
    for (int k = 1; k <= n + 2; ++k) {
        term = (sign / k) * apply(term);
        if (term.cwiseAbs().maxCoeff() < 1e-300) break;
        out += term;
    }
    return out;
}

struct MuDet {
    long det;
    double sign;
};

// Determinant index and phase of each projection <Phi_mu|.
std::vector<MuDet> excited_determinants(const ReferenceState& ref,
                                        const Excitations& exc) {
    const long dim = 1L << ref.n;
    Vec phi = Vec::Zero(dim);
    phi[(long)ref.occupation] = 1.0;
    std::vector<MuDet> out;
    auto record = [&](const Vec& w) {
        long det = -1;
        for (long d = 0; d < dim; ++d)
            if (w[d] != 0.0) { det = d; break; }
        out.push_back({det, det >= 0 ? w[det] : 0.0});
    };
    for (const auto& [i, a] : exc.singles) record(apply_single(phi, i, a));
    for (const auto& [i, j, a, b] : exc.doubles) record(apply_double(phi, i, j, a, b));
    return out;
}

}  // namespace

std::pair<Vec, double> cc_residuals(const Vec& t, const Mat& h,
                                    const ReferenceState& ref,
                                    const Excitations& exc) {
    const long dim = 1L << ref.n;
    Vec phi = Vec::Zero(dim);
    phi[(long)ref.occupation] = 1.0;
    const Vec w = exp_series(phi, ref.n, +1.0,
                             [&](const Vec& x) { return apply_cluster(x, t, exc); });
    const Vec hw = h * w;
    const Vec z = exp_series(hw, ref.n, -1.0,
                             [&](const Vec& x) { return apply_cluster(x, t, exc); });
    const double e = z[(long)ref.occupation];
    const auto mus = excited_determinants(ref, exc);
    Vec r(exc.size());
    for (int k = 0; k < exc.size(); ++k) r[k] = mus[k].sign * z[mus[k].det];
    return {r, e};
}

namespace {

struct IterationResult {
    Vec t;
    double e = 0.0;
    double residual = 0.0;
    int iterations = 0;
    bool converged = false;
};

// Quasi-Newton with finite-difference Jacobian, least-squares step, fixed
// damping while the residual is large, and DIIS over the post-step iterates
// guarded to never increase the residual norm.
IterationResult newton_diis(const Mat& h, const ReferenceState& ref,
                            const Excitations& exc, const Vec& t0, double tol,
                            int max_iter) {
    const int nt = exc.size();
    const int diis_dim = 6;
    const double fd_step = 1e-7;

    Vec t = t0;
    std::vector<Vec> hist_t, hist_r;
    auto [r, e] = cc_residuals(t, h, ref, exc);
    IterationResult res;
    for (int it = 0; it < max_iter; ++it) {
        const double rmax = nt ? r.cwiseAbs().maxCoeff() : 0.0;
        if (rmax < tol) {
            res.t = t;
            res.e = e;
            res.residual = rmax;
            res.iterations = it;
            res.converged = true;
            return res;
        }
        Mat jac(nt, nt);
        for (int k = 0; k < nt; ++k) {
            Vec tp = t;
            tp[k] += fd_step;
            jac.col(k) = (cc_residuals(tp, h, ref, exc).first - r) / fd_step;
        }
        Eigen::CompleteOrthogonalDecomposition<Mat> cod(jac);
        cod.setThreshold(1e-12);
        const Vec step = cod.solve(r);
        const double damp = rmax > 1e-3 ? 0.5 : 1.0;
        Vec t_new = t - damp * step;
        auto [r_new, e_new] = cc_residuals(t_new, h, ref, exc);

        hist_t.push_back(t_new);
        hist_r.push_back(r_new);
        if ((int)hist_t.size() > diis_dim) {
            hist_t.erase(hist_t.begin());
            hist_r.erase(hist_r.begin());
        }
        const int m = (int)hist_t.size();
        if (m >= 2) {
            Mat b = Mat::Zero(m + 1, m + 1);
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) b(i, j) = hist_r[i].dot(hist_r[j]);
            b.row(m).head(m).setConstant(-1.0);
            b.col(m).head(m).setConstant(-1.0);
            Vec rhs = Vec::Zero(m + 1);
            rhs[m] = -1.0;
            Eigen::JacobiSVD<Mat> svd(b);
            const double smin = svd.singularValues()(m);
            const double smax = svd.singularValues()(0);
            if (smin > 0.0 && smax / smin < 1e12) {
                const Vec c = b.fullPivLu().solve(rhs).head(m);
                Vec t_x = Vec::Zero(nt);
                for (int i = 0; i < m; ++i) t_x += c[i] * hist_t[i];
                auto [r_x, e_x] = cc_residuals(t_x, h, ref, exc);
                if (r_x.cwiseAbs().maxCoeff() <= r_new.cwiseAbs().maxCoeff()) {
                    t_new = t_x;
                    r_new = r_x;
                    e_new = e_x;
                }
            }
        }
        t = t_new;
        r = r_new;
        e = e_new;
        res.iterations = it + 1;
    }
    res.t = t;
    res.e = e;
    res.residual = nt ? r.cwiseAbs().maxCoeff() : 0.0;
    res.converged = nt == 0;
    return res;
}

}  // namespace

CCAmplitudes solve_t_amplitudes(const AimParams& p, const ReferenceState& ref,
                                int truncation_level, double tol, int max_iter) {
    p.validate();
    CCAmplitudes amps;
    amps.ref = ref;
    amps.level = truncation_level;
    amps.exc = excitation_basis(ref, truncation_level);
    amps.e_ref = diagonal_energy(p, ref.occupation);

    const bool uncoupled =
        std::all_of(p.v.begin(), p.v.end(), [](double x) { return x == 0.0; });
    std::vector<double> lams;
    if (uncoupled)
        lams = {1.0};
    else
        for (int k = 1; k <= 10; ++k) lams.push_back(k / 10.0);

    Vec t = Vec::Zero(amps.exc.size());
    IterationResult last;
    int total_it = 0;
    for (double lam : lams) {
        AimParams ps = p;
        for (double& x : ps.v) x *= lam;
        last = newton_diis(build_hamiltonian(ps), ref, amps.exc, t, tol, max_iter);
        total_it += last.iterations;
        if (!last.converged)
            throw ConvergenceError("amplitude equations did not converge, residual " +
                                       std::to_string(last.residual),
                                   last.residual);
        t = last.t;
    }
    amps.t = t;
    amps.lam = Vec::Zero(amps.exc.size());
    amps.e_cc = last.e;
    amps.e_corr = last.e - amps.e_ref;
    amps.t_residual = last.residual;
    amps.iterations = total_it;
    amps.t_converged = true;
    return amps;
}

double cc_energy(const AimParams& p, const CCAmplitudes& amps) {
    if (!amps.t_converged)
        throw std::invalid_argument("cc_energy needs converged amplitudes");
    const int nb = bath_count(amps.ref);
    double e = amps.e_ref;
    for (size_t k = 0; k < amps.exc.singles.size(); ++k) {
        const auto [i, a] = amps.exc.singles[k];
        const int li = level_of(i, nb), la = level_of(a, nb);
        if (li == 0 && la >= 1)
            e += p.v[la - 1] * amps.t[(long)k];
        else if (la == 0 && li >= 1)
            e += p.v[li - 1] * amps.t[(long)k];
    }
    return e;
}

void solve_lambda_amplitudes(const AimParams& p, CCAmplitudes& amps) {
    if (!amps.t_converged)
        throw std::invalid_argument("lambda solve needs converged t amplitudes");
    const ReferenceState& ref = amps.ref;
    const Excitations& exc = amps.exc;
    const long dim = 1L << ref.n;
    const Mat h = build_hamiltonian(p);
    const int nt = exc.size();

    auto hbar = [&](const Vec& x) {
        const Vec ex = exp_series(x, ref.n, +1.0, [&](const Vec& y) {
            return apply_cluster(y, amps.t, exc);
        });
        const Vec hex = h * ex;
        return exp_series(hex, ref.n, -1.0, [&](const Vec& y) {
            return apply_cluster(y, amps.t, exc);
        });
    };

    const auto mus = excited_determinants(ref, exc);
    Mat m(nt, nt);
    Vec b(nt);
    for (int col = 0; col < nt; ++col) {
        Vec x = Vec::Zero(dim);
        x[mus[col].det] = mus[col].sign;
        const Vec y = hbar(x) - amps.e_cc * x;
        b[col] = y[(long)ref.occupation];
        for (int row = 0; row < nt; ++row)
            m(row, col) = mus[row].sign * y[mus[row].det];
    }
    Eigen::CompleteOrthogonalDecomposition<Mat> cod(m.transpose());
    cod.setThreshold(1e-12);
    const Vec lam = cod.solve(-b);
    const double resid = nt ? (m.transpose() * lam + b).cwiseAbs().maxCoeff() : 0.0;
    if (resid >= 1e-8)
        throw std::runtime_error("lambda equations inconsistent, residual " +
                                 std::to_string(resid));
    amps.lam = lam;
    amps.lambda_residual = resid;
    amps.lambda_converged = true;
}

namespace {

int find_single(const Excitations& exc, int i, int a) {
    for (size_t k = 0; k < exc.singles.size(); ++k)
        if (exc.singles[k].first == i && exc.singles[k].second == a) return (int)k;
    return -1;
}

// Canonical doubles index and the permutation sign of (i, j)(a, b).
std::pair<int, double> find_double(const Excitations& exc, int i, int j, int a, int b) {
    double sign = 1.0;
    if (i > j) { std::swap(i, j); sign = -sign; }
    if (a > b) { std::swap(a, b); sign = -sign; }
    if (i == j || a == b) return {-1, 0.0};
    for (size_t k = 0; k < exc.doubles.size(); ++k) {
        const auto& d = exc.doubles[k];
        if (d[0] == i && d[1] == j && d[2] == a && d[3] == b) return {(int)k, sign};
    }
    return {-1, 0.0};
}

}  // namespace

double CCAmplitudes::t1(int i, int a) const {
    const int k = find_single(exc, i, a);
    return k < 0 ? 0.0 : t[k];
}

double CCAmplitudes::t2(int i, int j, int a, int b) const {
    const auto [k, sign] = find_double(exc, i, j, a, b);
    return k < 0 ? 0.0 : sign * t[(long)exc.singles.size() + k];
}

double CCAmplitudes::lam1(int i, int a) const {
    if (lam.size() == 0) return 0.0;
    const int k = find_single(exc, i, a);
    return k < 0 ? 0.0 : lam[k];
}

double CCAmplitudes::lam2(int i, int j, int a, int b) const {
    if (lam.size() == 0) return 0.0;
    const auto [k, sign] = find_double(exc, i, j, a, b);
    return k < 0 ? 0.0 : sign * lam[(long)exc.singles.size() + k];
}

CCAmplitudes CCAmplitudes::impurity_singles_truncation() const {
    const int nb = bath_count(ref);
    CCAmplitudes out = *this;
    for (size_t k = 0; k < exc.singles.size(); ++k) {
        const auto [i, a] = exc.singles[k];
        if (level_of(i, nb) != 0 && level_of(a, nb) != 0) {
            out.t[(long)k] = 0.0;
            if (out.lam.size()) out.lam[(long)k] = 0.0;
        }
    }
    for (size_t k = exc.singles.size(); k < (size_t)exc.size(); ++k) {
        out.t[(long)k] = 0.0;
        if (out.lam.size()) out.lam[(long)k] = 0.0;
    }
    return out;
}

Vec cluster_exponential_state(const CCAmplitudes& amps, ClusterForm form) {
    const long dim = 1L << amps.ref.n;
    Vec phi = Vec::Zero(dim);
    phi[(long)amps.ref.occupation] = 1.0;
    switch (form) {
        case ClusterForm::exp_t:
            return exp_series(phi, amps.ref.n, +1.0, [&](const Vec& x) {
                return apply_cluster(x, amps.t, amps.exc);
            });
        case ClusterForm::exp_minus_t:
            return exp_series(phi, amps.ref.n, -1.0, [&](const Vec& x) {
                return apply_cluster(x, amps.t, amps.exc);
            });
        case ClusterForm::dual_bra: {
            const Vec lam_phi = phi + apply_cluster(phi, amps.lam, amps.exc);
            return exp_series(lam_phi, amps.ref.n, -1.0, [&](const Vec& x) {
                return apply_cluster_dagger(x, amps.t, amps.exc);
            });
        }
    }
    throw std::logic_error("unreachable");
}

}  // namespace ccgf
