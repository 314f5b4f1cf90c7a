#include "ccgf/ed.hpp"

#include <bit>
#include <cmath>
#include <map>

namespace ccgf {

namespace {

// Deterministic representative of a (possibly degenerate) lowest eigenspace:
// smallest leading determinant index, then largest weight there, with the
// leading entry made positive.
Vec pick_representative(const Mat& vectors, const std::vector<int>& candidates) {
    int best = candidates.front();
    long best_lead = -1;
    double best_amp = 0.0;
    for (int k : candidates) {
        const Vec v = vectors.col(k);
        long lead = -1;
        for (long i = 0; i < v.size(); ++i) {
            if (std::abs(v[i]) > 1e-8) { lead = i; break; }
        }
        if (lead < 0) continue;
        const double amp = std::abs(v[lead]);
        if (best_lead < 0 || lead < best_lead ||
            (lead == best_lead && amp > best_amp + 1e-12)) {
            best = k;
            best_lead = lead;
            best_amp = amp;
        }
    }
    Vec v = vectors.col(best);
    if (best_lead >= 0 && v[best_lead] < 0) v = -v;
    return v;
}

}  // namespace

EdSolution ground_state(const Mat& h, std::optional<int> particle_sector) {
    if (h.rows() != h.cols() || h.rows() == 0)
        throw std::invalid_argument("hamiltonian must be square and nonempty");
    if ((h - h.transpose()).cwiseAbs().maxCoeff() > 1e-10 * std::max(1.0, h.cwiseAbs().maxCoeff()))
        throw std::invalid_argument("hamiltonian must be symmetric");

    const long dim = h.rows();
    std::vector<long> keep;
    if (particle_sector) {
        for (long b = 0; b < dim; ++b)
            if (std::popcount((std::uint64_t)b) == *particle_sector) keep.push_back(b);
        if (keep.empty())
            throw std::invalid_argument("empty particle sector");
    } else {
        keep.resize(dim);
        for (long b = 0; b < dim; ++b) keep[b] = b;
    }

    Mat hs(keep.size(), keep.size());
    for (size_t i = 0; i < keep.size(); ++i)
        for (size_t j = 0; j < keep.size(); ++j) hs(i, j) = h(keep[i], keep[j]);

    Eigen::SelfAdjointEigenSolver<Mat> eig(hs);
    const Vec& w = eig.eigenvalues();

    // Embed eigenvectors back into the full Fock space.
    Mat vectors = Mat::Zero(dim, (long)keep.size());
    for (size_t i = 0; i < keep.size(); ++i)
        vectors.row(keep[i]) = eig.eigenvectors().row((long)i);

    const double scale = std::max(1.0, w.cwiseAbs().maxCoeff());
    std::vector<int> lowest;
    for (long k = 0; k < w.size(); ++k)
        if (w[k] <= w[0] + 1e-12 * scale) lowest.push_back((int)k);

    EdSolution sol;
    sol.e0 = w[0];
    sol.gs = pick_representative(vectors, lowest);
    sol.energies = w;
    sol.vectors = vectors;
    return sol;
}

EdSolution tracked_ground_state(const AimParams& p) {
    p.validate();
    const ReferenceState ref = reference_state(p);
    const long dim = p.dim();
    Vec psi = Vec::Zero(dim);
    psi[(long)ref.occupation] = 1.0;

    const bool uncoupled =
        std::all_of(p.v.begin(), p.v.end(), [](double x) { return x == 0.0; });
    std::vector<double> lams;
    if (uncoupled)
        lams = {1.0};
    else
        for (int k = 1; k <= 10; ++k) lams.push_back(k / 10.0);

    EdSolution sol;
    for (double lam : lams) {
        AimParams ps = p;
        for (double& x : ps.v) x *= lam;
        Eigen::SelfAdjointEigenSolver<Mat> eig(build_hamiltonian(ps));
        const Vec& w = eig.eigenvalues();
        const Mat& q = eig.eigenvectors();
        const double tol = 1e-8 * std::max(1.0, w.cwiseAbs().maxCoeff());

        // Project onto eigenclusters and follow the dominant one.
        Vec comps = q.transpose() * psi;
        long best_lo = -1, best_hi = -1;
        double best_norm2 = -1.0, best_e = 0.0;
        long lo = 0;
        while (lo < w.size()) {
            long hi = lo;
            while (hi + 1 < w.size() && w[hi + 1] - w[hi] < tol) ++hi;
            double norm2 = comps.segment(lo, hi - lo + 1).squaredNorm();
            if (norm2 > best_norm2) {
                best_norm2 = norm2;
                best_lo = lo;
                best_hi = hi;
                best_e = w[lo];
            }
            lo = hi + 1;
        }
        if (best_norm2 <= 1e-14)
            throw std::runtime_error("continuation lost the tracked state");
        Vec proj = Vec::Zero(dim);
        for (long k = best_lo; k <= best_hi; ++k) proj += comps[k] * q.col(k);
        psi = proj / proj.norm();

        sol.e0 = best_e;
        sol.gs = psi;
        sol.energies = w;
        sol.vectors = q;
    }
    // Fix the overall sign on the leading entry.
    for (long i = 0; i < dim; ++i)
        if (std::abs(sol.gs[i]) > 1e-8) {
            if (sol.gs[i] < 0) sol.gs = -sol.gs;
            break;
        }
    sol.tracked = true;
    return sol;
}

namespace {

GreensSeries greens_from_solution(const EdSolution& sol, int orb_p, int orb_q,
                                  const std::vector<double>& grid) {
    const Vec& w = sol.energies;
    const Mat& q = sol.vectors;
    const Vec y_less = apply_annihilate(sol.gs, orb_p);
    const Vec z_less = apply_annihilate(sol.gs, orb_q);
    const Vec y_grt = apply_create(sol.gs, orb_q);
    const Vec z_grt = apply_create(sol.gs, orb_p);
    const Vec yl = q.transpose() * y_less, zl = q.transpose() * z_less;
    const Vec yg = q.transpose() * y_grt, zg = q.transpose() * z_grt;

    GreensSeries out;
    out.grid = grid;
    out.mode = "ed";
    const double tau = 2.0 * M_PI;
    for (double t : grid) {
        cplx less = 0.0, grt = 0.0;
        for (long n = 0; n < w.size(); ++n) {
            const double ph = tau * (w[n] - sol.e0) * t;
            less += zl[n] * yl[n] * std::exp(cplx(0.0, -ph));
            grt += zg[n] * yg[n] * std::exp(cplx(0.0, +ph));
        }
        out.lesser.push_back(less);
        out.greater.push_back(grt);
        out.total.push_back(less + grt);
    }
    out.stderr_re.assign(grid.size(), 0.0);
    out.stderr_im.assign(grid.size(), 0.0);
    return out;
}

}  // namespace

GreensSeries exact_greens(const AimParams& p, int orb_p, int orb_q,
                          const std::vector<double>& grid) {
    if (orb_p < 0 || orb_p >= p.n_spin_orbitals() || orb_q < 0 ||
        orb_q >= p.n_spin_orbitals())
        throw std::invalid_argument("orbital index out of range");
    return greens_from_solution(tracked_ground_state(p), orb_p, orb_q, grid);
}

LehmannData lehmann_spectrum(const AimParams& p, int orb) {
    const EdSolution sol = tracked_ground_state(p);
    const Vec ca = sol.vectors.transpose() * apply_annihilate(sol.gs, orb);
    const Vec cb = sol.vectors.transpose() * apply_create(sol.gs, orb);
    LehmannData out;
    for (long n = 0; n < sol.energies.size(); ++n) {
        const double wr = ca[n] * ca[n];
        const double wa = cb[n] * cb[n];
        if (wr > 1e-12) out.removal.push_back({sol.e0 - sol.energies[n], wr});
        if (wa > 1e-12) out.addition.push_back({sol.energies[n] - sol.e0, wa});
    }
    return out;
}

namespace {

std::vector<std::pair<double, double>> merge_poles(
    const std::vector<std::pair<double, double>>& poles) {
    std::map<long long, std::pair<double, double>> acc;
    for (const auto& [om, wt] : poles) {
        const long long key = std::llround(om / 1e-9);
        auto it = acc.find(key);
        if (it == acc.end())
            acc[key] = {om, wt};
        else
            it->second.second += wt;
    }
    std::vector<std::pair<double, double>> out;
    for (const auto& [key, pw] : acc) out.push_back(pw);
    return out;
}

}  // namespace

LehmannData site_lehmann_spectrum(const AimParams& p) {
    const EdSolution sol = tracked_ground_state(p);
    const int qd = jw_qubit_index(0, Spin::down, p.n_bath);
    const int qu = jw_qubit_index(0, Spin::up, p.n_bath);
    LehmannData out;
    for (int orb : {qd, qu}) {
        const Vec ca = sol.vectors.transpose() * apply_annihilate(sol.gs, orb);
        const Vec cb = sol.vectors.transpose() * apply_create(sol.gs, orb);
        for (long n = 0; n < sol.energies.size(); ++n) {
            const double wr = 0.5 * ca[n] * ca[n];
            const double wa = 0.5 * cb[n] * cb[n];
            if (wr > 1e-12) out.removal.push_back({sol.e0 - sol.energies[n], wr});
            if (wa > 1e-12) out.addition.push_back({sol.energies[n] - sol.e0, wa});
        }
    }
    out.removal = merge_poles(out.removal);
    out.addition = merge_poles(out.addition);
    return out;
}

GreensSeries site_exact_greens(const AimParams& p, const std::vector<double>& grid) {
    const EdSolution sol = tracked_ground_state(p);
    const int qd = jw_qubit_index(0, Spin::down, p.n_bath);
    const int qu = jw_qubit_index(0, Spin::up, p.n_bath);
    const GreensSeries gd = greens_from_solution(sol, qd, qd, grid);
    const GreensSeries gu = greens_from_solution(sol, qu, qu, grid);
    GreensSeries out = gd;
    for (size_t i = 0; i < grid.size(); ++i) {
        out.lesser[i] = 0.5 * (gd.lesser[i] + gu.lesser[i]);
        out.greater[i] = 0.5 * (gd.greater[i] + gu.greater[i]);
        out.total[i] = out.lesser[i] + out.greater[i];
    }
    return out;
}

}  // namespace ccgf
