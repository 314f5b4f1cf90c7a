#include "ccgf/resources.hpp"

#include <cmath>
#include <limits>

#include "ccgf/circuit.hpp"

namespace ccgf {

double upsilon(const AimParams& p) {
    p.validate();
    double vsum = 0.0;
    for (double v : p.v) vsum += std::abs(v);
    const double u = std::abs(p.u_c);
    return (u * vsum * vsum + 0.5 * u * u * vsum) / 12.0;
}

namespace {

double spectral_norm(const CMat& m) {
    return Eigen::BDCSVD<CMat>(m).singularValues()(0);
}

}  // namespace

TrotterRatioSeries trotter_error_ratio(const AimParams& p, double dt,
                                       int n_substeps, int n_timesteps) {
    p.validate();
    if (dt <= 0.0 || n_substeps < 1 || n_timesteps < 1)
        throw std::invalid_argument("dt, substeps and timesteps must be positive");

    const long dim = p.dim();
    Eigen::SelfAdjointEigenSolver<Mat> full(build_hamiltonian(p));
    CVec ph(dim);
    for (long k = 0; k < dim; ++k)
        ph[k] = std::exp(cplx(0.0, -full.eigenvalues()[k] * dt));
    const CMat u_exact_step =
        full.eigenvectors() * ph.asDiagonal() * full.eigenvectors().transpose();

    AimParams hop_p = p;
    hop_p.u_c = 0.0;
    std::fill(hop_p.eps.begin(), hop_p.eps.end(), 0.0);
    Eigen::SelfAdjointEigenSolver<Mat> hop(build_hamiltonian(hop_p));
    const double sub_dt = dt / n_substeps;
    CVec hop_ph(dim), pot_half(dim);
    for (long k = 0; k < dim; ++k)
        hop_ph[k] = std::exp(cplx(0.0, -hop.eigenvalues()[k] * sub_dt));
    for (long d = 0; d < dim; ++d)
        pot_half[d] =
            std::exp(cplx(0.0, -diagonal_energy(p, (std::uint64_t)d) * sub_dt / 2));

    CMat u_sub = hop.eigenvectors() * hop_ph.asDiagonal() *
                 hop.eigenvectors().transpose();
    u_sub = pot_half.asDiagonal() * u_sub * pot_half.asDiagonal();
    CMat u_trot_step = CMat::Identity(dim, dim);
    for (int k = 0; k < n_substeps; ++k) u_trot_step = u_sub * u_trot_step;

    const double ups = upsilon(p);
    const double per_step_bound = ups * dt * dt * dt / (n_substeps * (double)n_substeps);

    TrotterRatioSeries out;
    CMat u_trot = CMat::Identity(dim, dim);
    CMat u_ex = CMat::Identity(dim, dim);
    for (int k = 1; k <= n_timesteps; ++k) {
        u_trot = u_trot_step * u_trot;
        u_ex = u_exact_step * u_ex;
        const double actual = spectral_norm(u_trot - u_ex);
        const double bound = k * per_step_bound;
        out.t.push_back(k * dt);
        out.actual.push_back(actual);
        out.bound.push_back(bound);
        out.ratio.push_back(actual > 0.0
                                ? bound / actual
                                : std::numeric_limits<double>::infinity());
    }
    return out;
}

CostMethod cost_method_from_name(const std::string& name) {
    if (name == "trotter-givens") return CostMethod::trotter_givens;
    if (name == "taylor") return CostMethod::taylor;
    if (name == "qubitization") return CostMethod::qubitization;
    if (name == "hadamard-per-term") return CostMethod::hadamard_per_term;
    if (name == "lcu-single-circuit") return CostMethod::lcu_single_circuit;
    throw std::invalid_argument("unknown cost method: " + name);
}

std::string cost_method_name(CostMethod m) {
    switch (m) {
        case CostMethod::trotter_givens: return "trotter-givens";
        case CostMethod::taylor: return "taylor";
        case CostMethod::qubitization: return "qubitization";
        case CostMethod::hadamard_per_term: return "hadamard-per-term";
        case CostMethod::lcu_single_circuit: return "lcu-single-circuit";
    }
    throw std::logic_error("unreachable");
}

namespace {

// f(x) = log x / log log x, defined for log log x > 0.
double f_scaling(double x) {
    if (!(x > std::exp(1.0)))
        throw std::domain_error("f(x) = log x / log log x needs x > e");
    return std::log(x) / std::log(std::log(x));
}

}  // namespace

ResourceReport tgate_estimate(CostMethod method, const AimParams& p, double t,
                              double eps_s, double eps_m, double p_f) {
    p.validate();
    if (p.n_bath < 1)
        throw std::invalid_argument("cost model needs at least one bath level");
    if (t < 0.0 || eps_s <= 0.0 || eps_m <= 0.0)
        throw std::invalid_argument("t must be nonnegative, eps_s and eps_m positive");
    if (p_f < 0.0 || p_f >= 1.0)
        throw std::invalid_argument("p_f must lie in [0, 1)");

    const double nn = (double)p.n_bath;
    const double ups = upsilon(p);
    const double alpha = pauli_one_norm(p);
    const double t32 = std::pow(t, 1.5);
    const double trotter_scale = std::sqrt(ups) * t32 / std::sqrt(eps_s);

    ResourceReport r;
    r.method = cost_method_name(method);
    r.t = t;
    r.eps_s = eps_s;
    r.eps_m = eps_m;
    r.p_f = p_f;
    r.n_bath = p.n_bath;
    r.upsilon = ups;
    r.alpha_norm = alpha;

    switch (method) {
        case CostMethod::trotter_givens:
            r.gates = trotter_scale * nn * std::log(nn);
            r.ancillas = 0.0;
            break;
        case CostMethod::taylor: {
            const double fq = f_scaling(alpha * t / eps_s);
            r.queries = alpha * t * fq;
            r.gates = nn * *r.queries;
            r.ancillas = std::log(nn) * fq;
            break;
        }
        case CostMethod::qubitization: {
            const double fq = f_scaling(1.0 / eps_s);
            r.queries = alpha * t + fq;
            r.gates = nn * *r.queries;
            r.ancillas = std::ceil(std::log2(nn)) + 2.0;
            break;
        }
        case CostMethod::hadamard_per_term:
            // One ancilla, one interference circuit per expansion term; the
            // substitutions eps_s -> eps_s / N^2 and eps_m -> eps_m / N^2
            // raise the N power of the plain Trotter cost to nine.
            r.gates = trotter_scale * std::pow(nn, 9.0) / (eps_m * eps_m);
            r.ancillas = 1.0;
            break;
        case CostMethod::lcu_single_circuit:
            r.gates = trotter_scale * std::pow(nn, 5.0) / ((1.0 - p_f) * eps_m * eps_m);
            r.ancillas = std::ceil(std::log2(nn * nn)) + 1.0;
            break;
    }
    return r;
}

LcuStats lcu_failure_bound(const std::vector<double>& coefficients,
                           const std::vector<CMat>* unitaries) {
    if (coefficients.empty())
        throw std::invalid_argument("coefficient list must be nonempty");
    if (unitaries && unitaries->size() != coefficients.size())
        throw std::invalid_argument("one unitary per coefficient required");

    LcuStats s;
    double sp = 0.0, sm = 0.0;
    for (double c : coefficients) {
        s.one_norm += std::abs(c);
        if (c >= 0.0)
            sp += c;
        else
            sm -= c;
    }
    s.kappa = sm == 0.0 ? std::numeric_limits<double>::infinity() : sp / sm;

    if (unitaries) {
        for (size_t i = 0; i < unitaries->size(); ++i)
            for (size_t j = i + 1; j < unitaries->size(); ++j)
                s.delta = std::max(
                    s.delta, spectral_norm((*unitaries)[i] - (*unitaries)[j]));
    }

    auto clamp01 = [](double x) { return std::min(1.0, std::max(0.0, x)); };
    if (std::isinf(s.kappa)) {
        s.p_minus = 0.0;
        s.p_plus = s.delta == 0.0 ? 0.0 : 1.0;
    } else {
        s.p_minus = clamp01(4.0 * s.kappa / ((s.kappa + 1.0) * (s.kappa + 1.0)));
        s.p_plus = clamp01(s.kappa * s.delta * s.delta / 4.0);
    }
    s.failure_bound = clamp01(s.p_plus + s.p_minus);
    return s;
}

}  // namespace ccgf
