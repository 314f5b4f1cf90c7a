#include "ccgf/circuit.hpp"

#include <cmath>

#include "ccgf/resources.hpp"

namespace ccgf {

StateVector StateVector::basis_state(std::uint64_t bits, int n) {
    if (n < 1 || n > 2 * (kMaxBath + 1) + 8)
        throw std::invalid_argument("register size out of range");
    if (n < 64 && (bits >> n) != 0)
        throw std::invalid_argument("basis bits outside the register");
    StateVector s;
    s.n = n;
    s.amplitudes = CVec::Zero(1L << n);
    s.amplitudes[(long)bits] = 1.0;
    return s;
}

StateVector StateVector::from_reference(const ReferenceState& ref) {
    return basis_state(ref.occupation, ref.n);
}

int default_substeps(const AimParams& p, double t, double eps_s) {
    if (eps_s <= 0.0) throw std::invalid_argument("eps_s must be positive");
    const double u = upsilon(p);
    const double at = std::abs(t);
    if (u == 0.0 || at == 0.0) return 1;
    return std::max(1, (int)std::ceil(std::sqrt(u * at * at * at / eps_s)));
}

void apply_pauli(StateVector& s, const PauliString& op) {
    if (op.n_qubits() != s.n)
        throw std::invalid_argument("pauli string length does not match register");
    s.amplitudes = op.apply(s.amplitudes);
}

namespace {

AimParams hopping_only(const AimParams& p) {
    AimParams h = p;
    h.u_c = 0.0;
    std::fill(h.eps.begin(), h.eps.end(), 0.0);
    return h;
}

}  // namespace

void trotter_evolve(StateVector& s, const AimParams& p, const EvolutionConfig& cfg) {
    p.validate();
    if (s.amplitudes.size() != p.dim())
        throw std::invalid_argument("state dimension does not match the model");
    if (cfg.sign != 1 && cfg.sign != -1)
        throw std::invalid_argument("sign must be +1 or -1");
    const int r = cfg.r > 0 ? cfg.r : default_substeps(p, cfg.t, cfg.eps_s);
    const double dt = cfg.t / r;
    const double tau = 2.0 * M_PI * cfg.sign;
    const long dim = p.dim();

    Vec pot(dim);
    for (long d = 0; d < dim; ++d) pot[d] = diagonal_energy(p, (std::uint64_t)d);
    CVec half(dim);
    for (long d = 0; d < dim; ++d) half[d] = std::exp(cplx(0.0, tau * pot[d] * dt / 2));

    Eigen::SelfAdjointEigenSolver<Mat> hop(build_hamiltonian(hopping_only(p)));
    const Mat& q = hop.eigenvectors();
    CVec hop_phase(dim);
    for (long k = 0; k < dim; ++k)
        hop_phase[k] = std::exp(cplx(0.0, tau * hop.eigenvalues()[k] * dt));

    for (int step = 0; step < r; ++step) {
        s.amplitudes.array() *= half.array();
        CVec c = q.transpose() * s.amplitudes;
        c.array() *= hop_phase.array();
        s.amplitudes = q * c;
        s.amplitudes.array() *= half.array();
    }
    s.amplitudes *= std::exp(cplx(0.0, -tau * cfg.e_cc * cfg.t));
}

CMat exact_propagator(const AimParams& p, const EvolutionConfig& cfg) {
    p.validate();
    if (cfg.sign != 1 && cfg.sign != -1)
        throw std::invalid_argument("sign must be +1 or -1");
    Eigen::SelfAdjointEigenSolver<Mat> eig(build_hamiltonian(p));
    const Mat& q = eig.eigenvectors();
    const long dim = p.dim();
    CVec ph(dim);
    const double tau = 2.0 * M_PI * cfg.sign;
    for (long k = 0; k < dim; ++k)
        ph[k] = std::exp(cplx(0.0, tau * (eig.eigenvalues()[k] - cfg.e_cc) * cfg.t));
    return q * ph.asDiagonal() * q.transpose();
}

void evolve(StateVector& s, const AimParams& p, const EvolutionConfig& cfg) {
    if (cfg.trotter) {
        trotter_evolve(s, p, cfg);
    } else {
        s.amplitudes = exact_propagator(p, cfg) * s.amplitudes;
    }
}

CMat controlled_unitary(const CMat& u) {
    if (u.rows() != u.cols()) throw std::invalid_argument("unitary must be square");
    const long d = u.rows();
    CMat out = CMat::Zero(2 * d, 2 * d);
    out.topLeftCorner(d, d) = CMat::Identity(d, d);
    out.bottomRightCorner(d, d) = u;
    return out;
}

void apply_controlled_pauli(StateVector& s, const PauliString& op, int control) {
    if (op.n_qubits() != s.n)
        throw std::invalid_argument("pauli string length does not match register");
    if (control < 0 || control >= s.n)
        throw std::invalid_argument("control qubit out of range");
    if (op.letters[control] != 'I')
        throw std::invalid_argument("control position must carry the identity");
    const CVec& in = s.amplitudes;
    const std::uint64_t cbit = 1ull << control;
    CVec gated = CVec::Zero(in.size());
    CVec rest = CVec::Zero(in.size());
    for (long d = 0; d < in.size(); ++d) {
        if ((std::uint64_t)d & cbit)
            gated[d] = in[d];
        else
            rest[d] = in[d];
    }
    s.amplitudes = rest + op.apply(gated);
}

}  // namespace ccgf
