#pragma once

#include <array>

#include "ccgf/model.hpp"

namespace ccgf {

// S_z-conserving singles and doubles over a reference determinant, in
// canonical order: singles (i, a) with i running over occupied and a over
// virtual orbitals, then doubles (i, j, a, b) with i < j and a < b.
struct Excitations {
    std::vector<std::pair<int, int>> singles;
    std::vector<std::array<int, 4>> doubles;
    int size() const { return (int)(singles.size() + doubles.size()); }
};

Excitations excitation_basis(const ReferenceState& ref, int truncation_level);

// Converged cluster and response amplitudes. t and lam share the layout
// singles-then-doubles of exc. Stored doubles are canonical (i<j, a<b); the
// accessors extend them antisymmetrically.
struct CCAmplitudes {
    ReferenceState ref;
    Excitations exc;
    int level = 2;
    Vec t;
    Vec lam;
    double e_ref = 0.0;
    double e_corr = 0.0;
    double e_cc = 0.0;
    double t_residual = -1.0;
    double lambda_residual = -1.0;
    int iterations = 0;
    bool t_converged = false;
    bool lambda_converged = false;

    double t1(int i, int a) const;
    double t2(int i, int j, int a, int b) const;
    double lam1(int i, int a) const;
    double lam2(int i, int j, int a, int b) const;

    // Keeps only single excitations that touch the impurity level, zeroing
    // every other t and lambda entry. Energies are left untouched.
    CCAmplitudes impurity_singles_truncation() const;
};

struct ConvergenceError : std::runtime_error {
    double residual;
    explicit ConvergenceError(const std::string& what, double r)
        : std::runtime_error(what), residual(r) {}
};

// Damped quasi-Newton iteration with DIIS acceleration on the projected
// amplitude equations, warm-started along a hybridization continuation
// (couplings scaled 0.1, 0.2, ... 1.0; a single step when all v vanish).
// Residuals are evaluated in the full Fock space through the exponential
// ansatz, so the converged energy matches the diagonalization branch that
// is adiabatically connected to the reference. Throws ConvergenceError if
// any continuation step fails to reach tol within max_iter iterations.
CCAmplitudes solve_t_amplitudes(const AimParams& p, const ReferenceState& ref,
                                int truncation_level = 2, double tol = 1e-10,
                                int max_iter = 200);

// Energy by the hybridization identity e_ref + sum_b v_b t_{singles linking
// impurity and bath b}. Independent of the projection value stored by the
// solver; the two agree for converged amplitudes.
double cc_energy(const AimParams& p, const CCAmplitudes& amps);

// Left response amplitudes from the linear system <Phi|(1+Lambda)(Hbar-E) = 0
// projected on the excitation basis, solved in the minimum-norm sense.
// Throws if the consistency residual exceeds 1e-8.
void solve_lambda_amplitudes(const AimParams& p, CCAmplitudes& amps);

enum class ClusterForm {
    exp_t,        // e^T |Phi>
    exp_minus_t,  // e^-T |Phi>
    dual_bra      // e^{-T^+}(1 + Lambda^+)|Phi>, the bra vector of the pair
};

// Fock-space vector of the requested exponential form. The cluster operator
// terminates, so the series is evaluated exactly.
Vec cluster_exponential_state(const CCAmplitudes& amps, ClusterForm form);

// Internal residual evaluation, exposed for tests.
std::pair<Vec, double> cc_residuals(const Vec& t, const Mat& h,
                                    const ReferenceState& ref,
                                    const Excitations& exc);

}  // namespace ccgf
