#pragma once

#include "ccgf/model.hpp"
#include "ccgf/unitary_map.hpp"

namespace ccgf {

struct StateVector {
    CVec amplitudes;
    int n = 0;

    static StateVector basis_state(std::uint64_t bits, int n);
    static StateVector from_reference(const ReferenceState& ref);
    double norm() const { return amplitudes.norm(); }
};

// Parameters of U(t) = exp(sign i 2 pi (H - e_cc) t). Frequencies are in
// cycles, hence the 2 pi. r = 0 asks for the default substep count from
// the second-order bound upsilon t^3 / r^2 <= eps_s.
struct EvolutionConfig {
    double t = 0.0;
    int r = 0;
    int sign = -1;
    double e_cc = 0.0;
    bool trotter = true;
    double eps_s = 1e-3;
};

int default_substeps(const AimParams& p, double t, double eps_s);

void apply_pauli(StateVector& s, const PauliString& op);

// Symmetric second-order split per substep: half a diagonal potential
// phase, the exact hopping-layer exponential, the second potential half.
// The e_cc contribution is a global phase applied once at the end.
void trotter_evolve(StateVector& s, const AimParams& p, const EvolutionConfig& cfg);

CMat exact_propagator(const AimParams& p, const EvolutionConfig& cfg);

// Dispatch on cfg.trotter.
void evolve(StateVector& s, const AimParams& p, const EvolutionConfig& cfg);

// Register extension: the control becomes the new highest qubit,
// |0>< 0| (x) 1 + |1><1| (x) u.
CMat controlled_unitary(const CMat& u);

// In-place controlled Pauli on a register whose qubit `control` gates the
// string (the string must carry I at the control position).
void apply_controlled_pauli(StateVector& s, const PauliString& op, int control);

}  // namespace ccgf
