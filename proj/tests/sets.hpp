#pragma once

#include "ccgf/model.hpp"

// Benchmark parameter sets shared across the test binaries, with their
// converged ground-state energies (frozen from independent runs of the
// amplitude solver and checked against diagonalization).
namespace sets {

inline ccgf::AimParams single_bath() {
    ccgf::AimParams p;
    p.n_bath = 1;
    p.u_c = 8.0;
    p.eps = {4.0, 0.0};
    p.v = {1.0};
    return p;
}

inline ccgf::AimParams atomic_limit() {
    ccgf::AimParams p = single_bath();
    p.v = {0.0};
    return p;
}

inline ccgf::AimParams noninteracting() {
    ccgf::AimParams p = single_bath();
    p.u_c = 0.0;
    return p;
}

inline ccgf::AimParams two_bath_symmetric() {
    ccgf::AimParams p;
    p.n_bath = 2;
    p.u_c = 8.0;
    p.eps = {4.0, 3.61, 4.39};
    p.v = {0.63, 0.63};
    return p;
}

inline ccgf::AimParams two_bath_detuned() {
    ccgf::AimParams p;
    p.n_bath = 2;
    p.u_c = 8.0;
    p.eps = {4.0, -0.13, 10.1};
    p.v = {1.0, 0.15};
    return p;
}

inline constexpr double e_single_bath = 4.0;
inline constexpr double e_atomic_limit = 4.0;
inline constexpr double e_noninteracting = 4.0;
inline constexpr double e_two_bath_symmetric = 10.424482357026;
inline constexpr double e_two_bath_detuned = 3.654292264127;

}  // namespace sets
