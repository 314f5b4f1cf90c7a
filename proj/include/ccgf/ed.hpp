#pragma once

#include <optional>

#include "ccgf/model.hpp"
#include "ccgf/series.hpp"

namespace ccgf {

// Exact-diagonalization ground state. When the full spectrum is kept the
// eigenpairs refer to the complete Fock-space Hamiltonian.
struct EdSolution {
    double e0 = 0.0;
    Vec gs;
    Vec energies;    // full spectrum, ascending (empty if not retained)
    Mat vectors;     // columns match energies
    bool tracked = false;
};

// Lowest eigenpair of a dense Hermitian matrix, optionally restricted to a
// fixed particle-number sector. Ties at the bottom of the spectrum resolve
// deterministically: largest weight on the lowest determinant index wins,
// and the global sign makes the largest-magnitude entry positive.
EdSolution ground_state(const Mat& h, std::optional<int> particle_sector = std::nullopt);

// Ground state selected by hybridization continuation. The coupling is
// scaled up from zero in steps; at each step the state is projected onto the
// eigenclusters of the rescaled Hamiltonian and follows its largest
// component. Starting point is the reference determinant. This targets the
// adiabatic branch through avoided crossings rather than the global minimum.
EdSolution tracked_ground_state(const AimParams& p);

// Two-time Green's functions from the tracked ground state,
//   lesser:  <gs| c^+_q e^{-i 2 pi (H - e0) t} c_p |gs>
//   greater: <gs| c_p e^{+i 2 pi (H - e0) t} c^+_q |gs>
// evaluated on the given time grid. total = lesser + greater.
GreensSeries exact_greens(const AimParams& p, int orb_p, int orb_q,
                          const std::vector<double>& grid);

// Pole data for one orbital of the tracked ground state.
LehmannData lehmann_spectrum(const AimParams& p, int orb);

// Site-averaged impurity pole data: both impurity spin-orbitals at half
// weight, poles merged on a 1e-9 rounding key.
LehmannData site_lehmann_spectrum(const AimParams& p);

// Site-averaged impurity GF from exact diagonalization.
GreensSeries site_exact_greens(const AimParams& p, const std::vector<double>& grid);

}  // namespace ccgf
