#pragma once

#include <random>

#include "ccgf/circuit.hpp"
#include "ccgf/resources.hpp"
#include "ccgf/series.hpp"

namespace ccgf {

enum class MeasureMode { exact, hadamard, lcu };
enum class Part { real_part, imag_part };

struct MeasurementConfig {
    MeasureMode mode = MeasureMode::exact;
    long shots = 0;  // 0 is the infinite-shot (exact) limit
    std::uint64_t seed = 0;
    double eps_m = 0.0;          // target accuracy, informational
    bool collect_stats = false;  // fill LcuStats (quadratic in term count)
};

// Deterministic stream derivation: a splitmix64 chain over the key parts.
// Every sampled observable owns a stream keyed by (seed, grid point, term,
// channel, part), so runs are reproducible and independent of evaluation
// order.
std::uint64_t mix_key(std::initializer_list<std::uint64_t> parts);
std::mt19937_64 keyed_engine(std::initializer_list<std::uint64_t> parts);

// <Phi| W_k^+ U W_l |Phi> by direct propagation of the statevector.
cplx exact_expectation(const PauliString& wk, const PauliString& wl,
                       const AimParams& p, const ReferenceState& ref,
                       const EvolutionConfig& cfg);

// Interference-test estimate of one part of the pair expectation. The
// ancilla measures 0 with probability (1 + value)/2; the estimate is
// 2 p_hat - 1, which is unbiased. stream separates sampling streams of
// different observables under one seed.
double hadamard_test(const PauliString& wk, const PauliString& wl,
                     const AimParams& p, const ReferenceState& ref,
                     const EvolutionConfig& cfg, Part part,
                     const MeasurementConfig& mcfg, std::uint64_t stream);

struct LcuOutcome {
    double estimate = 0.0;
    double exact = 0.0;
    double stderr_est = 0.0;
    double success_rate = 0.0;  // zero-register fraction
    double success_exact = 0.0;
    double one_norm = 0.0;  // s = sum_kl |nu_k mu_l|
    LcuStats stats;
};

// One prepare / select / unprepare circuit covering every bra-ket product
// of the expansion at once. Amplitudes sqrt(|nu_k mu_l| / s) prepare the
// coefficient register, signs fold into the select phases, and the
// zero-register interference gives
//   s (p_plus - p_minus) = Re or Im sum_kl nu_k mu_l <W_k Phi|U|W_l Phi>.
// Probabilities are computed exactly from the reduced statevector algebra
// and then sampled shots times.
LcuOutcome lcu_estimate(const LcuExpansion& expansion, const AimParams& p,
                        const ReferenceState& ref, const EvolutionConfig& cfg,
                        Part part, const MeasurementConfig& mcfg,
                        std::uint64_t stream);

// Green's function of one orbital pair: lesser <c_q^+ U_- c_p> plus greater
// <c_p U_+ c_q^+> over the coupled-cluster pair of states, on the time
// grid. The evolution sign and the e_cc phase are set per channel from the
// amplitudes; cfg controls Trotterization. When cfg.r is set and the grid
// is increasing, r counts substeps per grid interval, keeping the substep
// duration fixed as the series extends. In hadamard mode matching bra and
// ket product sets are measured once per unordered pair.
GreensSeries greens_series(const AimParams& p, const CCAmplitudes& amps,
                           int orb_p, int orb_q, const std::vector<double>& grid,
                           const EvolutionConfig& cfg, const MeasurementConfig& mcfg,
                           MapMode map_mode = MapMode::full);

// Spin-summed impurity average: both impurity spin-orbitals at half weight.
GreensSeries site_greens_series(const AimParams& p, const CCAmplitudes& amps,
                                const std::vector<double>& grid,
                                const EvolutionConfig& cfg,
                                const MeasurementConfig& mcfg,
                                MapMode map_mode = MapMode::full);

}  // namespace ccgf
