#pragma once

#include <optional>

#include "ccgf/model.hpp"

namespace ccgf {

// Second-order product-formula error constant
//   (1/12) ( |u_c| (sum_i |v_i|)^2 + u_c^2 (sum_i |v_i|) / 2 )
// bounding the nested commutators of the potential / hopping split.
double upsilon(const AimParams& p);

// Accumulated propagator error against the additive per-step bound
// upsilon dt^3 / n^2, both in the generator's natural units. ratio is
// bound / actual with +inf where the actual error vanishes.
struct TrotterRatioSeries {
    std::vector<double> t;
    std::vector<double> actual;
    std::vector<double> bound;
    std::vector<double> ratio;
};

TrotterRatioSeries trotter_error_ratio(const AimParams& p, double dt,
                                       int n_substeps, int n_timesteps);

enum class CostMethod {
    trotter_givens,
    taylor,
    qubitization,
    hadamard_per_term,
    lcu_single_circuit
};

CostMethod cost_method_from_name(const std::string& name);
std::string cost_method_name(CostMethod m);

// Leading-order oracle cost model with all constants set to one. N is the
// bath count, f(x) = log x / log log x. gates is the T-gate scale estimate;
// queries is only populated for the oracle-query methods.
struct ResourceReport {
    std::string method;
    double gates = 0.0;
    double ancillas = 0.0;
    std::optional<double> queries;
    double t = 0.0;
    double eps_s = 0.0;
    double eps_m = 0.0;
    double p_f = 0.0;
    int n_bath = 0;
    double upsilon = 0.0;
    double alpha_norm = 0.0;
};

ResourceReport tgate_estimate(CostMethod method, const AimParams& p, double t,
                              double eps_s, double eps_m, double p_f);

// Success statistics of a linear-combination-of-unitaries circuit whose
// coefficients carry signs. kappa is the positive-to-negative weight ratio,
// delta the largest spectral-norm distance among the select unitaries.
// Bounds are clamped to [0, 1].
struct LcuStats {
    double one_norm = 0.0;
    double kappa = 0.0;
    double delta = 0.0;
    double p_plus = 0.0;   // bound kappa delta^2 / 4
    double p_minus = 0.0;  // bound 4 kappa / (kappa + 1)^2
    double failure_bound = 0.0;
};

LcuStats lcu_failure_bound(const std::vector<double>& coefficients,
                           const std::vector<CMat>* unitaries = nullptr);

}  // namespace ccgf
