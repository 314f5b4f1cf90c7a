#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "ccgf/ed.hpp"
#include "ccgf/measure.hpp"
#include "doctest.h"
#include "sets.hpp"

using namespace ccgf;

// The singles-only reduction keeps just the impurity-connected single
// excitations and drops everything else from both the right and left cluster
// operators before the expansion is built.
//
// On the resonant single-bath benchmark the tracked solution has no single
// amplitudes at all: the correlated state is an equal-weight mix of the
// reference and one doubly excited determinant. Truncation then empties the
// removal channel of one spin and doubles the weight of the other, and the
// two effects cancel in the half-summed site function, which therefore does
// not move at all.
TEST_CASE("truncation leaves the resonant site function unchanged") {
    const AimParams p = sets::single_bath();
    CCAmplitudes amps = solve_t_amplitudes(p, reference_state(p));
    solve_lambda_amplitudes(p, amps);

    std::vector<double> grid;
    for (int i = 0; i <= 20; ++i) grid.push_back(0.1 * i);
    EvolutionConfig ecfg;
    ecfg.trotter = false;
    MeasurementConfig mcfg;
    const GreensSeries full =
        site_greens_series(p, amps, grid, ecfg, mcfg, MapMode::full);
    const GreensSeries t1 =
        site_greens_series(p, amps, grid, ecfg, mcfg, MapMode::t1_only);

    CHECK(std::abs(full.total[0] - cplx(1.0, 0.0)) < 1e-10);
    CHECK(std::abs(t1.total[0] - cplx(1.0, 0.0)) < 1e-10);

    double dev = 0.0;
    for (size_t i = 0; i < grid.size(); ++i)
        dev = std::max(dev, std::abs(full.total[i] - t1.total[i]));
    CHECK(dev < 1e-12);

    // The cancellation happens between the spin channels, not within them:
    // the truncated removal series vanishes while the truncated addition
    // series carries exactly twice the full weight.
    const GreensSeries gf =
        greens_series(p, amps, 0, 0, grid, ecfg, mcfg, MapMode::full);
    const GreensSeries gt =
        greens_series(p, amps, 0, 0, grid, ecfg, mcfg, MapMode::t1_only);
    CHECK(std::abs(gt.lesser[10]) < 1e-14);
    CHECK(std::abs(gt.greater[10] - 2.0 * gf.greater[10]) < 1e-12);
}

// Away from the resonant point the discarded amplitudes carry real weight, so
// the reduced map is a genuine approximation rather than a relabeling. The
// band below brackets the measured deviation of about 0.28 and guards against
// the truncation silently becoming a no-op.
TEST_CASE("truncation alters the correlated two-bath series") {
    const AimParams p = sets::two_bath_symmetric();
    CCAmplitudes amps = solve_t_amplitudes(p, reference_state(p));
    solve_lambda_amplitudes(p, amps);

    std::vector<double> grid;
    for (int i = 0; i <= 20; ++i) grid.push_back(0.1 * i);
    EvolutionConfig ecfg;
    ecfg.trotter = false;
    MeasurementConfig mcfg;
    const GreensSeries full =
        site_greens_series(p, amps, grid, ecfg, mcfg, MapMode::full);
    const GreensSeries t1 =
        site_greens_series(p, amps, grid, ecfg, mcfg, MapMode::t1_only);

    CHECK(std::abs(full.total[0] - cplx(1.0, 0.0)) < 1e-10);
    CHECK(std::abs(t1.total[0] - cplx(1.0, 0.0)) < 1e-10);

    double dev = 0.0;
    for (size_t i = 0; i < grid.size(); ++i)
        dev = std::max(dev, std::abs(full.total[i] - t1.total[i]));
    CHECK(dev > 0.1);
    CHECK(dev < 0.6);
}

// At vanishing hybridization every amplitude is zero, the truncation is a
// no-op, and the two map modes coincide exactly.
TEST_CASE("singles-only map is exact at vanishing hybridization") {
    const AimParams p = sets::atomic_limit();
    CCAmplitudes amps = solve_t_amplitudes(p, reference_state(p));
    solve_lambda_amplitudes(p, amps);
    std::vector<double> grid;
    for (int i = 0; i <= 10; ++i) grid.push_back(0.2 * i);
    EvolutionConfig ecfg;
    ecfg.trotter = false;
    MeasurementConfig mcfg;
    const GreensSeries full =
        site_greens_series(p, amps, grid, ecfg, mcfg, MapMode::full);
    const GreensSeries t1 =
        site_greens_series(p, amps, grid, ecfg, mcfg, MapMode::t1_only);
    for (size_t i = 0; i < grid.size(); ++i)
        CHECK(std::abs(full.total[i] - t1.total[i]) < 1e-12);
}
