#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "ccgf/ed.hpp"
#include "ccgf/spectral.hpp"
#include "doctest.h"
#include "sets.hpp"

using namespace ccgf;

namespace {

std::vector<double> default_grid() {
    std::vector<double> g;
    const double dt = 0.03;
    const int m = (int)std::floor(50.0 / dt + 1e-9) + 1;
    for (int i = 0; i < m; ++i) g.push_back(i * dt);
    return g;
}

GreensSeries exact_site_series(const AimParams& p) {
    return site_exact_greens(p, default_grid());
}

}  // namespace

TEST_CASE("sum rule of the broadened site spectrum") {
    const SpectralSeries s = spectral_function(exact_site_series(sets::single_bath()), 0.1);
    CHECK(spectral_weight(s) == doctest::Approx(1.0).epsilon(0.03));
    CHECK(s.pad_factor == 4);
    CHECK(s.dt == doctest::Approx(0.03));
    // fftshifted frequency axis is uniform and brackets zero
    const size_t m = s.omega.size();
    REQUIRE(m >= 4);
    const double dw = s.omega[1] - s.omega[0];
    CHECK(dw == doctest::Approx(1.0 / (4 * 1667 * 0.03)).epsilon(1e-12));
    CHECK(s.omega.front() < 0.0);
    CHECK(s.omega.back() > 0.0);
    for (size_t i = 1; i < m; ++i)
        CHECK(s.omega[i] - s.omega[i - 1] == doctest::Approx(dw).epsilon(1e-9));
}

TEST_CASE("transform is linear in the input series") {
    GreensSeries g = exact_site_series(sets::single_bath());
    GreensSeries g2 = g;
    for (auto& v : g2.total) v *= 3.0;
    const SpectralSeries a = spectral_function(g, 0.1);
    const SpectralSeries b = spectral_function(g2, 0.1);
    for (size_t i = 0; i < a.a.size(); ++i)
        CHECK(b.a[i] == doctest::Approx(3.0 * a.a[i]).epsilon(1e-10));
}

TEST_CASE("atomic peaks sit at the removal and addition poles") {
    const AimParams p = sets::atomic_limit();
    const SpectralSeries s = spectral_function(exact_site_series(p), 0.1);
    const auto peaks = find_peaks(s);
    REQUIRE(peaks.size() == 2);
    const double dw = s.omega[1] - s.omega[0];
    CHECK(std::abs(peaks[0].omega - 4.0) <= 0.5 * dw + 1e-12);
    CHECK(std::abs(peaks[1].omega - 12.0) <= 0.5 * dw + 1e-12);
    const double lorentz_max = 0.5 / (M_PI * 0.1);
    CHECK(peaks[0].height == doctest::Approx(lorentz_max).epsilon(0.02));
    CHECK(peaks[1].height == doctest::Approx(lorentz_max).epsilon(0.02));
}

TEST_CASE("transform peaks match the analytic broadened poles") {
    for (const AimParams& p :
         {sets::single_bath(), sets::two_bath_symmetric()}) {
        const SpectralSeries s = spectral_function(exact_site_series(p), 0.1);
        SpectralSeries ref = s;
        ref.a = lorentzian_reference(site_lehmann_spectrum(p), s.omega, 0.1);
        const auto got = find_peaks(s);
        const auto want = find_peaks(ref);
        REQUIRE(got.size() == want.size());
        const double dw = s.omega[1] - s.omega[0];
        for (size_t i = 0; i < got.size(); ++i) {
            CHECK(std::abs(got[i].omega - want[i].omega) <= dw + 1e-12);
            CHECK(got[i].height ==
                  doctest::Approx(want[i].height).epsilon(0.05));
        }
    }
}

TEST_CASE("direct summation agrees with the transform on its own grid") {
    const GreensSeries g = exact_site_series(sets::single_bath());
    const SpectralSeries fft = spectral_function(g, 0.1);
    std::vector<double> probe;
    for (size_t i = 100; i < fft.omega.size(); i += 997)
        probe.push_back(fft.omega[i]);
    const SpectralSeries direct = spectral_function(g, 0.1, probe);
    REQUIRE(direct.omega.size() == probe.size());
    size_t j = 0;
    for (size_t i = 100; i < fft.omega.size(); i += 997, ++j)
        CHECK(direct.a[j] == doctest::Approx(fft.a[i]).epsilon(1e-9));
}

TEST_CASE("invalid time grids are rejected") {
    GreensSeries g;
    g.grid = {0.0};
    g.total = {cplx(1.0, 0.0)};
    CHECK_THROWS_AS(spectral_function(g, 0.1), std::domain_error);
    g.grid = {0.5, 1.0, 1.5};
    g.total.assign(3, cplx(1.0, 0.0));
    CHECK_THROWS_AS(spectral_function(g, 0.1), std::domain_error);
    g.grid = {0.0, 1.0, 1.5};
    CHECK_THROWS_AS(spectral_function(g, 0.1), std::domain_error);
    g.grid = {0.0, 1.0, 2.0};
    CHECK_THROWS_AS(spectral_function(g, -0.1), std::domain_error);
    CHECK_THROWS_AS(spectral_function(g, 0.1, 0), std::domain_error);
    g.total.pop_back();
    CHECK_THROWS_AS(spectral_function(g, 0.1), std::domain_error);
}

TEST_CASE("peak finder keeps local maxima above the height floor") {
    SpectralSeries s;
    s.omega = {0, 1, 2, 3, 4, 5, 6};
    s.a = {0.0, 1.0, 0.0, 0.02, 0.0, 5.0, 4.0};
    const auto peaks = find_peaks(s);
    REQUIRE(peaks.size() == 2);
    CHECK(peaks[0].omega == 1.0);
    CHECK(peaks[0].height == 1.0);
    CHECK(peaks[1].omega == 5.0);
    // Lowering the floor admits the small bump.
    CHECK(find_peaks(s, 0.001).size() == 3);
}

TEST_CASE("analytic pole broadening evaluates the Lorentzian form") {
    LehmannData d;
    d.removal = {{4.0, 0.5}};
    d.addition = {{12.0, 0.25}};
    const std::vector<double> omega{4.0, 12.0, 8.0};
    const auto a = lorentzian_reference(d, omega, 0.1);
    REQUIRE(a.size() == 3);
    CHECK(a[0] == doctest::Approx(0.5 / (M_PI * 0.1) +
                                  0.25 / M_PI * 0.1 / (64.0 + 0.01))
                      .epsilon(1e-12));
    CHECK(a[1] == doctest::Approx(0.25 / (M_PI * 0.1) +
                                  0.5 / M_PI * 0.1 / (64.0 + 0.01))
                      .epsilon(1e-12));
    CHECK(a[2] == doctest::Approx(0.75 / M_PI * 0.1 / (16.0 + 0.01))
                      .epsilon(1e-12));
}

TEST_CASE("trapezoid weight of a flat spectrum") {
    SpectralSeries s;
    for (int i = 0; i <= 10; ++i) {
        s.omega.push_back(0.1 * i);
        s.a.push_back(1.0);
    }
    CHECK(spectral_weight(s) == doctest::Approx(1.0).epsilon(1e-12));
}
