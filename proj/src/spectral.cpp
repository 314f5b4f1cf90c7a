#include "ccgf/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <stdexcept>

#include "ccgf/model.hpp"

namespace ccgf {

namespace {

double uniform_spacing(const std::vector<double>& grid) {
    if (grid.size() < 2)
        throw std::domain_error("time grid needs at least two samples");
    const double dt = (grid.back() - grid.front()) / (double)(grid.size() - 1);
    if (!(dt > 0.0)) throw std::domain_error("time grid must be increasing");
    const double scale = std::max(1.0, std::abs(grid.back()));
    if (std::abs(grid.front()) > 1e-9 * scale)
        throw std::domain_error("time grid must start at zero");
    for (size_t j = 0; j < grid.size(); ++j)
        if (std::abs(grid[j] - (double)j * dt) > 1e-9 * scale)
            throw std::domain_error("time grid must be uniform");
    return dt;
}

// Trapezoid quadrature weight times the damping envelope at sample j.
double damped_weight(size_t j, size_t m, double dt, double delta, double t) {
    const double w = (j == 0 || j + 1 == m) ? 0.5 : 1.0;
    return w * dt * std::exp(-2.0 * M_PI * delta * t);
}

}  // namespace

SpectralSeries spectral_function(const GreensSeries& g, double delta,
                                 int pad_factor) {
    if (pad_factor < 1) throw std::domain_error("pad factor must be positive");
    if (delta < 0.0) throw std::domain_error("broadening must be nonnegative");
    const double dt = uniform_spacing(g.grid);
    const size_t m = g.grid.size();
    if (g.total.size() != m)
        throw std::domain_error("series length does not match its grid");
    const size_t mp = m * (size_t)pad_factor;

    fftw_complex* in = fftw_alloc_complex(mp);
    fftw_complex* out = fftw_alloc_complex(mp);
    for (size_t j = 0; j < mp; ++j) {
        in[j][0] = 0.0;
        in[j][1] = 0.0;
    }
    for (size_t j = 0; j < m; ++j) {
        const cplx x = g.total[j] * damped_weight(j, m, dt, delta, g.grid[j]);
        in[j][0] = x.real();
        in[j][1] = x.imag();
    }
    fftw_plan plan =
        fftw_plan_dft_1d((int)mp, in, out, FFTW_FORWARD, FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);

    // Forward bins map to omega = k/(mp*dt); the upper half wraps to
    // negative frequencies, so shift to an ascending grid.
    const double domega = 1.0 / ((double)mp * dt);
    SpectralSeries s;
    s.delta = delta;
    s.dt = dt;
    s.pad_factor = pad_factor;
    s.omega.resize(mp);
    s.a.resize(mp);
    const size_t half = mp / 2;
    for (size_t i = 0; i < mp; ++i) {
        const size_t k = (i + half) % mp;
        s.omega[i] = ((double)i - (double)half) * domega;
        s.a[i] = 2.0 * out[k][0];
    }
    fftw_free(in);
    fftw_free(out);
    return s;
}

SpectralSeries spectral_function(const GreensSeries& g, double delta,
                                 const std::vector<double>& omega) {
    if (delta < 0.0) throw std::domain_error("broadening must be nonnegative");
    const size_t m = g.grid.size();
    if (m < 2) throw std::domain_error("time grid needs at least two samples");
    if (g.total.size() != m)
        throw std::domain_error("series length does not match its grid");
    std::vector<double> w(m);
    for (size_t j = 0; j < m; ++j) {
        const double lo = j == 0 ? g.grid[0] : g.grid[j - 1];
        const double hi = j + 1 == m ? g.grid[m - 1] : g.grid[j + 1];
        if (!(hi >= lo)) throw std::domain_error("time grid must be increasing");
        w[j] = 0.5 * (hi - lo) * std::exp(-2.0 * M_PI * delta * g.grid[j]);
    }
    SpectralSeries s;
    s.delta = delta;
    s.dt = (g.grid.back() - g.grid.front()) / (double)(m - 1);
    s.pad_factor = 1;
    s.omega = omega;
    s.a.resize(omega.size());
    for (size_t i = 0; i < omega.size(); ++i) {
        cplx acc = 0.0;
        for (size_t j = 0; j < m; ++j) {
            const double arg = -2.0 * M_PI * omega[i] * g.grid[j];
            acc += w[j] * g.total[j] * cplx(std::cos(arg), std::sin(arg));
        }
        s.a[i] = 2.0 * acc.real();
    }
    return s;
}

std::vector<SpectralPeak> find_peaks(const SpectralSeries& s, double rel_height) {
    std::vector<SpectralPeak> peaks;
    if (s.a.size() < 3) return peaks;
    double amax = 0.0;
    for (double a : s.a) amax = std::max(amax, a);
    const double floor = rel_height * amax;
    for (size_t i = 1; i + 1 < s.a.size(); ++i)
        if (s.a[i] > s.a[i - 1] && s.a[i] >= s.a[i + 1] && s.a[i] >= floor)
            peaks.push_back({s.omega[i], s.a[i]});
    return peaks;
}

std::vector<double> lorentzian_reference(const LehmannData& poles,
                                         const std::vector<double>& omega,
                                         double delta) {
    std::vector<double> a(omega.size(), 0.0);
    auto add = [&](const std::vector<std::pair<double, double>>& set) {
        for (const auto& [w0, weight] : set)
            for (size_t i = 0; i < omega.size(); ++i) {
                const double d = omega[i] - w0;
                a[i] += weight / M_PI * delta / (d * d + delta * delta);
            }
    };
    add(poles.removal);
    add(poles.addition);
    return a;
}

double spectral_weight(const SpectralSeries& s) {
    double acc = 0.0;
    for (size_t i = 0; i + 1 < s.omega.size(); ++i)
        acc += 0.5 * (s.a[i] + s.a[i + 1]) * (s.omega[i + 1] - s.omega[i]);
    return acc;
}

}  // namespace ccgf
