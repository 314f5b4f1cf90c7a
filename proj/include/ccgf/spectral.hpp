#pragma once

#include <vector>

#include "ccgf/series.hpp"

namespace ccgf {

struct SpectralPeak {
    double omega = 0.0;
    double height = 0.0;
};

// Damped Fourier transform of a sampled Green's function. The time grid must
// be uniform and start at zero; the frequency grid is chosen by zero-padded
// FFT with spacing 1/(pad_factor*M*dt).
SpectralSeries spectral_function(const GreensSeries& g, double delta,
                                 int pad_factor = 4);

// Same transform evaluated by direct summation on a caller-supplied
// frequency grid.
SpectralSeries spectral_function(const GreensSeries& g, double delta,
                                 const std::vector<double>& omega);

// Local maxima at or above rel_height times the global maximum.
std::vector<SpectralPeak> find_peaks(const SpectralSeries& s,
                                     double rel_height = 0.05);

// Analytic broadened spectrum of a pole set on an explicit frequency grid.
// Each pole contributes weight/pi * delta / ((omega-pole)^2 + delta^2).
std::vector<double> lorentzian_reference(const LehmannData& poles,
                                         const std::vector<double>& omega,
                                         double delta);

// Trapezoid integral of the spectrum over its own grid.
double spectral_weight(const SpectralSeries& s);

}  // namespace ccgf
