#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace ccgf {

// Time-domain Green's function samples. total = lesser + greater termwise.
// stderr_* hold per-point sampling errors and are zero in exact mode.
struct GreensSeries {
    std::vector<double> grid;
    std::vector<std::complex<double>> lesser;
    std::vector<std::complex<double>> greater;
    std::vector<std::complex<double>> total;
    std::vector<double> stderr_re;
    std::vector<double> stderr_im;
    std::string mode = "exact";
    std::uint64_t seed = 0;
    std::uint64_t config_hash = 0;
};

// Broadened spectral function on a frequency grid (cycles, not radians).
struct SpectralSeries {
    std::vector<double> omega;
    std::vector<double> a;
    double delta = 0.0;
    double dt = 0.0;
    int pad_factor = 1;
};

// Poles and weights of one orbital-resolved or site-averaged GF.
// removal: (e0 - e_n, |<n|c|gs>|^2), addition: (e_n - e0, |<n|c^+|gs>|^2).
struct LehmannData {
    std::vector<std::pair<double, double>> removal;
    std::vector<std::pair<double, double>> addition;
};

}  // namespace ccgf
