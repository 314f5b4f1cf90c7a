#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ccgf/model.hpp"

namespace ccgf {

struct ConfigError : std::runtime_error {
    ConfigError(int line_, const std::string& what_)
        : std::runtime_error("line " + std::to_string(line_) + ": " + what_),
          line(line_) {}
    int line;
};

// One parsed run description. Defaults reproduce the single-bath benchmark
// with exact statevector measurement.
struct RunConfig {
    // [model]
    int n_bath = 1;
    double u = 8.0;
    std::vector<double> eps{4.0, 0.0};
    std::vector<double> v{1.0};

    // [reference] "default", "empty", or an explicit bitstring with the
    // first character on qubit 0.
    std::string occupation = "default";

    // [cc]
    double cc_tol = 1e-10;
    int cc_max_iter = 200;
    std::string map = "full";  // or "t1-only"

    // [evolution]
    bool trotter = true;
    int substeps = 0;  // 0 picks the accuracy-based default
    double eps_s = 1e-3;

    // [measurement]
    std::string mode = "exact";  // exact | hadamard | lcu
    long shots = 0;              // 0 means statevector expectation values
    std::uint64_t seed = 0;
    bool collect_stats = false;

    // [spectral]
    double delta = 0.1;
    double t_max = 50.0;
    double dt = 0.03;
    int pad = 4;

    // [resources]
    std::string method = "trotter-givens";
    double res_t = 1.0;
    double res_eps_s = 1e-3;
    double res_eps_m = 1e-3;
    double res_p_f = 0.1;

    // [validate]
    double threshold = 1e-6;

    // [output]
    std::string format = "csv";  // csv | json

    std::uint64_t hash = 0;  // FNV-1a over the file bytes

    AimParams params() const;
    ReferenceState reference(const AimParams& p) const;
    std::vector<double> time_grid() const;
};

std::uint64_t fnv1a64(std::string_view bytes);
std::string hash_hex(std::uint64_t h);

// Parses the "ccgf-config v1" format: a header line, [section] groups,
// key = value entries, and # comments. Unknown sections or keys are
// rejected with the offending line number.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

std::string format_double(double x);  // round-trip decimal form

}  // namespace ccgf
