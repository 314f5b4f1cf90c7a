#include "ccgf/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "ccgf/resources.hpp"

namespace ccgf {

namespace {

std::string trim(std::string_view s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

double parse_double(const std::string& v, int line) {
    try {
        size_t pos = 0;
        double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError(line, "expected a number, got '" + v + "'");
    }
}

long parse_long(const std::string& v, int line) {
    try {
        size_t pos = 0;
        long x = std::stol(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError(line, "expected an integer, got '" + v + "'");
    }
}

std::uint64_t parse_u64(const std::string& v, int line) {
    try {
        size_t pos = 0;
        unsigned long long x = std::stoull(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError(line, "expected a nonnegative integer, got '" + v + "'");
    }
}

bool parse_bool(const std::string& v, int line) {
    if (v == "true") return true;
    if (v == "false") return false;
    throw ConfigError(line, "expected true or false, got '" + v + "'");
}

std::vector<double> parse_list(const std::string& v, int line) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_double(trim(item), line));
    if (out.empty()) throw ConfigError(line, "expected a comma-separated list");
    return out;
}

void check_choice(const std::string& v, std::initializer_list<const char*> allowed,
                  const std::string& key, int line) {
    for (const char* a : allowed)
        if (v == a) return;
    std::string msg = "invalid value '" + v + "' for " + key + " (expected";
    for (const char* a : allowed) msg += std::string(" ") + a;
    throw ConfigError(line, msg + ")");
}

void apply_key(RunConfig& c, const std::string& section, const std::string& key,
               const std::string& value, int line) {
    if (section == "model") {
        if (key == "n_bath") c.n_bath = (int)parse_long(value, line);
        else if (key == "u") c.u = parse_double(value, line);
        else if (key == "eps") c.eps = parse_list(value, line);
        else if (key == "v") c.v = parse_list(value, line);
        else throw ConfigError(line, "unknown key '" + key + "' in [model]");
    } else if (section == "reference") {
        if (key == "occupation") c.occupation = value;
        else throw ConfigError(line, "unknown key '" + key + "' in [reference]");
    } else if (section == "cc") {
        if (key == "tol") c.cc_tol = parse_double(value, line);
        else if (key == "max_iter") c.cc_max_iter = (int)parse_long(value, line);
        else if (key == "map") {
            check_choice(value, {"full", "t1-only"}, "map", line);
            c.map = value;
        } else throw ConfigError(line, "unknown key '" + key + "' in [cc]");
    } else if (section == "evolution") {
        if (key == "trotter") c.trotter = parse_bool(value, line);
        else if (key == "substeps") c.substeps = (int)parse_long(value, line);
        else if (key == "eps_s") c.eps_s = parse_double(value, line);
        else throw ConfigError(line, "unknown key '" + key + "' in [evolution]");
    } else if (section == "measurement") {
        if (key == "mode") {
            check_choice(value, {"exact", "hadamard", "lcu"}, "mode", line);
            c.mode = value;
        } else if (key == "shots") c.shots = parse_long(value, line);
        else if (key == "seed") c.seed = parse_u64(value, line);
        else if (key == "collect_stats") c.collect_stats = parse_bool(value, line);
        else throw ConfigError(line, "unknown key '" + key + "' in [measurement]");
    } else if (section == "spectral") {
        if (key == "delta") c.delta = parse_double(value, line);
        else if (key == "t_max") c.t_max = parse_double(value, line);
        else if (key == "dt") c.dt = parse_double(value, line);
        else if (key == "pad") c.pad = (int)parse_long(value, line);
        else throw ConfigError(line, "unknown key '" + key + "' in [spectral]");
    } else if (section == "resources") {
        if (key == "method") {
            try {
                cost_method_from_name(value);
            } catch (const std::exception&) {
                throw ConfigError(line, "unknown cost method '" + value + "'");
            }
            c.method = value;
        } else if (key == "t") c.res_t = parse_double(value, line);
        else if (key == "eps_s") c.res_eps_s = parse_double(value, line);
        else if (key == "eps_m") c.res_eps_m = parse_double(value, line);
        else if (key == "p_f") c.res_p_f = parse_double(value, line);
        else throw ConfigError(line, "unknown key '" + key + "' in [resources]");
    } else if (section == "validate") {
        if (key == "threshold") c.threshold = parse_double(value, line);
        else throw ConfigError(line, "unknown key '" + key + "' in [validate]");
    } else if (section == "output") {
        if (key == "format") {
            check_choice(value, {"csv", "json"}, "format", line);
            c.format = value;
        } else throw ConfigError(line, "unknown key '" + key + "' in [output]");
    } else {
        throw ConfigError(line, "unknown section [" + section + "]");
    }
}

}  // namespace

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char b : bytes) {
        h ^= b;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string hash_hex(std::uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
    return buf;
}

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::stringstream ss(text);
    std::string raw;
    int line = 0;
    std::string section;
    bool saw_header = false;
    while (std::getline(ss, raw)) {
        ++line;
        if (line == 1) {
            if (trim(raw) != "ccgf-config v1")
                throw ConfigError(1, "expected header 'ccgf-config v1'");
            saw_header = true;
            continue;
        }
        size_t hash_pos = raw.find('#');
        if (hash_pos != std::string::npos) raw.erase(hash_pos);
        const std::string s = trim(raw);
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.back() != ']')
                throw ConfigError(line, "malformed section header '" + s + "'");
            section = trim(s.substr(1, s.size() - 2));
            static const char* known[] = {"model",    "reference",   "cc",
                                          "evolution", "measurement", "spectral",
                                          "resources", "validate",    "output"};
            bool ok = false;
            for (const char* k : known) ok = ok || section == k;
            if (!ok) throw ConfigError(line, "unknown section [" + section + "]");
            continue;
        }
        size_t eq = s.find('=');
        if (eq == std::string::npos)
            throw ConfigError(line, "expected 'key = value', got '" + s + "'");
        const std::string key = trim(s.substr(0, eq));
        const std::string value = trim(s.substr(eq + 1));
        if (key.empty()) throw ConfigError(line, "missing key before '='");
        if (section.empty())
            throw ConfigError(line, "key '" + key + "' appears before any section");
        apply_key(cfg, section, key, value, line);
    }
    if (!saw_header) throw ConfigError(1, "expected header 'ccgf-config v1'");
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(0, "cannot read config file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    RunConfig cfg = parse_config(text);
    cfg.hash = fnv1a64(text);
    return cfg;
}

AimParams RunConfig::params() const {
    AimParams p;
    p.n_bath = n_bath;
    p.u_c = u;
    p.eps = eps;
    p.v = v;
    p.validate();
    return p;
}

ReferenceState RunConfig::reference(const AimParams& p) const {
    if (occupation == "default") return reference_state(p);
    if (occupation == "empty") return reference_state(p, 0);
    if ((int)occupation.size() != p.n_spin_orbitals())
        throw std::invalid_argument("occupation bitstring must have one digit per spin orbital");
    std::uint64_t bits = 0;
    for (size_t i = 0; i < occupation.size(); ++i) {
        if (occupation[i] == '1') bits |= 1ull << i;
        else if (occupation[i] != '0')
            throw std::invalid_argument("occupation bitstring must contain only 0 and 1");
    }
    return reference_state(p, bits);
}

std::vector<double> RunConfig::time_grid() const {
    if (!(dt > 0.0)) throw std::invalid_argument("time step must be positive");
    if (!(t_max >= 0.0)) throw std::invalid_argument("final time must be nonnegative");
    const long m = (long)std::floor(t_max / dt + 1e-9) + 1;
    std::vector<double> grid(m);
    for (long j = 0; j < m; ++j) grid[j] = (double)j * dt;
    return grid;
}

}  // namespace ccgf
