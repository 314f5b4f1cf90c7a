#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "ccgf/cc.hpp"
#include "ccgf/config.hpp"
#include "ccgf/ed.hpp"
#include "ccgf/measure.hpp"
#include "ccgf/resources.hpp"
#include "ccgf/spectral.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace ccgf;

namespace {

struct CommonOpts {
    std::string config_path;
    std::string out_dir;
    CLI::Option* seed_opt = nullptr;
    CLI::Option* shots_opt = nullptr;
    CLI::Option* mode_opt = nullptr;
    CLI::Option* format_opt = nullptr;
    std::uint64_t seed = 0;
    long shots = 0;
    std::string mode;
    std::string format;
};

void attach_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--config", o.config_path, "run configuration file")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--out", o.out_dir, "directory for output files");
    o.seed_opt = cmd->add_option("--seed", o.seed, "override the sampling seed");
    o.shots_opt = cmd->add_option("--shots", o.shots, "override the shot count");
    o.mode_opt = cmd->add_option("--mode", o.mode, "override the measurement mode")
                     ->check(CLI::IsMember({"exact", "hadamard", "lcu"}));
    o.format_opt = cmd->add_option("--format", o.format, "override the output format")
                       ->check(CLI::IsMember({"csv", "json"}));
}

RunConfig load_with_overrides(const CommonOpts& o) {
    RunConfig cfg = load_config(o.config_path);
    if (o.seed_opt->count()) cfg.seed = o.seed;
    if (o.shots_opt->count()) cfg.shots = o.shots;
    if (o.mode_opt->count()) cfg.mode = o.mode;
    if (o.format_opt->count()) cfg.format = o.format;
    return cfg;
}

std::ofstream open_out(const std::string& dir, const std::string& name) {
    fs::create_directories(dir);
    std::ofstream f(fs::path(dir) / name, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + name + " in " + dir);
    return f;
}

MeasureMode mode_from_string(const std::string& m) {
    if (m == "hadamard") return MeasureMode::hadamard;
    if (m == "lcu") return MeasureMode::lcu;
    return MeasureMode::exact;
}

MeasurementConfig measurement_config(const RunConfig& cfg) {
    MeasurementConfig m;
    m.mode = mode_from_string(cfg.mode);
    m.shots = cfg.shots;
    m.seed = cfg.seed;
    m.eps_m = cfg.res_eps_m;
    m.collect_stats = cfg.collect_stats;
    return m;
}

EvolutionConfig evolution_config(const RunConfig& cfg) {
    EvolutionConfig e;
    e.trotter = cfg.trotter;
    e.r = cfg.substeps;
    e.eps_s = cfg.eps_s;
    return e;
}

CCAmplitudes solve_amplitudes(const RunConfig& cfg, const AimParams& p,
                              const ReferenceState& ref) {
    CCAmplitudes amps = solve_t_amplitudes(p, ref, 2, cfg.cc_tol, cfg.cc_max_iter);
    solve_lambda_amplitudes(p, amps);
    return amps;
}

void write_greens_csv(std::ostream& os, const GreensSeries& g,
                      const RunConfig& cfg) {
    os << "# ccgf greens v1\n";
    os << "# config = " << hash_hex(cfg.hash) << "\n";
    os << "# seed = " << g.seed << "\n";
    os << "# mode = " << g.mode << "\n";
    os << "t,re_g,im_g,re_lesser,im_lesser,re_greater,im_greater,"
          "stderr_re,stderr_im\n";
    for (size_t i = 0; i < g.grid.size(); ++i) {
        os << format_double(g.grid[i]) << ',' << format_double(g.total[i].real())
           << ',' << format_double(g.total[i].imag()) << ','
           << format_double(g.lesser[i].real()) << ','
           << format_double(g.lesser[i].imag()) << ','
           << format_double(g.greater[i].real()) << ','
           << format_double(g.greater[i].imag()) << ','
           << format_double(g.stderr_re[i]) << ','
           << format_double(g.stderr_im[i]) << "\n";
    }
}

json greens_json(const GreensSeries& g, const RunConfig& cfg) {
    json j;
    j["config"] = hash_hex(cfg.hash);
    j["seed"] = g.seed;
    j["mode"] = g.mode;
    j["t"] = g.grid;
    auto split = [](const std::vector<cplx>& v) {
        json re = json::array(), im = json::array();
        for (const cplx& x : v) {
            re.push_back(x.real());
            im.push_back(x.imag());
        }
        return std::make_pair(re, im);
    };
    auto [re_g, im_g] = split(g.total);
    j["re_g"] = re_g;
    j["im_g"] = im_g;
    auto [re_l, im_l] = split(g.lesser);
    j["re_lesser"] = re_l;
    j["im_lesser"] = im_l;
    auto [re_gr, im_gr] = split(g.greater);
    j["re_greater"] = re_gr;
    j["im_greater"] = im_gr;
    j["stderr_re"] = g.stderr_re;
    j["stderr_im"] = g.stderr_im;
    return j;
}

void dump_expansion(std::ostream& os, const char* channel,
                    const LcuExpansion& x) {
    auto dump_side = [&](const char* side, const std::vector<LcuTerm>& terms) {
        os << "# " << channel << " " << side << " p=" << x.p << " q=" << x.q
           << " terms=" << terms.size() << "\n";
        os << "index,tier,coefficient,modes,pauli\n";
        for (size_t i = 0; i < terms.size(); ++i) {
            os << i << ',' << terms[i].tier << ','
               << format_double(terms[i].coefficient) << ",\"";
            for (size_t k = 0; k < terms[i].modes.size(); ++k)
                os << (k ? " " : "") << terms[i].modes[k];
            os << "\"," << terms[i].w.label() << "\n";
        }
    };
    dump_side("ket", x.ket);
    dump_side("bra", x.bra);
}

int run_solve_cc(const CommonOpts& o) {
    const RunConfig cfg = load_with_overrides(o);
    const AimParams p = cfg.params();
    const ReferenceState ref = cfg.reference(p);
    const CCAmplitudes amps = solve_amplitudes(cfg, p, ref);
    json j;
    j["config"] = hash_hex(cfg.hash);
    j["e_ref"] = amps.e_ref;
    j["e_corr"] = amps.e_corr;
    j["e_cc"] = amps.e_cc;
    j["iterations"] = amps.iterations;
    j["t_residual"] = amps.t_residual;
    j["lambda_residual"] = amps.lambda_residual;
    if (cfg.format == "json") {
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "e_ref = " << format_double(amps.e_ref) << "\n"
                  << "e_corr = " << format_double(amps.e_corr) << "\n"
                  << "e_cc = " << format_double(amps.e_cc) << "\n"
                  << "iterations = " << amps.iterations << "\n"
                  << "t_residual = " << format_double(amps.t_residual) << "\n"
                  << "lambda_residual = " << format_double(amps.lambda_residual)
                  << "\n"
                  << "config = " << hash_hex(cfg.hash) << "\n";
    }
    if (!o.out_dir.empty()) open_out(o.out_dir, "cc.json") << j.dump(2) << "\n";
    return 0;
}

int run_greens(const CommonOpts& o, int orb_p, int orb_q, bool dump_lcu) {
    const RunConfig cfg = load_with_overrides(o);
    const AimParams p = cfg.params();
    const ReferenceState ref = cfg.reference(p);
    const CCAmplitudes amps = solve_amplitudes(cfg, p, ref);
    const MapMode map = cfg.map == "t1-only" ? MapMode::t1_only : MapMode::full;
    const std::vector<double> grid = cfg.time_grid();
    const MeasurementConfig mcfg = measurement_config(cfg);
    const EvolutionConfig ecfg = evolution_config(cfg);

    GreensSeries g;
    if (orb_p >= 0 || orb_q >= 0) {
        if (orb_p < 0 || orb_q < 0)
            throw std::invalid_argument("give both --orb-p and --orb-q or neither");
        g = greens_series(p, amps, orb_p, orb_q, grid, ecfg, mcfg, map);
    } else {
        g = site_greens_series(p, amps, grid, ecfg, mcfg, map);
    }
    g.config_hash = cfg.hash;

    if (dump_lcu) {
        const int qd = jw_qubit_index(0, Spin::down, p.n_bath);
        const int qu = jw_qubit_index(0, Spin::up, p.n_bath);
        const int dp = orb_p >= 0 ? orb_p : qd;
        const int dq = orb_q >= 0 ? orb_q : qd;
        std::ostringstream dump;
        dump_expansion(dump, "lesser", build_lesser_lcu(dp, dq, amps, map));
        dump_expansion(dump, "greater", build_greater_lcu(dp, dq, amps, map));
        if (orb_p < 0) {
            dump_expansion(dump, "lesser", build_lesser_lcu(qu, qu, amps, map));
            dump_expansion(dump, "greater", build_greater_lcu(qu, qu, amps, map));
        }
        if (!o.out_dir.empty())
            open_out(o.out_dir, "lcu_terms.csv") << dump.str();
        else
            std::cout << dump.str();
    }

    if (!o.out_dir.empty()) {
        if (cfg.format == "json") {
            open_out(o.out_dir, "greens.json") << greens_json(g, cfg).dump(2) << "\n";
        } else {
            std::ofstream csv = open_out(o.out_dir, "greens.csv");
            write_greens_csv(csv, g, cfg);
        }
    } else if (cfg.format == "json") {
        std::cout << greens_json(g, cfg).dump(2) << "\n";
    } else {
        write_greens_csv(std::cout, g, cfg);
    }
    return 0;
}

int run_spectrum(const CommonOpts& o) {
    const RunConfig cfg = load_with_overrides(o);
    const AimParams p = cfg.params();
    const ReferenceState ref = cfg.reference(p);
    const CCAmplitudes amps = solve_amplitudes(cfg, p, ref);
    const MapMode map = cfg.map == "t1-only" ? MapMode::t1_only : MapMode::full;
    const GreensSeries g =
        site_greens_series(p, amps, cfg.time_grid(), evolution_config(cfg),
                           measurement_config(cfg), map);
    const SpectralSeries s = spectral_function(g, cfg.delta, cfg.pad);

    std::ostringstream csv;
    csv << "# ccgf spectrum v1\n";
    csv << "# config = " << hash_hex(cfg.hash) << "\n";
    csv << "# delta = " << format_double(s.delta) << "\n";
    csv << "omega,a\n";
    for (size_t i = 0; i < s.omega.size(); ++i)
        csv << format_double(s.omega[i]) << ',' << format_double(s.a[i]) << "\n";

    if (!o.out_dir.empty()) {
        open_out(o.out_dir, "spectrum.csv") << csv.str();
        std::ofstream gp = open_out(o.out_dir, "spectrum.gp");
        gp << "set datafile separator ','\n"
           << "set terminal pngcairo size 900,600\n"
           << "set output 'spectrum.png'\n"
           << "set xlabel 'frequency (cycles)'\n"
           << "set ylabel 'A'\n"
           << "plot 'spectrum.csv' using 1:2 with lines title 'spectral function'\n";
    } else {
        std::cout << csv.str();
    }

    std::cout << "weight = " << format_double(spectral_weight(s)) << "\n";
    for (const SpectralPeak& pk : find_peaks(s))
        std::cout << "peak omega = " << format_double(pk.omega)
                  << " height = " << format_double(pk.height) << "\n";
    return 0;
}

int run_resources(const CommonOpts& o) {
    const RunConfig cfg = load_with_overrides(o);
    const AimParams p = cfg.params();
    const ResourceReport r =
        tgate_estimate(cost_method_from_name(cfg.method), p, cfg.res_t,
                       cfg.res_eps_s, cfg.res_eps_m, cfg.res_p_f);
    json j;
    j["config"] = hash_hex(cfg.hash);
    j["method"] = r.method;
    j["gates"] = r.gates;
    j["ancillas"] = r.ancillas;
    if (r.queries)
        j["queries"] = *r.queries;
    else
        j["queries"] = nullptr;
    j["t"] = r.t;
    j["eps_s"] = r.eps_s;
    j["eps_m"] = r.eps_m;
    j["p_f"] = r.p_f;
    j["n_bath"] = r.n_bath;
    j["upsilon"] = r.upsilon;
    j["alpha_norm"] = r.alpha_norm;
    std::cout << j.dump(2) << "\n";
    if (!o.out_dir.empty()) open_out(o.out_dir, "resources.json") << j.dump(2) << "\n";
    return 0;
}

int run_validate(const CommonOpts& o) {
    const RunConfig cfg = load_with_overrides(o);
    const AimParams p = cfg.params();
    const ReferenceState ref = cfg.reference(p);
    const CCAmplitudes amps = solve_amplitudes(cfg, p, ref);
    const std::vector<double> grid = cfg.time_grid();
    MeasurementConfig mcfg = measurement_config(cfg);
    mcfg.mode = MeasureMode::exact;
    mcfg.shots = 0;
    EvolutionConfig ecfg = evolution_config(cfg);
    ecfg.trotter = false;
    const GreensSeries hybrid = site_greens_series(p, amps, grid, ecfg, mcfg);
    const GreensSeries exact = site_exact_greens(p, grid);
    double dev = 0.0;
    for (size_t i = 0; i < grid.size(); ++i)
        dev = std::max(dev, std::abs(hybrid.total[i] - exact.total[i]));
    std::cout << "max_deviation = " << format_double(dev) << "\n"
              << "threshold = " << format_double(cfg.threshold) << "\n"
              << "status = " << (dev <= cfg.threshold ? "pass" : "fail") << "\n";
    return dev <= cfg.threshold ? 0 : 3;
}

int run_trotter_ratio(const CommonOpts& o) {
    const RunConfig cfg = load_with_overrides(o);
    const AimParams p = cfg.params();
    const int n = cfg.substeps > 0 ? cfg.substeps
                                   : default_substeps(p, cfg.dt, cfg.eps_s);
    const long steps = (long)cfg.time_grid().size() - 1;
    if (steps < 1) throw std::invalid_argument("grid must contain at least one step");
    const TrotterRatioSeries r = trotter_error_ratio(p, cfg.dt, n, (int)steps);
    std::ostringstream csv;
    csv << "# ccgf trotter-ratio v1\n";
    csv << "# config = " << hash_hex(cfg.hash) << "\n";
    csv << "# substeps = " << n << "\n";
    csv << "t,actual,bound,ratio\n";
    for (size_t i = 0; i < r.t.size(); ++i)
        csv << format_double(r.t[i]) << ',' << format_double(r.actual[i]) << ','
            << format_double(r.bound[i]) << ',' << format_double(r.ratio[i])
            << "\n";
    if (!o.out_dir.empty())
        open_out(o.out_dir, "trotter_ratio.csv") << csv.str();
    else
        std::cout << csv.str();
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hybrid coupled-cluster Green's function toolkit"};
    app.require_subcommand(1);

    CommonOpts o_cc, o_gf, o_sp, o_rs, o_va, o_tr;
    CLI::App* c_cc = app.add_subcommand("solve-cc", "solve ground-state amplitudes");
    attach_common(c_cc, o_cc);
    CLI::App* c_gf = app.add_subcommand("greens", "time-domain Green's function");
    attach_common(c_gf, o_gf);
    int orb_p = -1, orb_q = -1;
    bool dump_lcu = false;
    c_gf->add_option("--orb-p", orb_p, "left spin-orbital index");
    c_gf->add_option("--orb-q", orb_q, "right spin-orbital index");
    c_gf->add_flag("--dump-lcu", dump_lcu, "write the unitary expansions");
    CLI::App* c_sp = app.add_subcommand("spectrum", "broadened spectral function");
    attach_common(c_sp, o_sp);
    CLI::App* c_rs = app.add_subcommand("resources", "T-gate cost estimates");
    attach_common(c_rs, o_rs);
    CLI::App* c_va = app.add_subcommand("validate", "compare against exact diagonalization");
    attach_common(c_va, o_va);
    CLI::App* c_tr = app.add_subcommand("trotter-ratio", "step-error bound check");
    attach_common(c_tr, o_tr);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (c_cc->parsed()) return run_solve_cc(o_cc);
        if (c_gf->parsed()) return run_greens(o_gf, orb_p, orb_q, dump_lcu);
        if (c_sp->parsed()) return run_spectrum(o_sp);
        if (c_rs->parsed()) return run_resources(o_rs);
        if (c_va->parsed()) return run_validate(o_va);
        if (c_tr->parsed()) return run_trotter_ratio(o_tr);
    } catch (const ConvergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
