#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "tiqca/compiler.hpp"
#include "tiqca/ensemble.hpp"
#include "tiqca/verify.hpp"

namespace {

using namespace tiqca;
using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitGuard = 3;

int exit_code_for(const Error& e) {
    switch (e.kind()) {
        case ErrorKind::SupportOverflow:
        case ErrorKind::OracleTooLarge:
            return kExitGuard;
        default:
            return kExitBadInput;
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::ParseError, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Reports are built fully in memory and written in one shot, so failures
/// leave no partial files behind.
void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        if (!content.empty() && content.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw Error(ErrorKind::ParseError, "cannot write '" + path + "'");
    out << content;
}

struct GlobalFlags {
    int mode_levels = 6;
    std::string boundary = "periodic";

    SchemeMode mode() const { return SchemeMode::from_levels(mode_levels); }
    Boundary bound() const {
        if (boundary == "periodic") return Boundary::Periodic;
        if (boundary == "open") return Boundary::Open;
        throw Error(ErrorKind::ParseError, "boundary must be 'periodic' or 'open'");
    }
};

struct RunOptions {
    std::string state;
    double product_eps = -1.0;
    int m = 0;
    std::string program_path;
    std::string macro;
    std::string out;
    int top = 32;
};

int cmd_run(const GlobalFlags& g, const RunOptions& opt) {
    if (opt.state.empty() == (opt.product_eps < 0.0))
        throw Error(ErrorKind::ParseError, "give exactly one input: --state or --product-eps");
    if (opt.program_path.empty() == opt.macro.empty())
        throw Error(ErrorKind::ParseError, "give exactly one program: --program or --macro");

    SchemeMode mode = g.mode();
    int m = opt.state.empty() ? opt.m : static_cast<int>(opt.state.size());
    LatticeConfig config{m, g.bound(), mode};
    SparseState state{config, {}};
    if (!opt.state.empty()) {
        state = make_basis_state(config, opt.state);
    } else {
        if (opt.m < 2) throw Error(ErrorKind::ParseError, "--product-eps needs --m");
        std::vector<cplx> amps(static_cast<size_t>(mode.levels), cplx{0.0, 0.0});
        amps[0] = std::sqrt(1.0 - opt.product_eps);
        amps[static_cast<size_t>(mode.wall_level)] = std::sqrt(opt.product_eps);
        state = make_product_state(config, amps);
    }

    PulseProgram program = opt.macro.empty()
                               ? parse_pulse_program(read_file(opt.program_path), mode)
                               : macro_program(macro_name_from_str(opt.macro), mode);
    SparseState final_state = apply_program(state, program);

    ordered_json j;
    j["mode"] = mode.levels;
    j["boundary"] = g.boundary;
    j["m"] = m;
    j["pulses"] = program.pulses.size();
    j["norm"] = final_state.norm();
    j["norm_drift"] = std::abs(final_state.norm() - 1.0);
    j["support_size"] = final_state.amps.size();
    ordered_json mx = ordered_json::array();
    for (int x = 0; x < mode.levels; ++x) mx.push_back(expectation_level_count(final_state, x));
    j["m_x"] = mx;

    double c23 = 0, c32 = 0, cin = 0, cw = 0;
    for (const auto& [s, a] : final_state.amps) {
        PointerCensus census = pointer_census(s, mode);
        double p = std::norm(a);
        c23 += p * census.right_pointers;
        c32 += p * census.left_pointers;
        cin += p * census.inactive_pairs;
        cw += p * static_cast<double>(census.wall_positions.size());
    }
    j["census_mean"] = {{"right_pointers", c23}, {"left_pointers", c32},
                        {"inactive_pairs", cin}, {"walls", cw}};

    ordered_json top = ordered_json::array();
    auto support = final_state.sorted_support();
    for (size_t i = 0; i < support.size() && i < static_cast<size_t>(opt.top); ++i) {
        top.push_back({{"basis", support[i].first},
                       {"probability", std::norm(support[i].second)},
                       {"amplitude", {support[i].second.real(), support[i].second.imag()}}});
    }
    j["top_support"] = top;
    write_output(opt.out, j.dump(2));
    return kExitOk;
}

int cmd_compile(const GlobalFlags& g, const std::string& circuit_path, const std::string& out) {
    LogicalCircuit circuit = parse_circuit(read_file(circuit_path));
    CompiledProgram compiled = compile_circuit(circuit, g.mode());
    std::string text = "# lmin " + std::to_string(compiled.l_min) + "\n";
    text += "# qubits " + std::to_string(compiled.n) + "\n";
    text += program_to_text(compiled.program);
    write_output(out, text);
    return kExitOk;
}

struct EnsembleOptions {
    std::int64_t m = 0;
    double eps = 0.0;
    int n = 0;
    int trials = 0;
    std::uint64_t seed = 0;
    int cap = 16;
    std::string circuit_path;
    std::string out;
};

int cmd_ensemble(const GlobalFlags& g, const EnsembleOptions& opt) {
    LogicalCircuit circuit = parse_circuit(read_file(opt.circuit_path));
    EnsembleParams params;
    params.m = opt.m;
    params.epsilon = opt.eps;
    params.n = opt.n;
    params.trials = opt.trials;
    params.master_seed = opt.seed;
    params.mode = g.mode();
    params.boundary = g.bound();
    params.pulse_cap = opt.cap;
    EnsembleReport report = run_ensemble(params, circuit);
    write_output(opt.out, report.to_json());
    return kExitOk;
}

int cmd_verify(const std::string& suite) {
    std::vector<CheckResult> checks;
    if (suite == "oracle")
        checks = verify_oracle(60, 20240817);
    else if (suite == "protocols")
        checks = verify_protocols();
    else if (suite == "pure-mixed")
        checks = verify_pure_mixed();
    else if (suite == "scaling")
        checks = verify_scaling();
    else
        throw Error(ErrorKind::ParseError,
                    "unknown suite '" + suite + "' (oracle|protocols|pure-mixed|scaling)");
    bool all = true;
    for (const CheckResult& c : checks) {
        std::printf("%s %-28s deviation=%.3e  %s\n", c.pass ? "PASS" : "FAIL", c.name.c_str(),
                    c.deviation, c.detail.c_str());
        all = all && c.pass;
    }
    return all ? kExitOk : kExitCheckFailed;
}

int cmd_scaling(int n_min, int n_max, const std::string& out) {
    if (n_min < 2 || n_max < n_min)
        throw Error(ErrorKind::InvalidScaling, "need 2 <= n_min <= n_max");
    std::vector<int> ns;
    for (int n = n_min; n <= n_max; ++n) ns.push_back(n);
    std::string csv = "n,epsilon,ratio,working_density\n";
    char buf[128];
    for (const ScalingRow& row : scaling_table(ns)) {
        std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g,%.17g\n", row.n, row.epsilon, row.ratio,
                      row.working_density);
        csv += buf;
    }
    write_output(out, csv);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simulator and compiler for pointer-based computation on a globally pulsed qudit chain"};
    app.require_subcommand(1);

    GlobalFlags g;
    app.add_option("--mode", g.mode_levels, "Internal levels per site (5 or 6)")
        ->check(CLI::IsMember({5, 6}));
    app.add_option("--boundary", g.boundary, "Lattice boundary")
        ->check(CLI::IsMember({"periodic", "open"}));

    auto* run = app.add_subcommand("run", "Apply a pulse program to a state and report statistics");
    RunOptions ro;
    run->add_option("--state", ro.state, "Initial basis string, site 0 leftmost");
    run->add_option("--product-eps", ro.product_eps, "Product state with wall weight eps per site");
    run->add_option("--m", ro.m, "Lattice size (with --product-eps)");
    run->add_option("--program", ro.program_path, "Pulse program file");
    run->add_option("--macro", ro.macro, "Named macro instead of a program file");
    run->add_option("--out", ro.out, "Report path (default stdout)");
    run->add_option("--top", ro.top, "Support entries to list")->capture_default_str();

    auto* comp = app.add_subcommand("compile", "Compile a circuit file to a pulse program");
    std::string circuit_path, comp_out;
    comp->add_option("--circuit", circuit_path, "Circuit file")->required();
    comp->add_option("--out", comp_out, "Program path (default stdout)");

    auto* ens = app.add_subcommand("ensemble", "Monte Carlo over wall configurations");
    EnsembleOptions eo;
    ens->add_option("--m", eo.m, "Lattice size")->required();
    ens->add_option("--eps", eo.eps, "Wall probability")->required();
    ens->add_option("--n", eo.n, "Logical qubits per computer")->required();
    ens->add_option("--trials", eo.trials, "Trial count")->required();
    ens->add_option("--seed", eo.seed, "Master seed")->capture_default_str();
    ens->add_option("--cap", eo.cap, "Pulse-level simulation cap")->capture_default_str();
    ens->add_option("--circuit", eo.circuit_path, "Circuit file")->required();
    ens->add_option("--out", eo.out, "Report path (default stdout)");

    auto* ver = app.add_subcommand("verify", "Run a verification suite");
    std::string suite;
    ver->add_option("suite", suite, "oracle|protocols|pure-mixed|scaling")->required();

    auto* sc = app.add_subcommand("scaling", "Emit the working-ratio table as CSV");
    int n_min = 2, n_max = 64;
    std::string sc_out;
    sc->add_option("--n-min", n_min, "Smallest n")->capture_default_str();
    sc->add_option("--n-max", n_max, "Largest n")->capture_default_str();
    sc->add_option("--out", sc_out, "CSV path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitBadInput;
    }

    try {
        if (run->parsed()) return cmd_run(g, ro);
        if (comp->parsed()) return cmd_compile(g, circuit_path, comp_out);
        if (ens->parsed()) return cmd_ensemble(g, eo);
        if (ver->parsed()) return cmd_verify(suite);
        if (sc->parsed()) return cmd_scaling(n_min, n_max, sc_out);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << " [" << error_kind_name(e.kind()) << "]\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    }
    return kExitOk;
}
