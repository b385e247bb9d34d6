// Copyright 2026 The grover-sat Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * grover_sat command line: solve, compile, simulate, cost.
 *
 * Exit codes: 0 success, 1 usage or parse error, 2 unsatisfiable or
 * non-unique formula, 3 resource bound exceeded.
 */
#include "grover_sat/grover_sat.hpp"
#include "grover_sat/report.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

namespace {

using namespace grover_sat;
using report::Json;

enum ExitCode : int { kOk = 0, kUsage = 1, kRejected = 2, kResource = 3 };

enum class OutputFormat { Text, Json };
enum class InputFormat { Auto, Dimacs, Infix };

struct InputArgs {
    std::string path;
    std::string expr;
    InputFormat format = InputFormat::Auto;
};

struct CompileArgs {
    KickbackStyle kickback = KickbackStyle::SeparateAncilla;
    WideClauseStrategy wide = WideClauseStrategy::Cascade;
    std::size_t iterations = 0;  // 0 = auto
    bool force = false;
};

struct Common {
    OutputFormat format = OutputFormat::Text;
};

std::size_t max_qubits_from_env() {
    if (const char *env = std::getenv("GROVER_SAT_MAX_QUBITS")) {
        try {
            const auto v = std::stoul(env);
            if (v >= 1 && v <= 30) {
                return v;
            }
        } catch (const std::exception &) {
        }
        throw InvalidArgument(std::string("GROVER_SAT_MAX_QUBITS must be an integer in [1, 30], got '") +
                              env + "'");
    }
    return kDefaultMaxQubits;
}

CnfFormula load_formula(const InputArgs &in) {
    if (in.path.empty() == in.expr.empty()) {
        throw CLI::ValidationError("input", "give exactly one of FILE or --expr");
    }
    std::string text = in.expr;
    InputFormat fmt = in.format;
    if (!in.path.empty()) {
        std::ifstream file(in.path, std::ios::binary);
        if (!file) {
            throw CLI::ValidationError("input", "cannot read '" + in.path + "'");
        }
        std::ostringstream ss;
        ss << file.rdbuf();
        text = ss.str();
        if (fmt == InputFormat::Auto) {
            fmt = InputFormat::Dimacs;
            const auto first = text.find_first_not_of(" \t\r\n");
            if (first != std::string::npos && text[first] != 'c' && text[first] != 'p') {
                fmt = InputFormat::Infix;
            }
        }
    } else if (fmt == InputFormat::Auto) {
        fmt = InputFormat::Infix;
    }
    return fmt == InputFormat::Dimacs ? parse_dimacs(text) : parse_infix(text);
}

CompileOptions to_options(const CompileArgs &a) {
    CompileOptions o;
    o.kickback_style = a.kickback;
    o.wide_clause_strategy = a.wide;
    if (a.iterations != 0) {
        o.iterations = a.iterations;
    }
    o.force = a.force;
    o.max_qubits = max_qubits_from_env();
    return o;
}

Json base_report(const CnfFormula &f) {
    return Json{{"tool", report::kToolVersion}, {"formula", report::formula_json(f)}};
}

void print_json(const Json &j) { std::cout << j.dump(2) << "\n"; }

void add_input_options(CLI::App *cmd, InputArgs &in) {
    cmd->add_option("input", in.path, "DIMACS or infix formula file");
    cmd->add_option("-e,--expr", in.expr, "inline infix formula, e.g. \"(~a|~b)&(a|b)&a\"");
    cmd->add_option("--input-format", in.format, "auto, dimacs or infix")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, InputFormat>{{"auto", InputFormat::Auto},
                                               {"dimacs", InputFormat::Dimacs},
                                               {"infix", InputFormat::Infix}},
            CLI::ignore_case));
}

void add_compile_options(CLI::App *cmd, CompileArgs &c) {
    cmd->add_option("--kickback", c.kickback, "separate (result + kickback qubit) or direct")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, KickbackStyle>{{"separate", KickbackStyle::SeparateAncilla},
                                                 {"direct", KickbackStyle::DirectPhase}},
            CLI::ignore_case));
    cmd->add_option("--wide-clause", c.wide, "cascade or direct realization of clauses of width >= 3")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, WideClauseStrategy>{{"cascade", WideClauseStrategy::Cascade},
                                                      {"direct", WideClauseStrategy::Direct}},
            CLI::ignore_case));
    cmd->add_option("--iterations", c.iterations, "fixed Grover iteration count (default: optimal)")
        ->check(CLI::PositiveNumber);
    cmd->add_flag("--force", c.force, "compile formulas without a unique solution");
}

// ---------------------------------------------------------------------------

int cmd_solve(const Common &common, const InputArgs &in) {
    const CnfFormula f = load_formula(in);
    const SatClassification cls = classify(f);
    if (common.format == OutputFormat::Json) {
        Json j = base_report(f);
        j["classification"] = report::classification_json(f, cls);
        print_json(j);
    } else if (const auto *u = std::get_if<UniqueSolution>(&cls)) {
        std::cout << "Unique: " << format_assignment(f, u->solution) << "\n";
    } else if (const auto *m = std::get_if<MultipleSolutions>(&cls)) {
        std::cout << "Multiple: " << m->count << " solutions\n";
        for (const auto &a : m->solutions) {
            std::cout << "  " << format_assignment(f, a) << "\n";
        }
        if (m->solutions.size() < m->count) {
            std::cout << "  ...\n";
        }
    } else {
        std::cout << "Unsatisfiable\n";
    }
    return std::holds_alternative<UniqueSolution>(cls) ? kOk : kRejected;
}

struct CompileCmdArgs {
    bool lowered = false;
    std::string circuit_out;
};

int cmd_compile(const Common &common, const InputArgs &in, const CompileArgs &ca,
                const CompileCmdArgs &extra) {
    const CnfFormula f = load_formula(in);
    const GroverPlan plan = compile(f, to_options(ca));
    const Circuit circuit = extra.lowered ? lower_polarity(plan.circuit) : plan.circuit;
    const std::string text = to_text(circuit);
    if (!extra.circuit_out.empty()) {
        std::ofstream out(extra.circuit_out, std::ios::binary);
        if (!out) {
            throw CLI::ValidationError("--circuit-out", "cannot write '" + extra.circuit_out + "'");
        }
        out << text;
    }

    if (common.format == OutputFormat::Json) {
        Json j = base_report(f);
        j["classification"] = report::classification_json(f, plan.classification);
        j["plan"] = report::plan_json(plan);
        if (extra.lowered) {
            j["lowered_inventory"] = report::inventory_json(inventory(circuit, false));
        }
        j["circuit"] = text;
        print_json(j);
        return kOk;
    }

    std::cout << "formula     " << to_infix(f) << "\n";
    if (plan.target_hint) {
        std::cout << "solution    " << format_assignment(f, *plan.target_hint) << "\n";
    }
    std::cout << "qubits      " << plan.register_size << "\n";
    std::cout << "iterations  " << plan.iteration_count << "\n";
    std::cout << "gates       " << circuit.size() << "\n\n";

    std::vector<std::vector<std::string>> reg{{"qubit", "role"}};
    for (std::size_t q = 0; q < plan.layout.roles.size(); ++q) {
        reg.push_back({std::to_string(q), describe(plan.layout.roles[q])});
    }
    std::cout << report::text_table(reg) << "\n";

    std::vector<std::vector<std::string>> inv{{"gate", "raw", "C_PF-rewritten"}};
    const GateInventory raw = inventory(circuit, false);
    const GateInventory cpf = inventory(circuit, true);
    std::map<std::string, std::pair<std::uint64_t, std::uint64_t>> merged;
    for (const auto &[k, n] : raw.counts()) {
        merged[inventory_label(k)].first = n;
    }
    for (const auto &[k, n] : cpf.counts()) {
        merged[inventory_label(k)].second = n;
    }
    for (const auto &[label, pair] : merged) {
        inv.push_back({label, std::to_string(pair.first), std::to_string(pair.second)});
    }
    std::cout << report::text_table(inv) << "\n" << text;
    return kOk;
}

struct SimulateArgs {
    bool dump_state = false;
    std::string stop_after;
    int sweep = -1;
};

int cmd_simulate(const Common &common, const InputArgs &in, const CompileArgs &ca,
                 const SimulateArgs &sa) {
    const CnfFormula f = load_formula(in);
    const CompileOptions opts = to_options(ca);

    if (sa.sweep >= 0) {
        const GroverPlan probe = compile(f, opts);
        if (!probe.target_hint) {
            throw CompileRejected(probe.classification);
        }
        const auto probs = success_sweep(f, opts, *probe.target_hint, static_cast<std::size_t>(sa.sweep));
        if (common.format == OutputFormat::Json) {
            Json j = base_report(f);
            j["sweep"] = probs;
            print_json(j);
        } else {
            std::cout << report::sweep_csv(probs);
        }
        return kOk;
    }

    const GroverPlan plan = compile(f, opts);
    Circuit circuit = plan.circuit;
    if (!sa.stop_after.empty()) {
        const Stage stage = parse_stage_name(sa.stop_after);
        circuit = stage == Stage::Kickback ? compute_and_kickback_prefix(plan)
                                           : prefix_through(plan.circuit, stage, stage == Stage::Preamble ? 0 : 1);
    }
    StateVector state(plan.register_size, opts.max_qubits);
    run(state, circuit);
    const MeasurementReport m = measure_variables(state, plan);

    if (common.format == OutputFormat::Json) {
        Json j = base_report(f);
        j["classification"] = report::classification_json(f, plan.classification);
        j["plan"] = Json{{"qubits", plan.register_size},
                         {"iterations", plan.iteration_count},
                         {"gates_run", circuit.size()}};
        j["measurement"] = report::measurement_json(f, m, plan.target_hint);
        if (sa.dump_state) {
            Json amps = Json::array();
            for (const auto &e : nonzero_amplitudes(state)) {
                amps.push_back(Json::array({e.index, e.amplitude.real(), e.amplitude.imag()}));
            }
            j["state"] = amps;
        }
        print_json(j);
        return kOk;
    }

    std::cout << "qubits             " << plan.register_size << "\n";
    std::cout << "iterations         " << plan.iteration_count << "\n";
    if (!sa.stop_after.empty()) {
        std::cout << "stopped after      " << sa.stop_after << "\n";
    }
    if (plan.target_hint) {
        std::cout << "solution           " << format_assignment(f, *plan.target_hint) << "\n";
        std::cout << "P(success)         " << report::fmt(m.probabilities[plan.target_hint->to_index()], 6)
                  << "\n";
    }
    std::cout << "argmax             "
              << format_assignment(f, Assignment::from_index(f.variable_count(), m.argmax)) << "\n";
    std::ostringstream residual;
    residual << std::scientific << std::setprecision(3) << m.ancilla_residual;
    std::cout << "ancilla residual   " << residual.str() << "\n";
    if (sa.dump_state) {
        std::cout << "\n# basis-index real imag (qubit 0 = least significant bit)\n" << dump_state(state);
    }
    return kOk;
}

struct CostArgs {
    bool table1 = false;
    bool csv = false;
    bool per_iteration = false;
    std::string backend = "both";
    std::string trap_source = "tabulated";
    cost::TrapConfig cfg;
    double wavelength_nm = cost::constants::calcium_qubit_wavelength * 1e9;
};

int cmd_cost(const Common &common, const InputArgs &in, const CompileArgs &ca, CostArgs args) {
    args.cfg.wavelength_m = args.wavelength_nm * 1e-9;
    args.cfg.validate();
    const bool want_conv = args.backend != "straightforward";
    const bool want_sf = args.backend != "conventional";

    if (args.table1) {
        const auto rows = cost::table1_report(args.cfg, args.trap_source == "lamb-dicke"
                                                            ? cost::TrapFrequencySource::LambDicke
                                                            : cost::TrapFrequencySource::Tabulated);
        if (args.csv) {
            std::cout << report::table1_csv(rows);
        } else if (common.format == OutputFormat::Json) {
            Json j{{"tool", report::kToolVersion},
                   {"trap_frequency_source", args.trap_source},
                   {"table1", report::table1_json(rows)},
                   {"pulse_formula", report::pulse_formula_json()}};
            print_json(j);
        } else {
            std::cout << report::table1_text(rows) << "\nnote: " << cost::kPulseFormulaNote << "\n";
        }
        return kOk;
    }

    const CnfFormula f = load_formula(in);
    const GroverPlan plan = compile(f, to_options(ca));
    Circuit counted = plan.circuit;
    if (args.per_iteration) {
        const auto spans = plan.circuit.stages();
        std::size_t begin = plan.circuit.size();
        std::size_t end = plan.circuit.size();
        for (const auto &s : spans) {
            if (s.iteration == 1) {
                begin = std::min(begin, s.begin);
            } else if (s.iteration == 2) {
                end = std::min(end, s.begin);
            }
        }
        counted = plan.circuit.slice(begin, end);
    }
    const GateInventory inv = inventory(counted, true);
    const double omega = cost::trap_frequency(args.cfg, plan.register_size);

    std::vector<cost::CostReport> reports;
    if (want_conv) {
        reports.push_back(cost::conventional_report(inv, plan.register_size, omega, args.cfg));
    }
    if (want_sf) {
        reports.push_back(cost::straightforward_report(inv, plan.register_size, omega, args.cfg));
    }

    if (common.format == OutputFormat::Json) {
        Json j = base_report(f);
        j["plan"] = Json{{"qubits", plan.register_size},
                         {"iterations", plan.iteration_count},
                         {"per_iteration", args.per_iteration},
                         {"inventory_cpf", report::inventory_json(inv)}};
        Json costs = Json::array();
        for (const auto &r : reports) {
            costs.push_back(report::cost_json(r));
        }
        j["cost"] = costs;
        j["pulse_formula"] = report::pulse_formula_json();
        print_json(j);
        return kOk;
    }
    std::cout << "ions " << plan.register_size << ", omega_z/2pi = "
              << report::fmt(cost::to_hz(omega) / 1e6, 3) << " MHz, "
              << (args.per_iteration ? "one iteration" : std::to_string(plan.iteration_count) + " iteration(s)")
              << "\n\n";
    for (const auto &r : reports) {
        std::cout << report::cost_json(r).dump() << "\n";
    }
    std::cout << "\nnote: " << cost::kPulseFormulaNote << "\n";
    return kOk;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Compile K-SAT formulas into Grover-search circuits, simulate them, "
                 "and estimate trapped-ion cost"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", std::string(report::kToolVersion));

    Common common;
    app.add_option("--format", common.format, "text or json")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, OutputFormat>{{"text", OutputFormat::Text}, {"json", OutputFormat::Json}},
            CLI::ignore_case));

    InputArgs in;
    CompileArgs ca;

    auto *solve = app.add_subcommand("solve", "classify a formula by exhaustive enumeration");
    add_input_options(solve, in);

    CompileCmdArgs compile_extra;
    auto *compile_cmd = app.add_subcommand("compile", "emit the Grover circuit for a formula");
    add_input_options(compile_cmd, in);
    add_compile_options(compile_cmd, ca);
    compile_cmd->add_flag("--lowered", compile_extra.lowered, "replace negative controls by X dressing");
    compile_cmd->add_option("--circuit-out", compile_extra.circuit_out, "also write the circuit text to FILE");

    SimulateArgs sa;
    auto *simulate = app.add_subcommand("simulate", "run the compiled circuit on the statevector simulator");
    add_input_options(simulate, in);
    add_compile_options(simulate, ca);
    simulate->add_flag("--dump-state", sa.dump_state, "print non-negligible amplitudes");
    simulate->add_option("--stop-after", sa.stop_after,
                         "stop after this stage of the first iteration (preamble, clause, and, kickback, uncompute, diffusion)")
        ->check(CLI::IsMember({"preamble", "clause", "and", "kickback", "uncompute", "diffusion"}));
    simulate->add_option("--sweep", sa.sweep, "CSV of success probability for 0..K iterations")
        ->check(CLI::NonNegativeNumber);

    CostArgs cost_args;
    auto *cost_cmd = app.add_subcommand("cost", "trapped-ion pulse counts and timing");
    add_input_options(cost_cmd, in);
    add_compile_options(cost_cmd, ca);
    cost_cmd->add_flag("--table1", cost_args.table1, "the three reference circuits with their fixed inventories");
    cost_cmd->add_flag("--csv", cost_args.csv, "CSV output (with --table1)");
    cost_cmd->add_flag("--per-iteration", cost_args.per_iteration, "cost one iteration instead of the whole plan");
    cost_cmd->add_option("--backend", cost_args.backend, "conventional, straightforward or both")
        ->check(CLI::IsMember({"conventional", "straightforward", "both"}));
    cost_cmd->add_option("--trap-frequency", cost_args.trap_source,
                         "trap frequency of --table1 rows: tabulated or lamb-dicke")
        ->check(CLI::IsMember({"tabulated", "lamb-dicke"}));
    cost_cmd->add_option("--eta", cost_args.cfg.eta, "Lamb-Dicke parameter");
    cost_cmd->add_option("--theta", cost_args.cfg.theta_deg, "laser angle to the trap axis (degrees)");
    cost_cmd->add_option("--m-ratio", cost_args.cfg.m_ratio, "Rabi frequency ratio of the last ion");
    cost_cmd->add_option("--wavelength-nm", cost_args.wavelength_nm, "laser wavelength (nm)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        if (*solve) {
            return cmd_solve(common, in);
        }
        if (*compile_cmd) {
            return cmd_compile(common, in, ca, compile_extra);
        }
        if (*simulate) {
            return cmd_simulate(common, in, ca, sa);
        }
        return cmd_cost(common, in, ca, cost_args);
    } catch (const CompileRejected &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kRejected;
    } catch (const ResourceLimitError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kResource;
    } catch (const CLI::Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
}
