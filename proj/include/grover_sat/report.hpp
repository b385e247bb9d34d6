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
 * Structured (JSON), tabular (CSV) and human-readable renderings of the
 * pipeline's results. Machine output carries no timestamps so identical
 * inputs give identical bytes.
 */
#pragma once

#include "circuit.hpp"
#include "compiler.hpp"
#include "costmodel.hpp"
#include "formula.hpp"
#include "simulator.hpp"

#include <json.hpp>

#include <cstdio>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

namespace grover_sat::report {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kToolVersion = "grover-sat 1.0.0";

[[nodiscard]] inline Json assignment_json(const CnfFormula &f, const Assignment &x) {
    Json j = Json::object();
    for (std::size_t i = 0; i < x.size(); ++i) {
        j[f.variables()[i]] = x.values[i] ? 1 : 0;
    }
    return j;
}

[[nodiscard]] inline Json formula_json(const CnfFormula &f) {
    Json widths = Json::array();
    for (const auto &c : f.clauses()) {
        widths.push_back(c.width());
    }
    return Json{{"variables", f.variables()},
                {"clause_count", f.clause_count()},
                {"clause_widths", widths},
                {"k", f.max_width()},
                {"infix", to_infix(f)}};
}

[[nodiscard]] inline Json classification_json(const CnfFormula &f, const SatClassification &c) {
    Json j{{"status", classification_name(c)}};
    if (const auto *u = std::get_if<UniqueSolution>(&c)) {
        j["solution"] = assignment_json(f, u->solution);
    } else if (const auto *m = std::get_if<MultipleSolutions>(&c)) {
        j["count"] = m->count;
        Json listed = Json::array();
        for (const auto &a : m->solutions) {
            listed.push_back(assignment_json(f, a));
        }
        j["solutions"] = listed;
    }
    return j;
}

[[nodiscard]] inline Json inventory_json(const GateInventory &inv) {
    Json j = Json::object();
    for (const auto &[key, n] : inv.counts()) {
        j[inventory_label(key)] = n;
    }
    return j;
}

[[nodiscard]] inline Json plan_json(const GroverPlan &plan) {
    Json roles = Json::array();
    for (std::size_t q = 0; q < plan.layout.roles.size(); ++q) {
        roles.push_back(Json{{"qubit", q}, {"role", describe(plan.layout.roles[q])}});
    }
    Json stages = Json::array();
    for (const auto &s : plan.circuit.stages()) {
        stages.push_back(Json{{"stage", stage_name(s.stage)},
                              {"iteration", s.iteration},
                              {"begin", s.begin},
                              {"end", s.end}});
    }
    return Json{
        {"qubits", plan.register_size},
        {"iterations", plan.iteration_count},
        {"kickback_style", plan.options.kickback_style == KickbackStyle::SeparateAncilla
                               ? "separate-ancilla"
                               : "direct-phase"},
        {"wide_clause", plan.options.wide_clause_strategy == WideClauseStrategy::Cascade
                            ? "cascade"
                            : "direct"},
        {"register", roles},
        {"stages", stages},
        {"gate_count", plan.circuit.size()},
        {"inventory", inventory_json(inventory(plan.circuit, false))},
        {"inventory_cpf", inventory_json(inventory(plan.circuit, true))},
    };
}

[[nodiscard]] inline Json measurement_json(const CnfFormula &f, const MeasurementReport &m,
                                           const std::optional<Assignment> &target) {
    Json probs = Json::array();
    for (std::uint64_t k = 0; k < m.probabilities.size(); ++k) {
        probs.push_back(Json{{"assignment", assignment_json(f, Assignment::from_index(f.variable_count(), k))},
                             {"probability", m.probabilities[k]}});
    }
    Json j{{"argmax", assignment_json(f, Assignment::from_index(f.variable_count(), m.argmax))},
           {"ancilla_residual", m.ancilla_residual},
           {"probabilities", probs}};
    if (target) {
        j["success_probability"] = m.probabilities[target->to_index()];
    }
    return j;
}

/// Field names follow the Table I column headings.
[[nodiscard]] inline Json cost_json(const cost::CostReport &r) {
    Json j{{"backend", cost::backend_name(r.backend)}};
    if (!r.label.empty()) {
        j["circuit"] = r.label;
    }
    j["ions"] = r.n_ions;
    j["omega_z (rad/s)"] = r.omega_z;
    j["omega_z/2pi (MHz)"] = r.omega_z_hz() / 1e6;
    if (r.backend == cost::Backend::Conventional) {
        j["N[A]"] = r.counts.a_gates;
        j["N[A*]"] = r.counts.a_star_gates;
        j["N[B]"] = r.counts.b_gates;
        j["N[B*]"] = r.counts.b_star_gates;
        j["N[one-qubit]"] = r.counts.one_qubit_gates;
        j["pulses"] = r.pulses;
        j["T_B (us)"] = r.t_b_seconds * 1e6;
    } else {
        for (const auto &[key, n] : r.inventory.counts()) {
            if (key.kind != InventoryKind::OneQubit) {
                j["N[" + inventory_label(key) + "]"] = n;
            }
        }
        j["pulses"] = r.pulses;
        j["T_CPF (us)"] = r.t_cpf_seconds * 1e6;
    }
    j["T (ms)"] = r.total_seconds * 1e3;
    return j;
}

[[nodiscard]] inline Json pulse_formula_json() {
    Json per_arity = Json::array();
    for (std::size_t n = 3; n <= 5; ++n) {
        const auto chk = cost::check_pulse_formula(n);
        per_arity.push_back(Json{{"arity", n},
                                 {"component_total", chk.component_total},
                                 {"quoted_total", chk.quoted_total},
                                 {"consistent", chk.consistent()}});
    }
    return Json{{"flag", "inconsistent"},
                {"note", cost::kPulseFormulaNote},
                {"per_arity", per_arity}};
}

[[nodiscard]] inline Json table1_json(const std::vector<cost::ReferenceRow> &rows) {
    Json out = Json::array();
    for (const auto &row : rows) {
        out.push_back(Json{{"circuit", row.circuit.label},
                           {"ions", row.circuit.n_ions},
                           {"lamb_dicke omega_z/2pi (MHz)", cost::to_hz(row.lamb_dicke_omega_z) / 1e6},
                           {"conventional", cost_json(row.conventional)},
                           {"straightforward", cost_json(row.straightforward)}});
    }
    return out;
}

[[nodiscard]] inline std::string fmt(double v, int precision) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(precision) << v;
    return os.str();
}

/// Column-aligned text table; the first row is the header.
[[nodiscard]] inline std::string text_table(const std::vector<std::vector<std::string>> &rows) {
    std::vector<std::size_t> widths;
    for (const auto &r : rows) {
        widths.resize(std::max(widths.size(), r.size()), 0);
        for (std::size_t i = 0; i < r.size(); ++i) {
            widths[i] = std::max(widths[i], r[i].size());
        }
    }
    std::string out;
    for (std::size_t ri = 0; ri < rows.size(); ++ri) {
        std::string line;
        for (std::size_t i = 0; i < rows[ri].size(); ++i) {
            if (i != 0) {
                line += "  ";
            }
            line += rows[ri][i];
            if (i + 1 < rows[ri].size()) {
                line.append(widths[i] - rows[ri][i].size(), ' ');
            }
        }
        out += line + "\n";
        if (ri == 0) {
            std::size_t total = 0;
            for (auto w : widths) {
                total += w + 2;
            }
            out.append(total > 2 ? total - 2 : 0, '-');
            out += "\n";
        }
    }
    return out;
}

[[nodiscard]] inline std::string table1_text(const std::vector<cost::ReferenceRow> &rows) {
    std::vector<std::vector<std::string>> t{{"", "omega_z/2pi (MHz)", "N[B]", "N[B*]", "T_B (us)",
                                             "T (ms)", "N[C_PF^(2)]", "N[C_PF^(3)]",
                                             "N[C_PF^(4)]", "N[C_PF^(5)]", "T (ms)"}};
    for (const auto &row : rows) {
        std::vector<std::string> line{std::string(row.circuit.label),
                                      fmt(row.conventional.omega_z_hz() / 1e6, 2),
                                      std::to_string(row.conventional.counts.b_gates),
                                      std::to_string(row.conventional.counts.b_star_gates),
                                      fmt(row.conventional.t_b_seconds * 1e6, 3),
                                      fmt(row.conventional.total_seconds * 1e3, 3)};
        for (auto n : row.circuit.cpf_by_arity) {
            line.push_back(std::to_string(n));
        }
        line.push_back(fmt(row.straightforward.total_seconds * 1e3, 3));
        t.push_back(std::move(line));
    }
    return text_table(t);
}

[[nodiscard]] inline std::string table1_csv(const std::vector<cost::ReferenceRow> &rows) {
    std::string out =
        "circuit,ions,omega_z_2pi_mhz,n_b,n_b_star,t_b_us,t_conventional_ms,"
        "n_cpf2,n_cpf3,n_cpf4,n_cpf5,t_straightforward_ms\n";
    char buf[256];
    for (const auto &row : rows) {
        const auto &c = row.circuit.cpf_by_arity;
        std::snprintf(buf, sizeof buf, "%s,%zu,%.6f,%llu,%llu,%.6f,%.6f,%llu,%llu,%llu,%llu,%.6f\n",
                      std::string(row.circuit.label).c_str(), row.circuit.n_ions,
                      row.conventional.omega_z_hz() / 1e6,
                      static_cast<unsigned long long>(row.conventional.counts.b_gates),
                      static_cast<unsigned long long>(row.conventional.counts.b_star_gates),
                      row.conventional.t_b_seconds * 1e6, row.conventional.total_seconds * 1e3,
                      static_cast<unsigned long long>(c[0]), static_cast<unsigned long long>(c[1]),
                      static_cast<unsigned long long>(c[2]), static_cast<unsigned long long>(c[3]),
                      row.straightforward.total_seconds * 1e3);
        out += buf;
    }
    return out;
}

/// "iteration,probability" rows for k = 0..K.
[[nodiscard]] inline std::string sweep_csv(const std::vector<double> &probabilities) {
    std::string out = "iteration,probability\n";
    char buf[64];
    for (std::size_t k = 0; k < probabilities.size(); ++k) {
        std::snprintf(buf, sizeof buf, "%zu,%.12f\n", k, probabilities[k]);
        out += buf;
    }
    return out;
}

} // namespace grover_sat::report
