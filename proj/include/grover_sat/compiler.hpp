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
 * Compiles a CNF formula into a complete Grover-search circuit.
 *
 * One iteration is
 *
 *   clause stage   each multi-literal clause ORed into its own ancilla
 *   AND stage      one multi-controlled X writing F(x) into the result qubit
 *   kickback       result -> kickback qubit prepared in (|0> - |1>)/sqrt(2)
 *   uncompute      the AND and clause stages reversed
 *   diffusion      H X C_PF X H on the variable register
 *
 * The register is laid out as variables, intermediates, clause ancillas,
 * result, kickback.
 */
#pragma once

#include "circuit.hpp"
#include "errors.hpp"
#include "formula.hpp"
#include "simulator.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace grover_sat {

enum class KickbackStyle : std::uint8_t {
    SeparateAncilla,  // AND -> result qubit, then result -> kickback
    DirectPhase,      // AND targets the kickback qubit; no result qubit
};

enum class WideClauseStrategy : std::uint8_t {
    Cascade,  // width k >= 3 split into k-2 two-literal ORs through intermediates
    Direct,   // one (k+1)-qubit gate per clause
};

struct CompileOptions {
    KickbackStyle kickback_style = KickbackStyle::SeparateAncilla;
    WideClauseStrategy wide_clause_strategy = WideClauseStrategy::Cascade;
    std::optional<std::size_t> iterations;  // nullopt = optimal count
    bool force = false;                     // compile non-unique formulas
    std::size_t max_qubits = kDefaultMaxQubits;
};

/// Formula rejected because it does not have exactly one solution.
class CompileRejected : public Error {
  public:
    explicit CompileRejected(SatClassification c)
        : Error("formula is " + std::string(classification_name(c)) +
                "; compilation requires a unique solution (use force to override)"),
          classification_(std::move(c)) {}

    [[nodiscard]] const SatClassification &classification() const noexcept {
        return classification_;
    }

  private:
    SatClassification classification_;
};

/// Qubit assignment for one formula under one set of options.
struct RegisterLayout {
    std::vector<QubitRole> roles;
    std::vector<std::size_t> variables;
    std::vector<std::optional<std::size_t>> clause_ancilla;    // per clause
    std::vector<std::vector<std::size_t>> intermediates;       // per clause
    std::optional<std::size_t> result;
    std::size_t kickback = 0;

    [[nodiscard]] std::size_t size() const noexcept { return roles.size(); }
};

[[nodiscard]] inline RegisterLayout make_layout(const CnfFormula &f, const CompileOptions &opts) {
    RegisterLayout layout;
    const std::size_t m = f.clause_count();
    layout.clause_ancilla.resize(m);
    layout.intermediates.resize(m);

    for (std::size_t v = 0; v < f.variable_count(); ++v) {
        layout.variables.push_back(layout.roles.size());
        layout.roles.push_back(QubitRole::variable(f.variables()[v]));
    }
    if (opts.wide_clause_strategy == WideClauseStrategy::Cascade) {
        for (std::size_t c = 0; c < m; ++c) {
            const std::size_t width = f.clauses()[c].width();
            for (std::size_t step = 0; width >= 3 && step + 2 < width; ++step) {
                layout.intermediates[c].push_back(layout.roles.size());
                layout.roles.push_back(QubitRole::intermediate(c, step));
            }
        }
    }
    for (std::size_t c = 0; c < m; ++c) {
        if (f.clauses()[c].width() >= 2) {
            layout.clause_ancilla[c] = layout.roles.size();
            layout.roles.push_back(QubitRole::clause_ancilla(c));
        }
    }
    if (opts.kickback_style == KickbackStyle::SeparateAncilla) {
        layout.result = layout.roles.size();
        layout.roles.push_back(QubitRole::result());
    }
    layout.kickback = layout.roles.size();
    layout.roles.push_back(QubitRole::kickback());
    return layout;
}

namespace detail {

// Control that fires when the literal is FALSE, so an MCX on it computes the NOR.
inline Control false_literal_control(const RegisterLayout &layout, const Literal &lit) {
    return {layout.variables[lit.variable],
            lit.negated ? Polarity::Positive : Polarity::Negative};
}

inline void require_clauses(const CnfFormula &f) {
    if (f.clause_count() == 0) {
        throw InvalidArgument("cannot compile a formula with no clauses");
    }
}

} // namespace detail

/**
 * Evaluates every clause with >= 2 literals into its ancilla:
 * ancilla = NOT(NOR(literals)) via one MCX on false-literal controls plus an X.
 * Single-literal clauses emit nothing; they feed the AND stage directly.
 */
[[nodiscard]] inline Circuit compile_clause_stage(const CnfFormula &f,
                                                  const CompileOptions &opts,
                                                  std::size_t iteration = 0) {
    detail::require_clauses(f);
    const RegisterLayout layout = make_layout(f, opts);
    Circuit c(layout.roles);
    c.begin_stage(Stage::ClauseStage, iteration);
    for (std::size_t ci = 0; ci < f.clause_count(); ++ci) {
        const auto &lits = f.clauses()[ci].literals;
        if (lits.size() < 2) {
            continue;
        }
        const std::size_t ancilla = *layout.clause_ancilla[ci];
        if (lits.size() == 2 || opts.wide_clause_strategy == WideClauseStrategy::Direct) {
            std::vector<Control> controls;
            for (const auto &lit : lits) {
                controls.push_back(detail::false_literal_control(layout, lit));
            }
            c.append(Gate::mcx(std::move(controls), ancilla));
            c.append(Gate::x(ancilla));
            continue;
        }
        // Left-associative cascade: ((l0 | l1) | l2) | ... ; the running OR
        // lives in the previous step's target and fires the next NOR when 0.
        const auto &steps = layout.intermediates[ci];
        std::size_t previous = 0;
        for (std::size_t s = 0; s + 1 < lits.size(); ++s) {
            const std::size_t target = s < steps.size() ? steps[s] : ancilla;
            std::vector<Control> controls;
            if (s == 0) {
                controls.push_back(detail::false_literal_control(layout, lits[0]));
            } else {
                controls.push_back({previous, Polarity::Negative});
            }
            controls.push_back(detail::false_literal_control(layout, lits[s + 1]));
            c.append(Gate::mcx(std::move(controls), target));
            c.append(Gate::x(target));
            previous = target;
        }
    }
    return c;
}

/// One MCX computing F(x) from clause ancillas and single-literal clauses.
[[nodiscard]] inline Circuit compile_and_stage(const CnfFormula &f, const CompileOptions &opts,
                                               std::size_t iteration = 0) {
    detail::require_clauses(f);
    const RegisterLayout layout = make_layout(f, opts);
    Circuit c(layout.roles);
    c.begin_stage(Stage::AndStage, iteration);
    std::vector<Control> controls;
    for (std::size_t ci = 0; ci < f.clause_count(); ++ci) {
        const auto &clause = f.clauses()[ci];
        if (clause.width() >= 2) {
            controls.push_back({*layout.clause_ancilla[ci], Polarity::Positive});
            continue;
        }
        const Literal &lit = clause.literals.front();
        const Control ctrl{layout.variables[lit.variable],
                           lit.negated ? Polarity::Negative : Polarity::Positive};
        const auto same_qubit = std::find_if(controls.begin(), controls.end(),
                                             [&](const Control &o) { return o.qubit == ctrl.qubit; });
        if (same_qubit == controls.end()) {
            controls.push_back(ctrl);
        } else if (same_qubit->polarity != ctrl.polarity) {
            // Contradictory unit clauses: the conjunction is constantly false.
            return c;
        }
    }
    c.append(Gate::mcx(std::move(controls), layout.result.value_or(layout.kickback)));
    return c;
}

/// Result -> kickback flip. Empty under DirectPhase, where the AND stage already targets the kickback qubit.
[[nodiscard]] inline Circuit compile_kickback(const CnfFormula &f, const CompileOptions &opts,
                                              std::size_t iteration = 0) {
    const RegisterLayout layout = make_layout(f, opts);
    Circuit c(layout.roles);
    if (layout.result) {
        c.begin_stage(Stage::Kickback, iteration);
        c.append(Gate::mcx({{*layout.result, Polarity::Positive}}, layout.kickback));
    }
    return c;
}

[[nodiscard]] inline std::optional<Assignment> unique_solution(const SatClassification &c) {
    if (const auto *u = std::get_if<UniqueSolution>(&c)) {
        return u->solution;
    }
    return std::nullopt;
}

/// Throws CompileRejected unless the formula has exactly one solution (or opts.force).
inline SatClassification check_compilable(const CnfFormula &f, const CompileOptions &opts) {
    detail::require_clauses(f);
    SatClassification cls = classify(f);
    if (!opts.force && !std::holds_alternative<UniqueSolution>(cls)) {
        throw CompileRejected(std::move(cls));
    }
    return cls;
}

namespace detail {

inline Circuit oracle_unchecked(const CnfFormula &f, const CompileOptions &opts,
                                std::size_t iteration) {
    const Circuit clause = compile_clause_stage(f, opts, iteration);
    const Circuit conj = compile_and_stage(f, opts, iteration);

    Circuit oracle(clause.roles());
    oracle.append(clause);
    oracle.append(conj);
    oracle.append(compile_kickback(f, opts, iteration));

    // Under DirectPhase the AND gate is the phase gate itself and must not be undone.
    Circuit compute(clause.roles());
    compute.append(clause);
    if (opts.kickback_style == KickbackStyle::SeparateAncilla) {
        compute.append(conj);
    }
    oracle.begin_stage(Stage::Uncompute, iteration);
    for (auto it = compute.gates().rbegin(); it != compute.gates().rend(); ++it) {
        oracle.append(*it);
    }
    return oracle;
}

} // namespace detail

/**
 * Compute, kickback, uncompute. Net action on |x>|0...0>|->:
 * (-1)^F(x) |x>|0...0>|->.
 */
[[nodiscard]] inline Circuit compile_oracle(const CnfFormula &f, const CompileOptions &opts,
                                            std::size_t iteration = 0) {
    (void)check_compilable(f, opts);
    return detail::oracle_unchecked(f, opts, iteration);
}

namespace detail {

inline void append_diffusion(Circuit &c, const std::vector<std::size_t> &vars,
                             std::size_t iteration) {
    c.begin_stage(Stage::Diffusion, iteration);
    if (vars.size() == 1) {
        // For N = 2 the reflection 2/N - delta_ij is exactly X.
        c.append(Gate::x(vars.front()));
        return;
    }
    for (auto q : vars) {
        c.append(Gate::h(q));
    }
    for (auto q : vars) {
        c.append(Gate::x(q));
    }
    std::vector<Control> controls;
    for (std::size_t i = 0; i + 1 < vars.size(); ++i) {
        controls.push_back({vars[i], Polarity::Positive});
    }
    c.append(Gate::mcz(std::move(controls), vars.back()));
    for (auto q : vars) {
        c.append(Gate::x(q));
    }
    for (auto q : vars) {
        c.append(Gate::h(q));
    }
}

} // namespace detail

/// Inversion about the average on `nvars` qubits, up to a global phase of -1.
[[nodiscard]] inline Circuit compile_diffusion(std::size_t nvars) {
    if (nvars < 1) {
        throw InvalidArgument("diffusion needs at least one variable");
    }
    Circuit c = Circuit::with_qubits(nvars);
    std::vector<std::size_t> vars(nvars);
    for (std::size_t i = 0; i < nvars; ++i) {
        vars[i] = i;
    }
    detail::append_diffusion(c, vars, 0);
    return c;
}

/// max(1, round(pi * sqrt(2^n) / 4 - 1/2)), the optimal count for one marked item.
[[nodiscard]] inline std::size_t grover_iterations(std::size_t nvars) {
    if (nvars < 1) {
        throw InvalidArgument("grover_iterations needs at least one variable");
    }
    const double n = std::ldexp(1.0, static_cast<int>(nvars));
    const double k = std::round(std::numbers::pi * std::sqrt(n) / 4.0 - 0.5);
    return std::max<std::size_t>(1, static_cast<std::size_t>(k));
}

struct GroverPlan {
    Circuit circuit;
    RegisterLayout layout;
    std::size_t register_size = 0;
    std::size_t iteration_count = 0;
    std::optional<Assignment> target_hint;  // reporting only; never read by the circuit
    SatClassification classification;
    CompileOptions options;
};

/// Preamble (H on variables; X, H on kickback) then the iteration block repeated.
[[nodiscard]] inline GroverPlan compile(const CnfFormula &f, const CompileOptions &opts = {}) {
    if (opts.iterations && *opts.iterations < 1) {
        throw InvalidArgument("fixed iteration count must be at least 1");
    }
    SatClassification cls = check_compilable(f, opts);
    RegisterLayout layout = make_layout(f, opts);
    if (layout.size() > opts.max_qubits) {
        throw ResourceLimitError("plan needs " + std::to_string(layout.size()) +
                                 " qubits; simulator bound is " +
                                 std::to_string(opts.max_qubits));
    }
    const std::size_t k = opts.iterations.value_or(grover_iterations(f.variable_count()));

    Circuit c(layout.roles);
    c.begin_stage(Stage::Preamble, 0);
    for (auto q : layout.variables) {
        c.append(Gate::h(q));
    }
    c.append(Gate::x(layout.kickback));
    c.append(Gate::h(layout.kickback));

    for (std::size_t it = 1; it <= k; ++it) {
        c.append(detail::oracle_unchecked(f, opts, it));
        detail::append_diffusion(c, layout.variables, it);
    }

    GroverPlan plan;
    plan.circuit = std::move(c);
    plan.register_size = layout.size();
    plan.layout = std::move(layout);
    plan.iteration_count = k;
    plan.target_hint = unique_solution(cls);
    plan.classification = std::move(cls);
    plan.options = opts;
    return plan;
}

/// Gates up to and including the given stage of the given iteration.
[[nodiscard]] inline Circuit prefix_through(const Circuit &c, Stage stage, std::size_t iteration) {
    for (const auto &span : c.stages()) {
        if (span.stage == stage && span.iteration == iteration) {
            Circuit out(c.roles());
            for (const auto &s : c.stages()) {
                if (s.begin >= span.end) {
                    break;
                }
                out.begin_stage(s.stage, s.iteration);
                for (std::size_t i = s.begin; i < s.end; ++i) {
                    out.append(c.gates()[i]);
                }
            }
            return out;
        }
    }
    throw InvalidArgument("circuit has no " + std::string(stage_name(stage)) +
                          " stage in iteration " + std::to_string(iteration));
}

/**
 * Preamble through the first iteration's kickback: the state where the
 * result qubit holds F(x) and the solution carries the -1 phase. Needs the
 * separate result qubit.
 */
[[nodiscard]] inline Circuit compute_and_kickback_prefix(const GroverPlan &plan) {
    if (plan.options.kickback_style != KickbackStyle::SeparateAncilla) {
        throw InvalidArgument(
            "the compute-and-kickback state needs a result qubit; DirectPhase has none");
    }
    return prefix_through(plan.circuit, Stage::Kickback, 1);
}

[[nodiscard]] inline MeasurementReport measure_variables(const StateVector &s,
                                                         const GroverPlan &plan) {
    return measure_variables(s, std::span<const QubitRole>(plan.layout.roles));
}

/// Probability of `target` after k = 0..max_k iterations.
[[nodiscard]] inline std::vector<double> success_sweep(const CnfFormula &f,
                                                       CompileOptions opts,
                                                       const Assignment &target,
                                                       std::size_t max_k) {
    opts.iterations = 1;
    const GroverPlan plan = compile(f, opts);
    const auto spans = plan.circuit.stages();
    const std::size_t preamble_end = spans.front().end;
    const Circuit preamble = plan.circuit.slice(0, preamble_end);
    const Circuit iteration = plan.circuit.slice(preamble_end, plan.circuit.size());

    StateVector s(plan.register_size, opts.max_qubits);
    run(s, preamble);
    std::vector<double> out;
    out.push_back(measure_variables(s, plan).probabilities[target.to_index()]);
    for (std::size_t k = 1; k <= max_k; ++k) {
        run(s, iteration);
        out.push_back(measure_variables(s, plan).probabilities[target.to_index()]);
    }
    return out;
}

} // namespace grover_sat
