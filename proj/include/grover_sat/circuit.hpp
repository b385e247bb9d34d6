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
 * Gate-level circuit IR: typed qubit roles, the X/H/multi-controlled-X/
 * multi-controlled-Z gate set, stage metadata, inversion, polarity lowering,
 * gate inventories and the line-oriented text format.
 */
#pragma once

#include "errors.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace grover_sat {

enum class RoleKind : std::uint8_t {
    Variable,
    ClauseAncilla,
    Intermediate,
    Result,
    Kickback,
};

struct QubitRole {
    RoleKind kind = RoleKind::Variable;
    std::string name;        // Variable only
    std::size_t clause = 0;  // ClauseAncilla, Intermediate
    std::size_t step = 0;    // Intermediate only

    [[nodiscard]] static QubitRole variable(std::string name) {
        return {RoleKind::Variable, std::move(name), 0, 0};
    }
    [[nodiscard]] static QubitRole clause_ancilla(std::size_t clause) {
        return {RoleKind::ClauseAncilla, {}, clause, 0};
    }
    [[nodiscard]] static QubitRole intermediate(std::size_t clause, std::size_t step) {
        return {RoleKind::Intermediate, {}, clause, step};
    }
    [[nodiscard]] static QubitRole result() { return {RoleKind::Result, {}, 0, 0}; }
    [[nodiscard]] static QubitRole kickback() { return {RoleKind::Kickback, {}, 0, 0}; }

    /// Work qubits that must return to |0> after every oracle block.
    [[nodiscard]] bool is_scratch() const noexcept {
        return kind == RoleKind::ClauseAncilla || kind == RoleKind::Intermediate ||
               kind == RoleKind::Result;
    }

    friend bool operator==(const QubitRole &, const QubitRole &) = default;
};

[[nodiscard]] inline std::string describe(const QubitRole &role) {
    switch (role.kind) {
    case RoleKind::Variable:
        return "variable " + role.name;
    case RoleKind::ClauseAncilla:
        return "clause " + std::to_string(role.clause);
    case RoleKind::Intermediate:
        return "intermediate " + std::to_string(role.clause) + " " +
               std::to_string(role.step);
    case RoleKind::Result:
        return "result";
    case RoleKind::Kickback:
        return "kickback";
    }
    return "?";
}

enum class GateKind : std::uint8_t { PauliX, Hadamard, MultiControlledX, MultiControlledZ };

[[nodiscard]] constexpr std::string_view gate_mnemonic(GateKind kind) noexcept {
    switch (kind) {
    case GateKind::PauliX:
        return "X";
    case GateKind::Hadamard:
        return "H";
    case GateKind::MultiControlledX:
        return "MCX";
    case GateKind::MultiControlledZ:
        return "MCZ";
    }
    return "?";
}

/// Positive fires when the control qubit is |1>, Negative when it is |0>.
enum class Polarity : std::uint8_t { Positive, Negative };

struct Control {
    std::size_t qubit = 0;
    Polarity polarity = Polarity::Positive;

    friend bool operator==(const Control &, const Control &) = default;
};

/**
 * One gate of the IR. Every gate kind in this set is self-inverse.
 *
 * MultiControlledZ is symmetric in its qubits (phase -1 when all controls
 * fire and the target is |1>); the target is stored only for uniformity.
 */
struct Gate {
    GateKind kind = GateKind::PauliX;
    std::vector<Control> controls;
    std::size_t target = 0;

    [[nodiscard]] std::size_t arity() const noexcept { return controls.size() + 1; }
    [[nodiscard]] bool is_single_qubit() const noexcept {
        return kind == GateKind::PauliX || kind == GateKind::Hadamard;
    }

    [[nodiscard]] static Gate x(std::size_t q) { return {GateKind::PauliX, {}, q}; }
    [[nodiscard]] static Gate h(std::size_t q) { return {GateKind::Hadamard, {}, q}; }
    [[nodiscard]] static Gate mcx(std::vector<Control> controls, std::size_t target) {
        return {GateKind::MultiControlledX, std::move(controls), target};
    }
    [[nodiscard]] static Gate mcz(std::vector<Control> controls, std::size_t target) {
        return {GateKind::MultiControlledZ, std::move(controls), target};
    }

    friend bool operator==(const Gate &, const Gate &) = default;
};

/// Throws InvalidArgument if the gate breaks an IR invariant for a register of `qubits`.
inline void validate_gate(const Gate &g, std::size_t qubits) {
    if (g.target >= qubits) {
        throw InvalidArgument("gate target " + std::to_string(g.target) +
                              " out of range for " + std::to_string(qubits) + " qubits");
    }
    if (g.is_single_qubit() && !g.controls.empty()) {
        throw InvalidArgument(std::string(gate_mnemonic(g.kind)) +
                              " gate cannot have controls");
    }
    if (!g.is_single_qubit() && g.controls.empty()) {
        throw InvalidArgument(std::string(gate_mnemonic(g.kind)) +
                              " gate needs at least one control");
    }
    for (std::size_t i = 0; i < g.controls.size(); ++i) {
        const auto q = g.controls[i].qubit;
        if (q >= qubits) {
            throw InvalidArgument("control " + std::to_string(q) + " out of range for " +
                                  std::to_string(qubits) + " qubits");
        }
        if (q == g.target) {
            throw InvalidArgument("qubit " + std::to_string(q) +
                                  " is both control and target");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (g.controls[j].qubit == q) {
                throw InvalidArgument("qubit " + std::to_string(q) +
                                      " appears twice as a control");
            }
        }
    }
}

enum class Stage : std::uint8_t {
    Body,  // unlabeled gates
    Preamble,
    ClauseStage,
    AndStage,
    Kickback,
    Uncompute,
    Diffusion,
};

[[nodiscard]] constexpr std::string_view stage_name(Stage s) noexcept {
    switch (s) {
    case Stage::Body:
        return "body";
    case Stage::Preamble:
        return "preamble";
    case Stage::ClauseStage:
        return "clause";
    case Stage::AndStage:
        return "and";
    case Stage::Kickback:
        return "kickback";
    case Stage::Uncompute:
        return "uncompute";
    case Stage::Diffusion:
        return "diffusion";
    }
    return "?";
}

[[nodiscard]] inline Stage parse_stage_name(std::string_view name) {
    for (auto s : {Stage::Body, Stage::Preamble, Stage::ClauseStage, Stage::AndStage,
                   Stage::Kickback, Stage::Uncompute, Stage::Diffusion}) {
        if (stage_name(s) == name) {
            return s;
        }
    }
    throw InvalidArgument("unknown stage '" + std::string(name) + "'");
}

/// Half-open gate range [begin, end) belonging to one stage of one iteration.
struct StageSpan {
    Stage stage = Stage::Body;
    std::size_t iteration = 0;
    std::size_t begin = 0;
    std::size_t end = 0;

    friend bool operator==(const StageSpan &, const StageSpan &) = default;
};

/**
 * Ordered gate list over a fixed, typed register.
 *
 * Stage spans always partition the gate list: gates appended before any
 * explicit begin_stage() land in an implicit Body span.
 */
class Circuit {
  public:
    Circuit() = default;

    explicit Circuit(std::vector<QubitRole> roles) : roles_(std::move(roles)) {
        std::size_t results = 0;
        std::size_t kickbacks = 0;
        for (const auto &r : roles_) {
            results += r.kind == RoleKind::Result ? 1 : 0;
            kickbacks += r.kind == RoleKind::Kickback ? 1 : 0;
        }
        if (results > 1 || kickbacks > 1) {
            throw InvalidArgument("a circuit has at most one result and one kickback qubit");
        }
    }

    /// Register of `n` anonymous variable qubits, handy for fragments and tests.
    [[nodiscard]] static Circuit with_qubits(std::size_t n) {
        std::vector<QubitRole> roles;
        roles.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            roles.push_back(QubitRole::variable("q" + std::to_string(i)));
        }
        return Circuit(std::move(roles));
    }

    [[nodiscard]] std::size_t qubit_count() const noexcept { return roles_.size(); }
    [[nodiscard]] const std::vector<QubitRole> &roles() const noexcept { return roles_; }
    [[nodiscard]] const std::vector<Gate> &gates() const noexcept { return gates_; }
    [[nodiscard]] std::size_t size() const noexcept { return gates_.size(); }
    [[nodiscard]] bool empty() const noexcept { return gates_.empty(); }

    /// Spans with their `end` resolved.
    [[nodiscard]] std::vector<StageSpan> stages() const {
        std::vector<StageSpan> out = marks_;
        for (std::size_t i = 0; i < out.size(); ++i) {
            out[i].end = i + 1 < out.size() ? out[i + 1].begin : gates_.size();
        }
        return out;
    }

    void begin_stage(Stage stage, std::size_t iteration = 0) {
        if (!marks_.empty() && marks_.back().begin == gates_.size()) {
            marks_.pop_back();
        }
        marks_.push_back({stage, iteration, gates_.size(), 0});
    }

    void append(Gate g) {
        validate_gate(g, roles_.size());
        if (marks_.empty()) {
            marks_.push_back({Stage::Body, 0, 0, 0});
        }
        gates_.push_back(std::move(g));
    }

    /// Appends every gate of `other`, which must share this register. Stage
    /// marks of `other` are carried over.
    void append(const Circuit &other) {
        if (other.roles_ != roles_) {
            throw InvalidArgument("cannot concatenate circuits over different registers");
        }
        for (const auto &span : other.stages()) {
            if (span.begin == span.end) {
                continue;
            }
            begin_stage(span.stage, span.iteration);
            for (std::size_t i = span.begin; i < span.end; ++i) {
                gates_.push_back(other.gates_[i]);
            }
        }
    }

    /// Gates in [begin, end) over the same register, as one Body span.
    [[nodiscard]] Circuit slice(std::size_t begin, std::size_t end) const {
        Circuit out(roles_);
        for (std::size_t i = begin; i < std::min(end, gates_.size()); ++i) {
            out.append(gates_[i]);
        }
        return out;
    }

    /// Index of the first qubit with the given role kind, or qubit_count().
    [[nodiscard]] std::size_t find_role(RoleKind kind) const noexcept {
        const auto it = std::find_if(roles_.begin(), roles_.end(),
                                     [kind](const QubitRole &r) { return r.kind == kind; });
        return static_cast<std::size_t>(it - roles_.begin());
    }

    friend bool operator==(const Circuit &a, const Circuit &b) {
        return a.roles_ == b.roles_ && a.gates_ == b.gates_ && a.stages() == b.stages();
    }

  private:
    std::vector<QubitRole> roles_;
    std::vector<Gate> gates_;
    std::vector<StageSpan> marks_;  // `end` unused; derived in stages()
};

[[nodiscard]] inline Circuit append_gate(Circuit c, Gate g) {
    c.append(std::move(g));
    return c;
}

/// Reverses gate order. Every gate here is self-inverse, so this is the adjoint.
[[nodiscard]] inline Circuit invert(const Circuit &c) {
    Circuit out(c.roles());
    for (auto it = c.gates().rbegin(); it != c.gates().rend(); ++it) {
        out.append(*it);
    }
    return out;
}

/// Rewrites every fires-on-0 control as fires-on-1 wrapped in PauliX on that qubit.
[[nodiscard]] inline Circuit lower_polarity(const Circuit &c) {
    Circuit out(c.roles());
    for (const auto &span : c.stages()) {
        out.begin_stage(span.stage, span.iteration);
        for (std::size_t i = span.begin; i < span.end; ++i) {
            const Gate &g = c.gates()[i];
            std::vector<std::size_t> flipped;
            Gate lowered = g;
            for (auto &ctrl : lowered.controls) {
                if (ctrl.polarity == Polarity::Negative) {
                    flipped.push_back(ctrl.qubit);
                    ctrl.polarity = Polarity::Positive;
                }
            }
            for (auto q : flipped) {
                out.append(Gate::x(q));
            }
            out.append(std::move(lowered));
            for (auto q : flipped) {
                out.append(Gate::x(q));
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Gate inventories

enum class InventoryKind : std::uint8_t {
    OneQubit,
    ControlledNot,    // C_NOT^n
    ControlledPhase,  // C_PF^(n)
};

struct InventoryKey {
    InventoryKind kind = InventoryKind::OneQubit;
    std::size_t arity = 1;

    friend auto operator<=>(const InventoryKey &, const InventoryKey &) = default;
};

[[nodiscard]] inline std::string inventory_label(const InventoryKey &k) {
    switch (k.kind) {
    case InventoryKind::OneQubit:
        return "one-qubit";
    case InventoryKind::ControlledNot:
        return "C_NOT^" + std::to_string(k.arity);
    case InventoryKind::ControlledPhase:
        return "C_PF^(" + std::to_string(k.arity) + ")";
    }
    return "?";
}

/// Multiset of gates keyed by (kind, arity).
class GateInventory {
  public:
    GateInventory() = default;

    void add(InventoryKey key, std::uint64_t n = 1) {
        if (n != 0) {
            counts_[key] += n;
        }
    }
    void add_cpf(std::size_t arity, std::uint64_t n = 1) {
        add({InventoryKind::ControlledPhase, arity}, n);
    }

    /// C_PF counts over arities 2, 3, ... (index 0 is arity 2).
    [[nodiscard]] static GateInventory from_cpf_counts(const std::vector<std::uint64_t> &by_arity) {
        GateInventory inv;
        for (std::size_t i = 0; i < by_arity.size(); ++i) {
            inv.add_cpf(i + 2, by_arity[i]);
        }
        return inv;
    }

    [[nodiscard]] std::uint64_t count(InventoryKey key) const {
        const auto it = counts_.find(key);
        return it == counts_.end() ? 0 : it->second;
    }
    [[nodiscard]] std::uint64_t one_qubit() const {
        return count({InventoryKind::OneQubit, 1});
    }
    [[nodiscard]] std::uint64_t multi_qubit_total() const {
        std::uint64_t n = 0;
        for (const auto &[k, v] : counts_) {
            n += k.kind == InventoryKind::OneQubit ? 0 : v;
        }
        return n;
    }
    [[nodiscard]] std::uint64_t total() const { return multi_qubit_total() + one_qubit(); }
    [[nodiscard]] const std::map<InventoryKey, std::uint64_t> &counts() const noexcept {
        return counts_;
    }
    [[nodiscard]] bool empty() const noexcept { return counts_.empty(); }

    friend bool operator==(const GateInventory &, const GateInventory &) = default;

  private:
    std::map<InventoryKey, std::uint64_t> counts_;
};

/**
 * Census of the circuit's gates. With `rewrite_cx_as_cz`, every C_NOT^n is
 * counted as H_n C_PF^(n) H_n: one C_PF^(n) plus two one-qubit gates.
 */
[[nodiscard]] inline GateInventory inventory(const Circuit &c, bool rewrite_cx_as_cz) {
    GateInventory inv;
    for (const auto &g : c.gates()) {
        switch (g.kind) {
        case GateKind::PauliX:
        case GateKind::Hadamard:
            inv.add({InventoryKind::OneQubit, 1});
            break;
        case GateKind::MultiControlledX:
            if (rewrite_cx_as_cz) {
                inv.add({InventoryKind::ControlledPhase, g.arity()});
                inv.add({InventoryKind::OneQubit, 1}, 2);
            } else {
                inv.add({InventoryKind::ControlledNot, g.arity()});
            }
            break;
        case GateKind::MultiControlledZ:
            inv.add({InventoryKind::ControlledPhase, g.arity()});
            break;
        }
    }
    return inv;
}

// ---------------------------------------------------------------------------
// Text format
//
//   qubits <n>
//   role <i> variable <name> | clause <c> | intermediate <c> <s> | result | kickback
//   stage <name> <iteration>
//   X <q> | H <q> | MCX <+c|-c>... -> <t> | MCZ <+c|-c>... -> <t>
//
// '#' starts a comment line. Qubit 0 is the least significant basis bit.

[[nodiscard]] inline std::string to_text(const Circuit &c) {
    std::ostringstream out;
    out << "# grover-sat circuit v1; qubit 0 = least significant basis bit\n";
    out << "qubits " << c.qubit_count() << "\n";
    for (std::size_t i = 0; i < c.qubit_count(); ++i) {
        out << "role " << i << " " << describe(c.roles()[i]) << "\n";
    }
    for (const auto &span : c.stages()) {
        out << "stage " << stage_name(span.stage) << " " << span.iteration << "\n";
        for (std::size_t i = span.begin; i < span.end; ++i) {
            const Gate &g = c.gates()[i];
            out << gate_mnemonic(g.kind);
            for (const auto &ctrl : g.controls) {
                out << ' ' << (ctrl.polarity == Polarity::Positive ? '+' : '-') << ctrl.qubit;
            }
            if (!g.controls.empty()) {
                out << " ->";
            }
            out << ' ' << g.target << "\n";
        }
    }
    return out.str();
}

[[nodiscard]] inline Circuit parse_circuit_text(std::string_view text) {
    std::vector<QubitRole> roles;
    bool have_register = false;
    Circuit circuit;
    std::size_t line_start = 0;
    std::size_t declared = 0;

    auto fail = [&](const std::string &msg) -> void { throw ParseError(msg, line_start); };
    auto to_index = [&](const std::string &tok) -> std::size_t {
        std::size_t used = 0;
        unsigned long long v = 0;
        try {
            v = std::stoull(tok, &used);
        } catch (const std::exception &) {
            used = 0;
        }
        if (used == 0 || used != tok.size()) {
            fail("expected integer, got '" + tok + "'");
        }
        return static_cast<std::size_t>(v);
    };
    auto ensure_register = [&] {
        if (have_register) {
            return;
        }
        if (roles.size() != declared) {
            fail("expected " + std::to_string(declared) + " role lines");
        }
        circuit = Circuit(roles);
        have_register = true;
    };

    bool saw_qubits = false;
    while (line_start < text.size()) {
        std::size_t line_end = text.find('\n', line_start);
        if (line_end == std::string_view::npos) {
            line_end = text.size();
        }
        std::istringstream line{std::string(text.substr(line_start, line_end - line_start))};
        std::string head;
        if (!(line >> head) || head.front() == '#') {
            line_start = line_end + 1;
            continue;
        }
        std::vector<std::string> toks;
        for (std::string t; line >> t;) {
            toks.push_back(t);
        }
        if (head == "qubits") {
            if (saw_qubits || toks.size() != 1) {
                fail("malformed or duplicate 'qubits' line");
            }
            declared = to_index(toks[0]);
            saw_qubits = true;
        } else if (head == "role") {
            if (!saw_qubits || have_register || toks.size() < 2) {
                fail("misplaced or malformed 'role' line");
            }
            if (to_index(toks[0]) != roles.size()) {
                fail("role lines must be in qubit order");
            }
            const std::string &kind = toks[1];
            if (kind == "variable" && toks.size() == 3) {
                roles.push_back(QubitRole::variable(toks[2]));
            } else if (kind == "clause" && toks.size() == 3) {
                roles.push_back(QubitRole::clause_ancilla(to_index(toks[2])));
            } else if (kind == "intermediate" && toks.size() == 4) {
                roles.push_back(QubitRole::intermediate(to_index(toks[2]), to_index(toks[3])));
            } else if (kind == "result" && toks.size() == 2) {
                roles.push_back(QubitRole::result());
            } else if (kind == "kickback" && toks.size() == 2) {
                roles.push_back(QubitRole::kickback());
            } else {
                fail("unknown role '" + kind + "'");
            }
        } else if (head == "stage") {
            if (!saw_qubits || toks.size() != 2) {
                fail("malformed 'stage' line");
            }
            ensure_register();
            circuit.begin_stage(parse_stage_name(toks[0]), to_index(toks[1]));
        } else {
            if (!saw_qubits) {
                fail("gate before 'qubits' line");
            }
            ensure_register();
            Gate g;
            if (head == "X" || head == "H") {
                if (toks.size() != 1) {
                    fail("single-qubit gate takes exactly one qubit");
                }
                g = head == "X" ? Gate::x(to_index(toks[0])) : Gate::h(to_index(toks[0]));
            } else if (head == "MCX" || head == "MCZ") {
                if (toks.size() < 3 || toks[toks.size() - 2] != "->") {
                    fail("expected '<controls> -> <target>'");
                }
                std::vector<Control> controls;
                for (std::size_t i = 0; i + 2 < toks.size(); ++i) {
                    const auto &t = toks[i];
                    if (t.size() < 2 || (t[0] != '+' && t[0] != '-')) {
                        fail("control must carry a +/- polarity mark: '" + t + "'");
                    }
                    controls.push_back({to_index(t.substr(1)),
                                        t[0] == '+' ? Polarity::Positive : Polarity::Negative});
                }
                const auto target = to_index(toks.back());
                g = head == "MCX" ? Gate::mcx(std::move(controls), target)
                                  : Gate::mcz(std::move(controls), target);
            } else {
                fail("unknown gate '" + head + "'");
            }
            try {
                circuit.append(std::move(g));
            } catch (const InvalidArgument &e) {
                fail(e.what());
            }
        }
        line_start = line_end + 1;
    }
    if (!saw_qubits) {
        throw ParseError("missing 'qubits' line", text.size());
    }
    ensure_register();
    return circuit;
}

} // namespace grover_sat
