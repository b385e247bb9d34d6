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
#include "grover_sat/circuit.hpp"
#include "grover_sat/compiler.hpp"
#include "grover_sat/simulator.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace grover_sat;

namespace {
constexpr Polarity P = Polarity::Positive;
constexpr Polarity N = Polarity::Negative;
} // namespace

TEST(AppendGate, Basic) {
    const Circuit c = append_gate(Circuit::with_qubits(1), Gate::h(0));
    EXPECT_EQ(c.size(), 1U);
}

TEST(AppendGate, RejectsControlOnTarget) {
    EXPECT_THROW((void)append_gate(Circuit::with_qubits(2), Gate::mcx({{0, P}, {1, P}}, 1)),
                 InvalidArgument);
}

TEST(AppendGate, RejectsBadIndicesAndShapes) {
    const Circuit c = Circuit::with_qubits(2);
    EXPECT_THROW((void)append_gate(c, Gate::x(2)), InvalidArgument);
    EXPECT_THROW((void)append_gate(c, Gate::mcx({{5, P}}, 0)), InvalidArgument);
    EXPECT_THROW((void)append_gate(c, Gate::mcx({}, 0)), InvalidArgument);
    EXPECT_THROW((void)append_gate(c, Gate::mcz({}, 0)), InvalidArgument);
    EXPECT_THROW((void)append_gate(c, Gate{GateKind::Hadamard, {{1, P}}, 0}), InvalidArgument);
    EXPECT_THROW((void)append_gate(Circuit::with_qubits(3), Gate::mcx({{0, P}, {0, N}}, 2)),
                 InvalidArgument);
}

TEST(AppendGate, ControlledZCountsAsTwoQubitPhaseFlip) {
    const Circuit c = append_gate(Circuit::with_qubits(2), Gate::mcz({{0, P}}, 1));
    const auto inv = inventory(c, false);
    EXPECT_EQ(inv.count({InventoryKind::ControlledPhase, 2}), 1U);
    EXPECT_EQ(inv.total(), 1U);
}

TEST(CircuitRoles, AtMostOneResultAndKickback) {
    EXPECT_THROW(Circuit({QubitRole::result(), QubitRole::result()}), InvalidArgument);
    EXPECT_THROW(Circuit({QubitRole::kickback(), QubitRole::kickback()}), InvalidArgument);
    EXPECT_NO_THROW(Circuit({QubitRole::variable("a"), QubitRole::result(), QubitRole::kickback()}));
}

TEST(Invert, Empty) { EXPECT_TRUE(invert(Circuit::with_qubits(2)).empty()); }

TEST(Invert, ReversesOrder) {
    Circuit c = Circuit::with_qubits(2);
    c.append(Gate::h(0));
    c.append(Gate::mcx({{0, P}}, 1));
    const Circuit inv = invert(c);
    ASSERT_EQ(inv.size(), 2U);
    EXPECT_EQ(inv.gates()[0], Gate::mcx({{0, P}}, 1));
    EXPECT_EQ(inv.gates()[1], Gate::h(0));
}

TEST(Invert, OracleComputeStageRestoresAncillas) {
    const auto f = parse_infix("(~a|~b)&(a|b)&a");
    const CompileOptions opts;
    Circuit compute = compile_clause_stage(f, opts);
    compute.append(compile_and_stage(f, opts));
    Circuit both = compute;
    both.append(invert(compute));
    for (std::uint64_t ab = 0; ab < 4; ++ab) {
        const auto out = simulate(StateVector::basis(compute.qubit_count(), ab), both);
        EXPECT_NEAR(std::abs(out[ab]), 1.0, 1e-12) << "input " << ab;
    }
}

TEST(LowerPolarity, SingleNegativeControl) {
    Circuit c = Circuit::with_qubits(2);
    c.append(Gate::mcx({{0, N}}, 1));
    const Circuit lowered = lower_polarity(c);
    ASSERT_EQ(lowered.size(), 3U);
    EXPECT_EQ(lowered.gates()[0], Gate::x(0));
    EXPECT_EQ(lowered.gates()[1], Gate::mcx({{0, P}}, 1));
    EXPECT_EQ(lowered.gates()[2], Gate::x(0));
}

TEST(LowerPolarity, BothControlsNegativeClause) {
    // Second clause (a|b) of the two-variable fixture: controls a0, b0.
    const auto f = parse_infix("(~a|~b)&(a|b)&a");
    const Circuit clause = compile_clause_stage(f, CompileOptions{});
    const Circuit lowered = lower_polarity(clause);
    const auto raw = inventory(clause, false);
    const auto low = inventory(lowered, false);
    EXPECT_EQ(low.one_qubit() - raw.one_qubit(), 4U);
    EXPECT_EQ(low.multi_qubit_total(), raw.multi_qubit_total());
    for (const auto &g : lowered.gates()) {
        for (const auto &ctrl : g.controls) {
            EXPECT_EQ(ctrl.polarity, P);
        }
    }
}

TEST(LowerPolarity, PositiveCircuitUnchanged) {
    Circuit c = Circuit::with_qubits(3);
    c.append(Gate::h(0));
    c.append(Gate::mcx({{0, P}, {1, P}}, 2));
    c.append(Gate::mcz({{2, P}}, 0));
    EXPECT_EQ(lower_polarity(c), c);
}

TEST(Inventory, Empty) { EXPECT_TRUE(inventory(Circuit::with_qubits(1), true).empty()); }

TEST(Inventory, RewriteControlledNotAsPhaseFlip) {
    Circuit c = Circuit::with_qubits(3);
    c.append(Gate::mcx({{0, P}, {1, N}}, 2));
    const auto inv = inventory(c, true);
    EXPECT_EQ(inv.count({InventoryKind::ControlledPhase, 3}), 1U);
    EXPECT_EQ(inv.one_qubit(), 2U);
    EXPECT_EQ(inv.total(), 3U);
    const auto raw = inventory(c, false);
    EXPECT_EQ(raw.count({InventoryKind::ControlledNot, 3}), 1U);
}

TEST(Inventory, CompiledTwoVariablePlan) {
    // Hand count of the deterministic compilation, one iteration:
    // clause 2x MCX(3), AND MCX(4), kickback MCX(2), uncompute MCX(4) + 2x MCX(3),
    // diffusion MCZ(2).
    const auto plan = compile(parse_infix("(~a|~b)&(a|b)&a"));
    const auto inv = inventory(plan.circuit, true);
    EXPECT_EQ(inv.count({InventoryKind::ControlledPhase, 2}), 2U);
    EXPECT_EQ(inv.count({InventoryKind::ControlledPhase, 3}), 4U);
    EXPECT_EQ(inv.count({InventoryKind::ControlledPhase, 4}), 2U);
    EXPECT_EQ(inv.multi_qubit_total(), 8U);
}

TEST(CircuitProperties, InventoryTotalEqualsLength) {
    std::mt19937_64 rng(21);
    for (int i = 0; i < 100; ++i) {
        const Circuit c = oracle::random_circuit(rng, 1 + rng() % 5, rng() % 20);
        EXPECT_EQ(inventory(c, false).total(), c.size());
    }
}

TEST(CircuitProperties, InverseComposesToIdentity) {
    std::mt19937_64 rng(1234);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t q = 1 + rng() % 5;
        const Circuit c = oracle::random_circuit(rng, q, rng() % 21);
        Circuit round = c;
        round.append(invert(c));
        for (int s = 0; s < 20; ++s) {
            const auto in = oracle::random_state(rng, q);
            const auto out = simulate(StateVector::from_amplitudes(in), round);
            ASSERT_LT(oracle::max_abs_diff(in, out.amplitudes()), 1e-12);
        }
    }
}

TEST(CircuitProperties, LoweringPreservesAction) {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t q = 1 + rng() % 5;
        const Circuit c = oracle::random_circuit(rng, q, rng() % 21);
        const Circuit lowered = lower_polarity(c);
        for (int s = 0; s < 5; ++s) {
            const auto in = oracle::random_state(rng, q);
            const auto a = simulate(StateVector::from_amplitudes(in), c);
            const auto b = simulate(StateVector::from_amplitudes(in), lowered);
            ASSERT_LT(oracle::max_abs_diff({a.amplitudes().begin(), a.amplitudes().end()},
                                            b.amplitudes()),
                      1e-12);
        }
    }
}

TEST(TextFormat, RoundTripsRandomCircuits) {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 100; ++trial) {
        Circuit c = oracle::random_circuit(rng, 1 + rng() % 6, rng() % 15);
        EXPECT_EQ(parse_circuit_text(to_text(c)), c);
    }
}

TEST(TextFormat, RoundTripsCompiledPlan) {
    CompileOptions opts;
    opts.iterations = 2;
    const auto plan = compile(parse_infix("(a|b|c)&(a|~b|c)&b&~c"), opts);
    const Circuit back = parse_circuit_text(to_text(plan.circuit));
    EXPECT_EQ(back, plan.circuit);
    EXPECT_EQ(back.roles(), plan.layout.roles);
}

TEST(TextFormat, GateLines) {
    Circuit c = Circuit::with_qubits(3);
    c.append(Gate::mcx({{0, P}, {1, N}}, 2));
    const std::string text = to_text(c);
    EXPECT_NE(text.find("MCX +0 -1 -> 2\n"), std::string::npos) << text;
}

TEST(TextFormat, Errors) {
    EXPECT_THROW((void)parse_circuit_text("X 0\n"), ParseError);
    EXPECT_THROW((void)parse_circuit_text("qubits 2\nrole 0 variable a\nrole 1 variable b\nX 2\n"),
                 ParseError);
    EXPECT_THROW((void)parse_circuit_text("qubits 2\nrole 0 variable a\nrole 1 variable b\nMCX 0 -> 1\n"),
                 ParseError);
    EXPECT_THROW((void)parse_circuit_text("qubits 1\nrole 0 variable a\nFOO 0\n"), ParseError);
    EXPECT_THROW((void)parse_circuit_text("qubits 2\nrole 0 variable a\nX 0\n"), ParseError);
}
