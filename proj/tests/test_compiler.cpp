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
#include "grover_sat/compiler.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace grover_sat;

namespace {

constexpr Polarity P = Polarity::Positive;
constexpr Polarity N = Polarity::Negative;

const char *const kTwoVar = "(~a|~b)&(a|b)&a";
const char *const kThreeVar2Sat = "(a|b)&(~a|c)&~b";
const char *const kThreeVar3Sat = "(a|b|c)&(a|~b|c)&b&~c";

CompileOptions direct_phase() {
    CompileOptions o;
    o.kickback_style = KickbackStyle::DirectPhase;
    return o;
}

/// |x>|0..0>|-> over the given layout.
std::vector<Complex> phase_oracle_input(const RegisterLayout &layout, std::uint64_t x) {
    std::vector<Complex> amps(std::size_t{1} << layout.size(), 0.0);
    const std::uint64_t kb = std::uint64_t{1} << layout.kickback;
    amps[x] = 1.0 / std::sqrt(2.0);
    amps[x | kb] = -1.0 / std::sqrt(2.0);
    return amps;
}

/// Checks oracle(|x>|0>|->) == (-1)^f(x) |x>|0>|-> for every x.
void expect_phase_oracle(const CnfFormula &f, const CompileOptions &opts) {
    const auto table = oracle::truth_table(f);
    const Circuit circ = detail::oracle_unchecked(f, opts, 1);
    const RegisterLayout layout = make_layout(f, opts);
    for (std::uint64_t x = 0; x < table.size(); ++x) {
        auto expected = phase_oracle_input(layout, x);
        const auto out = simulate(StateVector::from_amplitudes(expected), circ);
        if (table[x]) {
            for (auto &a : expected) {
                a = -a;
            }
        }
        ASSERT_LT(oracle::max_abs_diff(expected, out.amplitudes()), 1e-12)
            << to_infix(f) << " x=" << x;
    }
}

} // namespace

TEST(Layout, RegisterSizes) {
    EXPECT_EQ(make_layout(parse_infix(kTwoVar), {}).size(), 6U);
    EXPECT_EQ(make_layout(parse_infix(kThreeVar2Sat), {}).size(), 7U);
    EXPECT_EQ(make_layout(parse_infix(kThreeVar3Sat), {}).size(), 9U);
    CompileOptions direct;
    direct.wide_clause_strategy = WideClauseStrategy::Direct;
    EXPECT_EQ(make_layout(parse_infix(kThreeVar3Sat), direct).size(), 7U);
    EXPECT_EQ(make_layout(parse_infix(kTwoVar), direct_phase()).size(), 5U);
}

TEST(Layout, QubitOrder) {
    const auto layout = make_layout(parse_infix(kThreeVar3Sat), {});
    ASSERT_EQ(layout.roles.size(), 9U);
    EXPECT_EQ(layout.roles[0], QubitRole::variable("a"));
    EXPECT_EQ(layout.roles[3], QubitRole::intermediate(0, 0));
    EXPECT_EQ(layout.roles[4], QubitRole::intermediate(1, 0));
    EXPECT_EQ(layout.roles[5], QubitRole::clause_ancilla(0));
    EXPECT_EQ(layout.roles[6], QubitRole::clause_ancilla(1));
    EXPECT_EQ(layout.roles[7], QubitRole::result());
    EXPECT_EQ(layout.roles[8], QubitRole::kickback());
}

TEST(ClauseStage, TwoVariableFixtureGates) {
    // a=0 b=1 q1=2 q2=3 q3=4 q4=5
    const Circuit c = compile_clause_stage(parse_infix(kTwoVar), {});
    ASSERT_EQ(c.size(), 4U);
    EXPECT_EQ(c.gates()[0], Gate::mcx({{0, P}, {1, P}}, 2));
    EXPECT_EQ(c.gates()[1], Gate::x(2));
    EXPECT_EQ(c.gates()[2], Gate::mcx({{0, N}, {1, N}}, 3));
    EXPECT_EQ(c.gates()[3], Gate::x(3));
}

TEST(ClauseStage, TwoVariableFixtureAncillaValues) {
    const Circuit c = compile_clause_stage(parse_infix(kTwoVar), {});
    // On |ab> = |00>: q1 = ~a|~b = 1, q2 = a|b = 0.
    const auto out = simulate(StateVector::basis(6, 0), c);
    EXPECT_DOUBLE_EQ(out[0b000100].real(), 1.0);
}

TEST(ClauseStage, CascadeComputesWideOr) {
    const auto f = parse_infix(kThreeVar3Sat);
    const Circuit c = compile_clause_stage(f, {});
    // Clause 0 (a|b|c): two arity-3 gates through intermediate qubit 3 into ancilla 5.
    EXPECT_EQ(c.gates()[0], Gate::mcx({{0, N}, {1, N}}, 3));
    EXPECT_EQ(c.gates()[2], Gate::mcx({{3, N}, {2, N}}, 5));
    EXPECT_EQ(inventory(c, false).count({InventoryKind::ControlledNot, 3}), 4U);
    for (std::uint64_t x = 0; x < 8; ++x) {
        const bool a = x & 1, b = x & 2, cc = x & 4;
        const auto out = simulate(StateVector::basis(9, x), c);
        const auto m = measure_variables(out, std::span<const QubitRole>(c.roles()));
        (void)m;
        std::uint64_t idx = 0;
        for (std::uint64_t i = 0; i < out.dimension(); ++i) {
            if (std::abs(out[i]) > 0.5) {
                idx = i;
            }
        }
        EXPECT_EQ(((idx >> 5) & 1U) != 0, a || b || cc) << x;
        EXPECT_EQ(((idx >> 6) & 1U) != 0, a || !b || cc) << x;
    }
}

TEST(AndStage, TwoVariableFixture) {
    const auto f = parse_infix(kTwoVar);
    const Circuit and_stage = compile_and_stage(f, {});
    ASSERT_EQ(and_stage.size(), 1U);
    EXPECT_EQ(and_stage.gates()[0], Gate::mcx({{2, P}, {3, P}, {0, P}}, 4));

    Circuit compute = compile_clause_stage(f, {});
    compute.append(and_stage);
    const std::array<int, 4> expected_q3{0, 0, 1, 0};  // ab = 00, 01, 10, 11
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            const auto out = simulate(StateVector::basis(6, a | (b << 1)), compute);
            for (std::uint64_t i = 0; i < out.dimension(); ++i) {
                if (std::abs(out[i]) > 0.5) {
                    EXPECT_EQ(static_cast<int>((i >> 4) & 1U), expected_q3[2 * a + b]);
                }
            }
        }
    }
}

TEST(AndStage, SingleLiteralClausesAreDirectControls) {
    const auto g = compile_and_stage(parse_infix(kThreeVar2Sat), {}).gates().at(0);
    // a b c q1=3 q2=4 q3=5
    EXPECT_EQ(g, Gate::mcx({{3, P}, {4, P}, {1, N}}, 5));

    const auto h = compile_and_stage(parse_infix("a&~b"), {}).gates().at(0);
    EXPECT_EQ(h, Gate::mcx({{0, P}, {1, N}}, 2));
    EXPECT_TRUE(compile_clause_stage(parse_infix("a&~b"), {}).empty());
}

TEST(Kickback, SeparateAncillaGate) {
    const Circuit k = compile_kickback(parse_infix(kTwoVar), {});
    ASSERT_EQ(k.size(), 1U);
    EXPECT_EQ(k.gates()[0], Gate::mcx({{4, P}}, 5));
    EXPECT_TRUE(compile_kickback(parse_infix(kTwoVar), direct_phase()).empty());
}

TEST(Kickback, PlusStateGivesNoPhase) {
    const auto f = parse_infix(kTwoVar);
    const Circuit circ = detail::oracle_unchecked(f, {}, 1);
    // |x=10>|000>|+>: the flip acts trivially on |+>.
    std::vector<Complex> amps(64, 0.0);
    amps[0b000001] = 1.0 / std::sqrt(2.0);
    amps[0b100001] = 1.0 / std::sqrt(2.0);
    const auto out = simulate(StateVector::from_amplitudes(amps), circ);
    EXPECT_LT(oracle::max_abs_diff(amps, out.amplitudes()), 1e-12);
}

TEST(Kickback, FixturePrefixState) {
    const auto plan = compile(parse_infix(kTwoVar));
    const auto s = simulate(StateVector(6), compute_and_kickback_prefix(plan));
    // |ab>|q1 q2 q3>: a=qubit0, b=qubit1, q1=2, q2=3, q3=4, kickback=5.
    struct Expect {
        int a, b, q1, q2, q3, sign;
    };
    const Expect rows[] = {{0, 0, 1, 0, 0, +1}, {0, 1, 1, 1, 0, +1}, {1, 0, 1, 1, 1, -1}, {1, 1, 0, 1, 0, +1}};
    const double mag = 1.0 / (2.0 * std::sqrt(2.0));
    double covered = 0.0;
    for (const auto &r : rows) {
        const std::uint64_t base = r.a | (r.b << 1) | (r.q1 << 2) | (r.q2 << 3) | (r.q3 << 4);
        EXPECT_NEAR(s[base].real(), r.sign * mag, 1e-12);
        EXPECT_NEAR(s[base | 32].real(), -r.sign * mag, 1e-12);
        covered += std::norm(s[base]) + std::norm(s[base | 32]);
    }
    EXPECT_NEAR(covered, 1.0, 1e-12);
    EXPECT_THROW((void)compute_and_kickback_prefix(compile(parse_infix(kTwoVar), direct_phase())),
                 InvalidArgument);
}

TEST(Oracle, TwoVariableFixtureAfterUncompute) {
    const auto f = parse_infix(kTwoVar);
    Circuit c = compile(f).circuit.slice(0, 0);
    c.append(Gate::h(0));
    c.append(Gate::h(1));
    c.append(Gate::x(5));
    c.append(Gate::h(5));
    c.append(compile_oracle(f, {}));
    const auto s = simulate(StateVector(6), c);
    // (1/2)(|00> + |01> - |10> + |11>)_ab |000> (|0> - |1>)/sqrt2
    const double h = 0.5 / std::sqrt(2.0);
    const std::array<double, 4> sign{+1, -1, +1, +1};  // index ab as a + 2b: 00, a=1, b=1, 11
    for (std::uint64_t x = 0; x < 4; ++x) {
        EXPECT_NEAR(s[x].real(), sign[x] * h, 1e-12);
        EXPECT_NEAR(s[x | 32].real(), -sign[x] * h, 1e-12);
    }
    EXPECT_LT(measure_variables(s, std::span<const QubitRole>(c.roles())).ancilla_residual, 1e-20);
}

TEST(Oracle, ThreeSatPhaseOnlyOnSolution) {
    expect_phase_oracle(parse_infix(kThreeVar3Sat), {});
    const auto table = oracle::truth_table(parse_infix(kThreeVar3Sat));
    EXPECT_TRUE(table[0b011]);  // a=1 b=1 c=0
    EXPECT_EQ(std::count(table.begin(), table.end(), true), 1);
}

TEST(Oracle, RejectsNonUnique) {
    try {
        (void)compile_oracle(parse_infix("a&~a"), {});
        FAIL();
    } catch (const CompileRejected &e) {
        EXPECT_TRUE(std::holds_alternative<Unsatisfiable>(e.classification()));
    }
    EXPECT_THROW((void)compile(parse_infix("a|b")), CompileRejected);
}

TEST(OracleProperties, ExhaustiveSmallFormulaFamily) {
    // Every formula with up to 3 clauses over up to 3 variables drawn from
    // clause widths 1..3, plus random 4-variable formulas.
    std::size_t cases = 0;
    std::mt19937_64 rng(4242);
    for (std::size_t n = 1; n <= 4; ++n) {
        const int trials = n == 4 ? 250 : 120;
        for (int t = 0; t < trials; ++t) {
            const auto f = oracle::random_formula(rng, n, 1 + rng() % 4, std::min<std::size_t>(n, 4));
            for (auto wide : {WideClauseStrategy::Cascade, WideClauseStrategy::Direct}) {
                for (auto kick : {KickbackStyle::SeparateAncilla, KickbackStyle::DirectPhase}) {
                    CompileOptions o;
                    o.wide_clause_strategy = wide;
                    o.kickback_style = kick;
                    expect_phase_oracle(f, o);
                }
            }
            ++cases;
        }
    }
    EXPECT_GE(cases, 500U);
}

TEST(OracleProperties, KickbackIsPhaseOracleForAllBooleanFunctions) {
    // Every Boolean function on <= 3 variables except the constant-true one
    // (which has no clauses), realized as the CNF of its zeros.
    std::size_t functions = 0;
    for (std::size_t n = 1; n <= 3; ++n) {
        const std::size_t rows = std::size_t{1} << n;
        std::vector<std::string> names;
        for (std::size_t v = 0; v < n; ++v) {
            names.push_back(std::string(1, static_cast<char>('a' + v)));
        }
        for (std::uint64_t truth = 0; truth + 1 < (std::uint64_t{1} << rows); ++truth) {
            std::vector<Clause> clauses;
            for (std::uint64_t x = 0; x < rows; ++x) {
                if (((truth >> x) & 1U) == 0) {
                    Clause c;
                    for (std::size_t v = 0; v < n; ++v) {
                        c.literals.push_back({v, ((x >> v) & 1U) != 0});
                    }
                    clauses.push_back(std::move(c));
                }
            }
            const CnfFormula f(names, clauses);
            for (std::uint64_t x = 0; x < rows; ++x) {
                ASSERT_EQ(oracle::truth_table(f)[x], ((truth >> x) & 1U) != 0);
            }
            expect_phase_oracle(f, {});
            expect_phase_oracle(f, direct_phase());
            ++functions;
        }
    }
    EXPECT_EQ(functions, 3U + 15U + 255U);
}

TEST(Diffusion, MatrixIsInversionAboutAverage) {
    for (std::size_t n = 1; n <= 4; ++n) {
        const Circuit d = compile_diffusion(n);
        const std::size_t dim = std::size_t{1} << n;
        std::vector<std::vector<Complex>> m(dim, std::vector<Complex>(dim));
        for (std::size_t j = 0; j < dim; ++j) {
            const auto col = simulate(StateVector::basis(n, j), d);
            for (std::size_t i = 0; i < dim; ++i) {
                m[i][j] = col[i];
            }
        }
        auto ideal = [&](std::size_t i, std::size_t j) {
            return 2.0 / static_cast<double>(dim) - (i == j ? 1.0 : 0.0);
        };
        // Fix the global phase from the largest ideal entry.
        const std::size_t pi = 0, pj = n == 1 ? 1 : 0;
        const Complex phase = m[pi][pj] / ideal(pi, pj);
        EXPECT_NEAR(std::abs(phase), 1.0, 1e-12);
        for (std::size_t i = 0; i < dim; ++i) {
            for (std::size_t j = 0; j < dim; ++j) {
                EXPECT_NEAR(std::abs(m[i][j] - phase * ideal(i, j)), 0.0, 1e-12) << n;
            }
        }
    }
}

TEST(Diffusion, TwoVariableGateSequence) {
    const Circuit d = compile_diffusion(2);
    ASSERT_EQ(d.size(), 9U);
    EXPECT_EQ(d.gates()[4], Gate::mcz({{0, P}}, 1));
    EXPECT_THROW((void)compile_diffusion(0), InvalidArgument);
}

TEST(Diffusion, UniformStateIsFixed) {
    for (std::size_t n = 2; n <= 4; ++n) {
        const auto u = uniform_state(n);
        const auto out = simulate(u, compile_diffusion(n));
        const Complex phase = out[0] / u[0];
        for (std::size_t i = 0; i < u.dimension(); ++i) {
            EXPECT_NEAR(std::abs(out[i] - phase * u[i]), 0.0, 1e-12);
        }
    }
}

TEST(GroverIterations, Values) {
    EXPECT_EQ(grover_iterations(1), 1U);
    EXPECT_EQ(grover_iterations(2), 1U);
    EXPECT_EQ(grover_iterations(3), 2U);
    EXPECT_EQ(grover_iterations(4), 3U);
    EXPECT_THROW((void)grover_iterations(0), InvalidArgument);
}

TEST(GroverIterations, MatchesFirstProbabilityMaximum) {
    for (std::size_t n = 2; n <= 10; ++n) {
        std::size_t best = 0;
        for (std::size_t k = 1; k < 100; ++k) {
            if (oracle::closed_form_grover_probability(n, k) <
                oracle::closed_form_grover_probability(n, best)) {
                break;
            }
            best = k;
        }
        EXPECT_EQ(grover_iterations(n), best) << n;
    }
}

TEST(Compile, PlansForFixtures) {
    const auto p2 = compile(parse_infix(kTwoVar));
    EXPECT_EQ(p2.register_size, 6U);
    EXPECT_EQ(p2.iteration_count, 1U);
    ASSERT_TRUE(p2.target_hint);
    EXPECT_EQ(p2.target_hint->to_index(), 0b01U);  // a=1 b=0
    EXPECT_EQ(compile(parse_infix(kThreeVar2Sat)).register_size, 7U);
    EXPECT_EQ(compile(parse_infix(kThreeVar3Sat)).register_size, 9U);
    EXPECT_EQ(compile(parse_infix(kThreeVar3Sat)).iteration_count, 2U);
}

TEST(Compile, StageMetadata) {
    CompileOptions o;
    o.iterations = 3;
    const auto plan = compile(parse_infix(kTwoVar), o);
    std::size_t diffusions = 0;
    std::size_t prev_end = 0;
    for (const auto &s : plan.circuit.stages()) {
        EXPECT_EQ(s.begin, prev_end);
        prev_end = s.end;
        diffusions += s.stage == Stage::Diffusion ? 1 : 0;
    }
    EXPECT_EQ(prev_end, plan.circuit.size());
    EXPECT_EQ(diffusions, 3U);
    EXPECT_EQ(plan.iteration_count, 3U);
}

TEST(Compile, Errors) {
    CompileOptions zero;
    zero.iterations = 0;
    EXPECT_THROW((void)compile(parse_infix(kTwoVar), zero), InvalidArgument);
    CompileOptions tiny;
    tiny.max_qubits = 5;
    EXPECT_THROW((void)compile(parse_infix(kTwoVar), tiny), ResourceLimitError);
    EXPECT_THROW((void)compile(CnfFormula({"a"}, {})), InvalidArgument);
}

TEST(Compile, ForceCompilesMultipleSolutionFormula) {
    CompileOptions o;
    o.force = true;
    const auto plan = compile(parse_infix("a|b"), o);
    EXPECT_FALSE(plan.target_hint);
    EXPECT_TRUE(std::holds_alternative<MultipleSolutions>(plan.classification));
}

TEST(CompileProperties, AncillasDecoupledAfterEveryOracleBlock) {
    for (const char *expr : {kTwoVar, kThreeVar2Sat, kThreeVar3Sat}) {
        for (auto kick : {KickbackStyle::SeparateAncilla, KickbackStyle::DirectPhase}) {
            CompileOptions o;
            o.kickback_style = kick;
            o.iterations = 4;
            const auto plan = compile(parse_infix(expr), o);
            StateVector s(plan.register_size);
            std::size_t checked = 0;
            for (const auto &span : plan.circuit.stages()) {
                for (std::size_t i = span.begin; i < span.end; ++i) {
                    apply(s, plan.circuit.gates()[i]);
                }
                if (span.stage == Stage::Uncompute) {
                    EXPECT_LT(measure_variables(s, plan).ancilla_residual, 1e-20) << expr;
                    ++checked;
                }
            }
            EXPECT_EQ(checked, 4U);
        }
    }
}

TEST(CompileProperties, KickbackStylesAgreeAndArgmaxIsSolution) {
    for (const char *expr : {kTwoVar, kThreeVar2Sat, kThreeVar3Sat}) {
        const auto f = parse_infix(expr);
        const auto sep = compile(f);
        const auto dir = compile(f, direct_phase());
        const auto ms = measure_variables(simulate(StateVector(sep.register_size), sep.circuit), sep);
        const auto md = measure_variables(simulate(StateVector(dir.register_size), dir.circuit), dir);
        for (std::size_t x = 0; x < ms.probabilities.size(); ++x) {
            EXPECT_NEAR(ms.probabilities[x], md.probabilities[x], 1e-12);
        }
        EXPECT_EQ(ms.argmax, sep.target_hint->to_index());
        EXPECT_EQ(md.argmax, sep.target_hint->to_index());
    }
}

TEST(CompileProperties, ThreeVariableSuccessProbabilities) {
    for (const char *expr : {kThreeVar2Sat, kThreeVar3Sat}) {
        for (std::size_t k : {1U, 2U}) {
            CompileOptions o;
            o.iterations = k;
            const auto plan = compile(parse_infix(expr), o);
            const auto m = measure_variables(simulate(StateVector(plan.register_size), plan.circuit), plan);
            EXPECT_NEAR(m.probabilities[plan.target_hint->to_index()], k == 1 ? 0.78125 : 0.9453125, 1e-9);
        }
    }
}
