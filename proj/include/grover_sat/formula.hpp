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
 * CNF formulas: representation, infix and DIMACS parsing, evaluation and
 * exhaustive classification. The brute-force classifier is the reference
 * every compiled circuit is checked against.
 */
#pragma once

#include "errors.hpp"

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

namespace grover_sat {

struct Literal {
    std::size_t variable = 0;
    bool negated = false;

    [[nodiscard]] bool satisfied_by(bool value) const noexcept {
        return value != negated;
    }

    friend bool operator==(const Literal &, const Literal &) = default;
};

struct Clause {
    std::vector<Literal> literals;

    [[nodiscard]] std::size_t width() const noexcept { return literals.size(); }

    friend bool operator==(const Clause &, const Clause &) = default;
};

/**
 * Bit per variable, in variable-table order. Variable i maps to bit i of
 * the packed index, which is also the qubit-0-is-LSB basis convention used
 * by the simulator.
 */
struct Assignment {
    std::vector<bool> values;

    [[nodiscard]] std::size_t size() const noexcept { return values.size(); }

    [[nodiscard]] static Assignment from_index(std::size_t nvars,
                                               std::uint64_t index) {
        Assignment a;
        a.values.resize(nvars);
        for (std::size_t i = 0; i < nvars; ++i) {
            a.values[i] = ((index >> i) & 1U) != 0;
        }
        return a;
    }

    [[nodiscard]] std::uint64_t to_index() const noexcept {
        std::uint64_t index = 0;
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (values[i]) {
                index |= std::uint64_t{1} << i;
            }
        }
        return index;
    }

    friend bool operator==(const Assignment &, const Assignment &) = default;
};

class CnfFormula {
  public:
    CnfFormula() = default;

    /// Validates every invariant; throws InvalidArgument on violation.
    CnfFormula(std::vector<std::string> variables, std::vector<Clause> clauses)
        : variables_(std::move(variables)), clauses_(std::move(clauses)) {
        validate();
    }

    [[nodiscard]] const std::vector<std::string> &variables() const noexcept {
        return variables_;
    }
    [[nodiscard]] const std::vector<Clause> &clauses() const noexcept {
        return clauses_;
    }
    [[nodiscard]] std::size_t variable_count() const noexcept {
        return variables_.size();
    }
    [[nodiscard]] std::size_t clause_count() const noexcept {
        return clauses_.size();
    }
    /// K: the widest clause (0 for the empty formula).
    [[nodiscard]] std::size_t max_width() const noexcept {
        std::size_t k = 0;
        for (const auto &c : clauses_) {
            k = std::max(k, c.width());
        }
        return k;
    }

    /// Same variable count and clause structure; names are ignored.
    [[nodiscard]] bool structurally_equal(const CnfFormula &other) const {
        return variables_.size() == other.variables_.size() &&
               clauses_ == other.clauses_;
    }

    friend bool operator==(const CnfFormula &, const CnfFormula &) = default;

  private:
    void validate() const {
        std::unordered_map<std::string_view, std::size_t> seen;
        for (std::size_t i = 0; i < variables_.size(); ++i) {
            if (!seen.emplace(variables_[i], i).second) {
                throw InvalidArgument("duplicate variable name '" +
                                      variables_[i] + "'");
            }
        }
        for (std::size_t ci = 0; ci < clauses_.size(); ++ci) {
            const auto &lits = clauses_[ci].literals;
            if (lits.empty()) {
                throw InvalidArgument("clause " + std::to_string(ci) +
                                      " is empty");
            }
            for (std::size_t i = 0; i < lits.size(); ++i) {
                if (lits[i].variable >= variables_.size()) {
                    throw InvalidArgument(
                        "clause " + std::to_string(ci) +
                        " references unknown variable index " +
                        std::to_string(lits[i].variable));
                }
                for (std::size_t j = 0; j < i; ++j) {
                    if (lits[j].variable == lits[i].variable) {
                        throw InvalidArgument(
                            "clause " + std::to_string(ci) +
                            " mentions variable '" +
                            variables_[lits[i].variable] + "' twice");
                    }
                }
            }
        }
    }

    std::vector<std::string> variables_;
    std::vector<Clause> clauses_;
};

namespace detail {

// Recursive-descent parser for the infix surface syntax:
//   formula := term ('&' term)*
//   term    := '(' disj ')' | disj
//   disj    := literal ('|' literal)*
//   literal := '~'* identifier
class InfixParser {
  public:
    explicit InfixParser(std::string_view text) : text_(text) {}

    CnfFormula parse() {
        std::vector<Clause> clauses;
        clauses.push_back(term());
        skip_ws();
        while (peek() == '&') {
            ++pos_;
            clauses.push_back(term());
            skip_ws();
        }
        if (pos_ != text_.size()) {
            fail(std::string("unexpected character '") + text_[pos_] + "'");
        }
        return CnfFormula(std::move(names_), std::move(clauses));
    }

  private:
    Clause term() {
        skip_ws();
        if (peek() == '(') {
            ++pos_;
            Clause c = disjunction();
            skip_ws();
            if (peek() != ')') {
                fail("expected ')'");
            }
            ++pos_;
            return c;
        }
        return disjunction();
    }

    Clause disjunction() {
        const std::size_t start = pos_;
        Clause c;
        add_literal(c, start);
        skip_ws();
        while (peek() == '|') {
            ++pos_;
            add_literal(c, pos_);
            skip_ws();
        }
        return c;
    }

    void add_literal(Clause &c, std::size_t clause_start) {
        skip_ws();
        const std::size_t lit_start = pos_;
        bool negated = false;
        while (peek() == '~') {
            negated = !negated;
            ++pos_;
            skip_ws();
        }
        if (pos_ >= text_.size()) {
            fail(clause_start == lit_start && c.literals.empty()
                     ? "empty clause"
                     : "expected variable name");
        }
        const char first = text_[pos_];
        if (!(std::isalpha(static_cast<unsigned char>(first)) || first == '_')) {
            fail(first == ')' ? "empty clause" : "expected variable name");
        }
        const std::size_t name_start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                text_[pos_] == '_')) {
            ++pos_;
        }
        const std::string name(text_.substr(name_start, pos_ - name_start));
        auto [it, inserted] = index_.emplace(name, names_.size());
        if (inserted) {
            names_.push_back(name);
        }
        const Literal lit{it->second, negated};
        for (const auto &other : c.literals) {
            if (other.variable == lit.variable) {
                throw ParseError(other.negated == lit.negated
                                     ? "duplicate literal '" + name + "' in clause"
                                     : "complementary literals on '" + name +
                                           "' in clause",
                                 lit_start);
            }
        }
        c.literals.push_back(lit);
    }

    void skip_ws() {
        while (pos_ < text_.size() &&
               std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    [[nodiscard]] char peek() const {
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    [[noreturn]] void fail(const std::string &message) const {
        throw ParseError(message, pos_);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::vector<std::string> names_;
    std::unordered_map<std::string, std::size_t> index_;
};

} // namespace detail

/// Parses e.g. "(~a|~b)&(a|b)&a". Variables are numbered by first appearance.
[[nodiscard]] inline CnfFormula parse_infix(std::string_view text) {
    return detail::InfixParser(text).parse();
}

/**
 * Parses DIMACS CNF. Variable i is named "x<i>". The header counts must match
 * the body exactly; duplicate and complementary literals inside a clause are
 * rejected for the same reason as in the infix syntax.
 */
[[nodiscard]] inline CnfFormula parse_dimacs(std::string_view text) {
    std::optional<std::size_t> nvars;
    std::size_t declared_clauses = 0;
    std::vector<Clause> clauses;
    Clause current;
    std::size_t current_start = 0;

    std::size_t line_start = 0;
    while (line_start <= text.size()) {
        std::size_t line_end = text.find('\n', line_start);
        if (line_end == std::string_view::npos) {
            line_end = text.size();
        }
        const std::string_view line = text.substr(line_start, line_end - line_start);

        std::size_t p = 0;
        while (p < line.size() && std::isspace(static_cast<unsigned char>(line[p]))) {
            ++p;
        }
        if (p < line.size() && line[p] != 'c') {
            if (line[p] == 'p') {
                if (nvars) {
                    throw ParseError("duplicate problem line", line_start + p);
                }
                std::istringstream header{std::string(line.substr(p))};
                std::string tag;
                std::string fmt;
                long long nv = -1;
                long long nc = -1;
                std::string extra;
                if (!(header >> tag >> fmt >> nv >> nc) || tag != "p" ||
                    fmt != "cnf" || nv < 0 || nc < 0 || (header >> extra)) {
                    throw ParseError("malformed problem line", line_start + p);
                }
                nvars = static_cast<std::size_t>(nv);
                declared_clauses = static_cast<std::size_t>(nc);
            } else {
                if (!nvars) {
                    throw ParseError("clause before problem line", line_start + p);
                }
                while (p < line.size()) {
                    while (p < line.size() &&
                           std::isspace(static_cast<unsigned char>(line[p]))) {
                        ++p;
                    }
                    if (p >= line.size()) {
                        break;
                    }
                    const std::size_t tok_start = p;
                    while (p < line.size() &&
                           !std::isspace(static_cast<unsigned char>(line[p]))) {
                        ++p;
                    }
                    const std::string token(line.substr(tok_start, p - tok_start));
                    const std::size_t offset = line_start + tok_start;
                    long long value = 0;
                    std::size_t used = 0;
                    try {
                        value = std::stoll(token, &used);
                    } catch (const std::exception &) {
                        used = 0;
                    }
                    if (used != token.size()) {
                        throw ParseError("invalid literal '" + token + "'", offset);
                    }
                    if (current.literals.empty()) {
                        current_start = offset;
                    }
                    if (value == 0) {
                        if (current.literals.empty()) {
                            throw ParseError("zero-length clause", offset);
                        }
                        clauses.push_back(std::move(current));
                        current = Clause{};
                        continue;
                    }
                    const auto magnitude =
                        static_cast<std::size_t>(value < 0 ? -value : value);
                    if (magnitude > *nvars) {
                        throw ParseError("variable " + std::to_string(magnitude) +
                                             " out of range",
                                         offset);
                    }
                    const Literal lit{magnitude - 1, value < 0};
                    for (const auto &other : current.literals) {
                        if (other.variable == lit.variable) {
                            throw ParseError(
                                other.negated == lit.negated
                                    ? "duplicate literal in clause"
                                    : "complementary literals in clause",
                                offset);
                        }
                    }
                    current.literals.push_back(lit);
                }
            }
        }
        line_start = line_end + 1;
    }

    if (!nvars) {
        throw ParseError("missing problem line", text.size());
    }
    if (!current.literals.empty()) {
        throw ParseError("unterminated clause", current_start);
    }
    if (clauses.size() != declared_clauses) {
        throw ParseError("header declares " + std::to_string(declared_clauses) +
                             " clauses but found " + std::to_string(clauses.size()),
                         text.size());
    }
    std::vector<std::string> names;
    names.reserve(*nvars);
    for (std::size_t i = 1; i <= *nvars; ++i) {
        names.push_back("x" + std::to_string(i));
    }
    return CnfFormula(std::move(names), std::move(clauses));
}

[[nodiscard]] inline std::string emit_dimacs(const CnfFormula &f) {
    std::string out = "p cnf " + std::to_string(f.variable_count()) + " " +
                      std::to_string(f.clause_count()) + "\n";
    for (const auto &clause : f.clauses()) {
        for (const auto &lit : clause.literals) {
            if (lit.negated) {
                out += '-';
            }
            out += std::to_string(lit.variable + 1);
            out += ' ';
        }
        out += "0\n";
    }
    return out;
}

/// Infix rendering; parse_infix(to_infix(f)) == f.
[[nodiscard]] inline std::string to_infix(const CnfFormula &f) {
    std::string out;
    for (std::size_t ci = 0; ci < f.clause_count(); ++ci) {
        if (ci != 0) {
            out += '&';
        }
        const auto &lits = f.clauses()[ci].literals;
        if (lits.size() > 1) {
            out += '(';
        }
        for (std::size_t i = 0; i < lits.size(); ++i) {
            if (i != 0) {
                out += '|';
            }
            if (lits[i].negated) {
                out += '~';
            }
            out += f.variables()[lits[i].variable];
        }
        if (lits.size() > 1) {
            out += ')';
        }
    }
    return out;
}

/// Conjunction of disjunctions; the empty formula is vacuously true.
[[nodiscard]] inline bool evaluate(const CnfFormula &f, const Assignment &x) {
    if (x.size() != f.variable_count()) {
        throw InvalidArgument("assignment has " + std::to_string(x.size()) +
                              " values, formula has " +
                              std::to_string(f.variable_count()) + " variables");
    }
    return std::all_of(f.clauses().begin(), f.clauses().end(), [&](const Clause &c) {
        return std::any_of(c.literals.begin(), c.literals.end(), [&](const Literal &l) {
            return l.satisfied_by(x.values[l.variable]);
        });
    });
}

struct Unsatisfiable {
    friend bool operator==(const Unsatisfiable &, const Unsatisfiable &) = default;
};

struct UniqueSolution {
    Assignment solution;
    friend bool operator==(const UniqueSolution &, const UniqueSolution &) = default;
};

/// `count` is exact; `solutions` holds at most the classifier's listing cap.
struct MultipleSolutions {
    std::uint64_t count = 0;
    std::vector<Assignment> solutions;
    friend bool operator==(const MultipleSolutions &, const MultipleSolutions &) = default;
};

using SatClassification = std::variant<Unsatisfiable, UniqueSolution, MultipleSolutions>;

[[nodiscard]] inline std::string_view classification_name(const SatClassification &c) {
    switch (c.index()) {
    case 0:
        return "unsatisfiable";
    case 1:
        return "unique";
    default:
        return "multiple";
    }
}

struct ClassifyLimits {
    std::size_t max_variables = 24;
    std::size_t max_listed_solutions = 16;
};

/// Exhaustive enumeration of all 2^n assignments.
[[nodiscard]] inline SatClassification classify(const CnfFormula &f,
                                                ClassifyLimits limits = {}) {
    const std::size_t n = f.variable_count();
    if (n > limits.max_variables || n >= 64) {
        throw ResourceLimitError("formula has " + std::to_string(n) +
                                 " variables; brute-force bound is " +
                                 std::to_string(limits.max_variables));
    }
    // Precompute per-clause masks so the inner loop is two ANDs per clause.
    struct Masks {
        std::uint64_t positive = 0;
        std::uint64_t negative = 0;
    };
    std::vector<Masks> masks;
    masks.reserve(f.clause_count());
    for (const auto &c : f.clauses()) {
        Masks m;
        for (const auto &l : c.literals) {
            (l.negated ? m.negative : m.positive) |= std::uint64_t{1} << l.variable;
        }
        masks.push_back(m);
    }

    std::uint64_t count = 0;
    std::vector<Assignment> listed;
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t x = 0; x < total; ++x) {
        const bool sat = std::all_of(masks.begin(), masks.end(), [x](const Masks &m) {
            return (x & m.positive) != 0 || (~x & m.negative) != 0;
        });
        if (sat) {
            ++count;
            if (listed.size() < std::max<std::size_t>(limits.max_listed_solutions, 2)) {
                listed.push_back(Assignment::from_index(n, x));
            }
        }
    }
    if (count == 0) {
        return Unsatisfiable{};
    }
    if (count == 1) {
        return UniqueSolution{std::move(listed.front())};
    }
    return MultipleSolutions{count, std::move(listed)};
}

/// "a=1 b=0" style rendering.
[[nodiscard]] inline std::string format_assignment(const CnfFormula &f,
                                                   const Assignment &x) {
    std::string out;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (i != 0) {
            out += ' ';
        }
        out += f.variables()[i];
        out += x.values[i] ? "=1" : "=0";
    }
    return out;
}

} // namespace grover_sat
