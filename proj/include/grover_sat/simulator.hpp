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
 * Exact dense statevector simulation of the circuit IR.
 *
 * Basis convention: qubit 0 is the least significant bit of the basis index.
 */
#pragma once

#include "circuit.hpp"
#include "errors.hpp"

#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace grover_sat {

using Complex = std::complex<double>;

inline constexpr std::size_t kDefaultMaxQubits = 24;

class StateVector {
  public:
    /// |0...0> on `qubits` qubits.
    explicit StateVector(std::size_t qubits, std::size_t max_qubits = kDefaultMaxQubits)
        : qubits_(qubits) {
        if (qubits > max_qubits || qubits >= 63) {
            throw ResourceLimitError("state of " + std::to_string(qubits) +
                                     " qubits exceeds the simulator bound of " +
                                     std::to_string(max_qubits));
        }
        amplitudes_.assign(std::size_t{1} << qubits, Complex{0.0, 0.0});
        amplitudes_[0] = 1.0;
    }

    /// Takes ownership of raw amplitudes; size must be a power of two.
    [[nodiscard]] static StateVector from_amplitudes(std::vector<Complex> amps) {
        const std::size_t n = amps.size();
        if (n == 0 || (n & (n - 1)) != 0) {
            throw InvalidArgument("amplitude count must be a power of two");
        }
        StateVector s;
        s.qubits_ = static_cast<std::size_t>(std::countr_zero(n));
        s.amplitudes_ = std::move(amps);
        return s;
    }

    /// |index> on `qubits` qubits.
    [[nodiscard]] static StateVector basis(std::size_t qubits, std::uint64_t index) {
        StateVector s(qubits, 62);
        if (index >= s.dimension()) {
            throw InvalidArgument("basis index out of range");
        }
        s.amplitudes_[0] = 0.0;
        s.amplitudes_[index] = 1.0;
        return s;
    }

    [[nodiscard]] std::size_t qubit_count() const noexcept { return qubits_; }
    [[nodiscard]] std::size_t dimension() const noexcept { return amplitudes_.size(); }
    [[nodiscard]] std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }
    [[nodiscard]] std::span<Complex> amplitudes() noexcept { return amplitudes_; }
    [[nodiscard]] Complex operator[](std::size_t i) const { return amplitudes_[i]; }

    [[nodiscard]] double norm_squared() const noexcept {
        return std::accumulate(amplitudes_.begin(), amplitudes_.end(), 0.0,
                               [](double acc, const Complex &a) { return acc + std::norm(a); });
    }

  private:
    StateVector() = default;

    std::size_t qubits_ = 0;
    std::vector<Complex> amplitudes_;
};

/// Equal superposition over all 2^q basis states, 1 <= q <= max_qubits.
[[nodiscard]] inline StateVector uniform_state(std::size_t q,
                                               std::size_t max_qubits = kDefaultMaxQubits) {
    if (q < 1) {
        throw InvalidArgument("uniform_state needs at least one qubit");
    }
    StateVector s(q, max_qubits);
    const double amp = std::pow(2.0, -0.5 * static_cast<double>(q));
    for (auto &a : s.amplitudes()) {
        a = amp;
    }
    return s;
}

/// In-place gate application.
inline void apply(StateVector &s, const Gate &g) {
    validate_gate(g, s.qubit_count());
    auto amps = s.amplitudes();
    const std::uint64_t dim = s.dimension();
    const std::uint64_t tbit = std::uint64_t{1} << g.target;

    std::uint64_t ctrl_mask = 0;
    std::uint64_t ctrl_value = 0;
    for (const auto &c : g.controls) {
        ctrl_mask |= std::uint64_t{1} << c.qubit;
        if (c.polarity == Polarity::Positive) {
            ctrl_value |= std::uint64_t{1} << c.qubit;
        }
    }

    switch (g.kind) {
    case GateKind::PauliX:
    case GateKind::MultiControlledX:
        for (std::uint64_t i = 0; i < dim; ++i) {
            if ((i & tbit) == 0 && (i & ctrl_mask) == ctrl_value) {
                std::swap(amps[i], amps[i | tbit]);
            }
        }
        break;
    case GateKind::Hadamard: {
        const double r = 1.0 / std::sqrt(2.0);
        for (std::uint64_t i = 0; i < dim; ++i) {
            if ((i & tbit) == 0) {
                const Complex a0 = amps[i];
                const Complex a1 = amps[i | tbit];
                amps[i] = r * (a0 + a1);
                amps[i | tbit] = r * (a0 - a1);
            }
        }
        break;
    }
    case GateKind::MultiControlledZ:
        for (std::uint64_t i = 0; i < dim; ++i) {
            if ((i & tbit) != 0 && (i & ctrl_mask) == ctrl_value) {
                amps[i] = -amps[i];
            }
        }
        break;
    }
}

[[nodiscard]] inline StateVector applied(StateVector s, const Gate &g) {
    apply(s, g);
    return s;
}

/// Sequential application of every gate of `c`.
inline void run(StateVector &s, const Circuit &c) {
    if (s.qubit_count() != c.qubit_count()) {
        throw InvalidArgument("state has " + std::to_string(s.qubit_count()) +
                              " qubits but circuit has " + std::to_string(c.qubit_count()));
    }
    for (const auto &g : c.gates()) {
        apply(s, g);
    }
}

/// Value-returning form of run().
[[nodiscard]] inline StateVector simulate(StateVector s, const Circuit &c) {
    run(s, c);
    return s;
}

/// Marginals over the variable register.
struct MeasurementReport {
    std::vector<double> probabilities;  // indexed by packed variable assignment
    std::uint64_t argmax = 0;
    double ancilla_residual = 0.0;      // mass with any scratch qubit != 0
};

[[nodiscard]] inline MeasurementReport measure_variables(const StateVector &s,
                                                         std::span<const QubitRole> roles) {
    if (roles.size() != s.qubit_count()) {
        throw InvalidArgument("role table does not match state size");
    }
    std::vector<std::size_t> var_qubits;
    std::uint64_t scratch_mask = 0;
    for (std::size_t q = 0; q < roles.size(); ++q) {
        if (roles[q].kind == RoleKind::Variable) {
            var_qubits.push_back(q);
        } else if (roles[q].is_scratch()) {
            scratch_mask |= std::uint64_t{1} << q;
        }
    }

    MeasurementReport report;
    report.probabilities.assign(std::size_t{1} << var_qubits.size(), 0.0);
    const auto amps = s.amplitudes();
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        const double p = std::norm(amps[i]);
        if (p == 0.0) {
            continue;
        }
        std::uint64_t packed = 0;
        for (std::size_t v = 0; v < var_qubits.size(); ++v) {
            packed |= ((i >> var_qubits[v]) & 1U) << v;
        }
        report.probabilities[packed] += p;
        if ((i & scratch_mask) != 0) {
            report.ancilla_residual += p;
        }
    }
    for (std::uint64_t k = 1; k < report.probabilities.size(); ++k) {
        if (report.probabilities[k] > report.probabilities[report.argmax]) {
            report.argmax = k;
        }
    }
    return report;
}

struct AmplitudeEntry {
    std::uint64_t index = 0;
    Complex amplitude;
};

/// Non-negligible amplitudes (|a| >= threshold), in basis order.
[[nodiscard]] inline std::vector<AmplitudeEntry> nonzero_amplitudes(const StateVector &s,
                                                                    double threshold = 1e-14) {
    std::vector<AmplitudeEntry> out;
    const auto amps = s.amplitudes();
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        if (std::abs(amps[i]) >= threshold) {
            out.push_back({i, amps[i]});
        }
    }
    return out;
}

/// One "<index> <real> <imag>" line per amplitude above 1e-14.
[[nodiscard]] inline std::string dump_state(const StateVector &s) {
    std::string out;
    char buf[96];
    for (const auto &e : nonzero_amplitudes(s)) {
        std::snprintf(buf, sizeof buf, "%llu %.17g %.17g\n",
                      static_cast<unsigned long long>(e.index), e.amplitude.real(),
                      e.amplitude.imag());
        out += buf;
    }
    return out;
}

} // namespace grover_sat
