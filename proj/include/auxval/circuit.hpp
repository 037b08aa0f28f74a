// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef AUXVAL_CIRCUIT_HPP
#define AUXVAL_CIRCUIT_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace auxval {

using QubitId = std::uint32_t;
using GateId = std::uint32_t;

enum class QubitRole { Data, Auxiliary };

struct Qubit {
    QubitId id = 0;
    QubitRole role = QubitRole::Data;

    bool operator==(const Qubit &) const = default;
};

struct Gate {
    GateId id = 0;
    /// Opaque; only the "_inv" suffix is interpreted (by the uncomputation check).
    std::string label;
    std::vector<QubitId> operands;
    std::optional<std::int64_t> block;

    bool operator==(const Gate &) const = default;
};

enum class MeasureKind { MidCircuit, Final };

/// A location on an auxiliary qubit, either measured or merely a reset candidate.
/// `after_gate` is empty for the position before every gate.
struct MeasurementPoint {
    std::uint32_t id = 0;
    QubitId qubit = 0;
    std::optional<GateId> after_gate;
    MeasureKind kind = MeasureKind::MidCircuit;

    bool operator==(const MeasurementPoint &) const = default;
};

/// Raised for malformed circuit text. `line()` is 1-based.
class ParseError : public std::runtime_error {
  public:
    ParseError(std::size_t line, const std::string &what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {
    }
    std::size_t line() const { return line_; }

  private:
    std::size_t line_;
};

/// Raised when circuit contents violate a structural invariant.
class CircuitError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// An immutable, validated circuit: qubits with roles, a strict total order of gates,
/// active validation measurements and structural reset candidates.
///
/// Measurements are kept sorted by position (ties by id); that order defines the index
/// i of each outcome m_i everywhere else in the library.
class Circuit {
  public:
    Circuit() = default;
    Circuit(std::vector<Qubit> qubits, std::vector<Gate> gates,
            std::vector<MeasurementPoint> measurements, std::vector<MeasurementPoint> candidate_resets);

    const std::vector<Qubit> &qubits() const { return qubits_; }
    const std::vector<Gate> &gates() const { return gates_; }
    const std::vector<MeasurementPoint> &measurements() const { return measurements_; }
    const std::vector<MeasurementPoint> &candidate_resets() const { return candidates_; }

    std::size_t num_qubits() const { return qubits_.size(); }
    std::size_t num_gates() const { return gates_.size(); }

    /// Index of a gate in program order. Throws CircuitError for unknown ids.
    std::size_t position_of(GateId id) const;
    bool has_gate(GateId id) const { return gate_pos_.contains(id); }

    /// Number of gates executed before `point` is reached.
    std::size_t gates_before(const MeasurementPoint &point) const;

    /// Same circuit with a different active measurement set (ids renumbered 1..k).
    Circuit with_measurements(std::vector<MeasurementPoint> measurements) const;

    bool operator==(const Circuit &other) const {
        return qubits_ == other.qubits_ && gates_ == other.gates_ &&
               measurements_ == other.measurements_ && candidates_ == other.candidates_;
    }

  private:
    std::vector<Qubit> qubits_;
    std::vector<Gate> gates_;
    std::vector<MeasurementPoint> measurements_;
    std::vector<MeasurementPoint> candidates_;
    std::unordered_map<GateId, std::size_t> gate_pos_;
};

Circuit parse_circuit(std::string_view text);
std::string serialize_circuit(const Circuit &c);

Circuit load_circuit_file(const std::string &path);
void save_circuit_file(const Circuit &c, const std::string &path);

enum class BlockVerdict { Pass, Fail };

struct BlockCheck {
    std::int64_t block = 0;
    BlockVerdict verdict = BlockVerdict::Fail;
    std::string reason;  // empty on Pass
};

/// Label of the structural inverse: "x" <-> "x_inv".
std::string inverse_label(std::string_view label);

/// Structural compute/uncompute check per block, in order of first appearance.
///
/// A block passes iff its gates read F followed by the mirror of F (reverse order,
/// operands unchanged, labels inverted) and every auxiliary it touches has a reset
/// candidate right after the block's last gate. Throws CircuitError if any gate has no
/// block id.
std::vector<BlockCheck> check_uncomputation_structure(const Circuit &c);

}  // namespace auxval

#endif  // AUXVAL_CIRCUIT_HPP
