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

#ifndef AUXVAL_GENERATOR_HPP
#define AUXVAL_GENERATOR_HPP

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "auxval/circuit.hpp"

namespace auxval {

enum class AuxReuse { ReuseAcrossBlocks, FreshPerBlock };

std::string_view aux_reuse_name(AuxReuse r);  // "across" | "fresh"
AuxReuse parse_aux_reuse(std::string_view name);

struct GeneratorConfig {
    std::size_t n_blocks = 4;
    std::size_t data_qubits = 6;
    std::size_t aux_qubits = 3;
    std::size_t gates_per_block_half = 20;
    AuxReuse aux_reuse = AuxReuse::ReuseAcrossBlocks;
    std::uint64_t seed = 0;

    /// Auxiliaries allocated to each block.
    std::size_t aux_per_block() const;
    /// Data qubits each block works on (a seeded subset of this size).
    std::size_t data_per_block() const;
    /// Throws std::invalid_argument for zero counts or too few fresh auxiliaries.
    void validate() const;

    bool operator==(const GeneratorConfig &) const = default;
};

/// Synthetic compute/uncompute circuit.
///
/// Qubits 0..D-1 are data, D..D+A-1 auxiliary. Block b is H forward gates "g<b>_<j>"
/// followed by their mirror "g<b>_<j>_inv". Forward gate j touches auxiliary j mod u and
/// data qubit j mod w of the block, and shares at least one operand with gate j-1, so
/// every block qubit is causally connected. Each touched auxiliary gets a reset
/// candidate after its block; the last block's candidates, and one per remaining touched
/// auxiliary at the circuit end, are Final. Every candidate is also measured.
Circuit generate(const GeneratorConfig &cfg);

/// Block index -> sorted data qubits it uses. Same seeded choice as generate().
std::vector<std::vector<QubitId>> block_data_qubits(const GeneratorConfig &cfg);

}  // namespace auxval

#endif  // AUXVAL_GENERATOR_HPP
