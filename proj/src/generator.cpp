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

#include "auxval/generator.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

#include "auxval/rng.hpp"

namespace auxval {

std::string_view aux_reuse_name(AuxReuse r) {
    return r == AuxReuse::ReuseAcrossBlocks ? "across" : "fresh";
}

AuxReuse parse_aux_reuse(std::string_view name) {
    if (name == "across") {
        return AuxReuse::ReuseAcrossBlocks;
    }
    if (name == "fresh") {
        return AuxReuse::FreshPerBlock;
    }
    throw std::invalid_argument("unknown reuse mode '" + std::string(name) + "' (expected across|fresh)");
}

std::size_t GeneratorConfig::aux_per_block() const {
    return aux_reuse == AuxReuse::ReuseAcrossBlocks ? aux_qubits : aux_qubits / std::max<std::size_t>(n_blocks, 1);
}

std::size_t GeneratorConfig::data_per_block() const { return (data_qubits + 1) / 2; }

void GeneratorConfig::validate() const {
    if (n_blocks == 0 || data_qubits == 0 || aux_qubits == 0 || gates_per_block_half == 0) {
        throw std::invalid_argument("generator counts (blocks, data, aux, half-gates) must be positive");
    }
    if (aux_reuse == AuxReuse::FreshPerBlock && aux_qubits < n_blocks) {
        throw std::invalid_argument("fresh auxiliaries per block need aux >= blocks (" +
                                    std::to_string(aux_qubits) + " < " + std::to_string(n_blocks) + ")");
    }
}

std::vector<std::vector<QubitId>> block_data_qubits(const GeneratorConfig &cfg) {
    cfg.validate();
    PhiloxStream rng(cfg.seed, 0);
    const std::size_t w = cfg.data_per_block();
    std::vector<std::vector<QubitId>> out;
    out.reserve(cfg.n_blocks);
    for (std::size_t b = 0; b < cfg.n_blocks; ++b) {
        std::vector<QubitId> pool(cfg.data_qubits);
        std::iota(pool.begin(), pool.end(), QubitId{0});
        for (std::size_t i = 0; i < w; ++i) {
            std::swap(pool[i], pool[i + rng.below(pool.size() - i)]);
        }
        pool.resize(w);
        std::sort(pool.begin(), pool.end());
        out.push_back(std::move(pool));
    }
    return out;
}

Circuit generate(const GeneratorConfig &cfg) {
    const auto block_data = block_data_qubits(cfg);
    // Operand choices come from a stream distinct from the data-subset draws.
    PhiloxStream rng(cfg.seed, 1);

    const std::size_t n_data = cfg.data_qubits;
    const std::size_t u = cfg.aux_per_block();
    const std::size_t h = cfg.gates_per_block_half;

    std::vector<Qubit> qubits;
    for (std::size_t q = 0; q < n_data + cfg.aux_qubits; ++q) {
        qubits.push_back({static_cast<QubitId>(q), q < n_data ? QubitRole::Data : QubitRole::Auxiliary});
    }

    std::vector<Gate> gates;
    std::vector<MeasurementPoint> candidates;
    std::set<QubitId> touched_aux;
    std::set<QubitId> reset_after_last;
    GateId next_id = 0;

    for (std::size_t b = 0; b < cfg.n_blocks; ++b) {
        std::vector<QubitId> aux(u);
        const std::size_t aux_base = cfg.aux_reuse == AuxReuse::ReuseAcrossBlocks ? 0 : b * u;
        for (std::size_t i = 0; i < u; ++i) {
            aux[i] = static_cast<QubitId>(n_data + aux_base + i);
        }
        const auto &data = block_data[b];

        std::vector<std::vector<QubitId>> forward;
        std::set<QubitId> block_aux;
        for (std::size_t j = 0; j < h; ++j) {
            std::vector<QubitId> ops{aux[j % u], data[j % data.size()]};
            if (j > 0) {
                const auto &prev = forward.back();
                const QubitId link = prev[rng.below(prev.size())];
                if (std::find(ops.begin(), ops.end(), link) == ops.end()) {
                    ops.push_back(link);
                }
            }
            block_aux.insert(aux[j % u]);
            forward.push_back(std::move(ops));
        }

        const auto block = static_cast<std::int64_t>(b);
        const std::string prefix = "g" + std::to_string(b) + "_";
        for (std::size_t j = 0; j < h; ++j) {
            gates.push_back({next_id++, prefix + std::to_string(j), forward[j], block});
        }
        for (std::size_t j = h; j-- > 0;) {
            gates.push_back({next_id++, prefix + std::to_string(j) + "_inv", forward[j], block});
        }

        const bool last = b + 1 == cfg.n_blocks;
        for (QubitId a : block_aux) {
            candidates.push_back({0, a, gates.back().id, last ? MeasureKind::Final : MeasureKind::MidCircuit});
            touched_aux.insert(a);
            if (last) {
                reset_after_last.insert(a);
            }
        }
    }

    for (QubitId a : touched_aux) {
        if (!reset_after_last.contains(a)) {
            candidates.push_back({0, a, gates.back().id, MeasureKind::Final});
        }
    }
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        candidates[i].id = static_cast<std::uint32_t>(i + 1);
    }

    Circuit bare(std::move(qubits), std::move(gates), {}, candidates);
    return bare.with_measurements(candidates);
}

}  // namespace auxval
