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

#ifndef AUXVAL_NOISE_HPP
#define AUXVAL_NOISE_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "auxval/circuit.hpp"
#include "auxval/lightcone.hpp"
#include "auxval/rng.hpp"

namespace auxval {

using BitVector = std::vector<bool>;

/// Stochastic noise model: gate failure probability p, probability r that a failed gate
/// flips a measurement whose lightcone contains it, and symmetric readout error q.
struct NoiseParams {
    double p = 0.0;
    double r = 0.0;
    double q = 0.0;
    /// Per-failed-gate probability of flipping the logical output. Defaults to r.
    std::optional<double> delta_flip_prob;

    double delta_flip() const { return delta_flip_prob.value_or(r); }
    /// Throws std::invalid_argument unless every probability lies in [0, 1].
    void validate() const;

    bool operator==(const NoiseParams &) const = default;
};

struct ShotRecord {
    /// Failed gate ids, ascending.
    std::vector<GateId> failed_gates;
    /// Observed validation outcomes, one per measurement in circuit order.
    BitVector m;
    /// Auxiliary states just before readout.
    BitVector true_premeasure;
    bool corrupted = false;
    /// At least one failed gate lies inside the union of the measurement lightcones.
    bool detectable = false;
    bool final_output_flipped = false;

    bool operator==(const ShotRecord &) const = default;
};

/// Precomputed gate-to-measurement incidence for repeated sampling on one circuit.
class ShotSampler {
  public:
    ShotSampler(const Circuit &c, const LightconeSet &lcs, const NoiseParams &np);

    /// One shot drawn from `rng`. Draw order: gate failures, per-(failed gate, covering
    /// measurement) flips, readout errors, output flips.
    ShotRecord sample(PhiloxStream &rng) const;

    /// Like sample(), with the failure set fixed to the given program-order positions.
    ShotRecord sample_with_failures(std::span<const std::size_t> failed_positions,
                                    PhiloxStream &rng) const;

    std::size_t num_measurements() const { return num_measurements_; }

  private:
    ShotRecord finish(std::vector<std::size_t> failed, PhiloxStream &rng) const;

    const Circuit *circuit_;
    NoiseParams noise_;
    std::size_t num_measurements_;
    std::vector<std::vector<std::uint32_t>> covering_;  // per gate position
    GateMask coverage_;
};

/// Shot `index` of the batch keyed by `seed`.
PhiloxStream shot_stream(std::uint64_t seed, std::uint64_t index);

ShotRecord sample_shot(const Circuit &c, const LightconeSet &lcs, const NoiseParams &np,
                       PhiloxStream &rng);

/// `n_shots` shots; shot j draws from shot_stream(seed, j), so the output does not
/// depend on `workers`.
std::vector<ShotRecord> sample_batch(const Circuit &c, const LightconeSet &lcs,
                                     const NoiseParams &np, std::size_t n_shots,
                                     std::uint64_t seed, unsigned workers = 1);

}  // namespace auxval

#endif  // AUXVAL_NOISE_HPP
