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

#ifndef AUXVAL_EARLY_ABORT_HPP
#define AUXVAL_EARLY_ABORT_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "auxval/circuit.hpp"
#include "auxval/lightcone.hpp"
#include "auxval/noise.hpp"
#include "auxval/postselect.hpp"

namespace auxval {

struct AbortReport {
    std::size_t n_shots = 0;
    std::size_t total_gates = 0;
    double aborted_fraction = 0.0;
    double mean_gates_executed = 0.0;
    double mean_gates_saved = 0.0;
    /// Abort-mode verdicts equal full-run verdicts for every shot.
    bool decisions_consistent = true;
};

/// Likelihood of the first m_prefix.size() outcomes. Every factor is <= 1, so this
/// bounds the full-shot likelihood from above.
double prefix_likelihood(const BitVector &m_prefix, const LightconeSet &lcs, const NoiseParams &np);

/// Index of the measurement at which the shot would be aborted under `filter`, i.e. the
/// first visible index whose prefix likelihood drops below the threshold.
std::optional<std::size_t> abort_index(const BitVector &m, const ShotFilter &filter);

/// Per-shot outcome of abort-mode execution.
struct AbortOutcome {
    std::optional<std::size_t> aborted_at;  // measurement index
    std::size_t gates_executed = 0;
    Verdict verdict = Verdict::Accept;  // Reject iff aborted
};

AbortOutcome run_with_abort(const Circuit &c, const ShotRecord &shot, const ShotFilter &filter);

/// Abort statistics for an already-sampled batch, checked against full-run decisions.
/// `outcomes`, when given, receives the per-shot abort-mode results.
AbortReport abort_report(const Circuit &c, const LightconeSet &lcs, const NoiseParams &np,
                         const PostSelectPolicy &policy, const std::vector<ShotRecord> &shots,
                         std::vector<AbortOutcome> *outcomes = nullptr);

/// Replays the substreams of sample_batch(c, lcs, np, n_shots, seed) in abort mode.
/// Throws std::invalid_argument for the NoValidation strategy.
AbortReport simulate_with_abort(const Circuit &c, const LightconeSet &lcs, const NoiseParams &np,
                                const PostSelectPolicy &policy, std::size_t n_shots, std::uint64_t seed,
                                unsigned workers = 1);

}  // namespace auxval

#endif  // AUXVAL_EARLY_ABORT_HPP
