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

#ifndef AUXVAL_PLACEMENT_HPP
#define AUXVAL_PLACEMENT_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "auxval/circuit.hpp"
#include "auxval/lightcone.hpp"

namespace auxval {

/// Identifies a location independently of measurement numbering; -1 means "start".
struct PointKey {
    QubitId qubit = 0;
    std::int64_t after_gate = -1;

    static PointKey of(const MeasurementPoint &p) {
        return {p.qubit, p.after_gate ? std::int64_t{*p.after_gate} : -1};
    }
    auto operator<=>(const PointKey &) const = default;
};

struct PlacementConfig {
    std::size_t budget = 0;
    double overlap_penalty = 0.0;
    /// Missing entries cost 0.
    std::map<PointKey, double> latency_cost;

    double cost_of(const MeasurementPoint &p) const;
    /// Throws std::invalid_argument for negative or non-finite penalties and costs.
    void validate() const;
};

/// Marginal new coverage of `cand` minus overlap_penalty times its overlap with the
/// chosen union minus its latency cost.
double score_candidate(const MeasurementPoint &cand, const std::vector<MeasurementPoint> &chosen,
                       const Circuit &c, const PlacementConfig &cfg);

/// Same score from precomputed masks.
double score_mask(const GateMask &cand, const GateMask &chosen_union, double overlap_penalty, double cost);

/// Greedy selection over c.candidate_resets(): take the best-scoring candidate (ties to
/// the earlier position, then the lower qubit) until the budget is spent or no
/// candidate scores above zero. Result is in circuit order.
std::vector<MeasurementPoint> select_placements(const Circuit &c, const PlacementConfig &cfg);

/// `c` instrumented with exactly the selected points as its measurements.
Circuit place_measurements(const Circuit &c, const PlacementConfig &cfg);

}  // namespace auxval

#endif  // AUXVAL_PLACEMENT_HPP
