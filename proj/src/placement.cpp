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

#include "auxval/placement.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace auxval {

double PlacementConfig::cost_of(const MeasurementPoint &p) const {
    auto it = latency_cost.find(PointKey::of(p));
    return it == latency_cost.end() ? 0.0 : it->second;
}

void PlacementConfig::validate() const {
    if (!(std::isfinite(overlap_penalty) && overlap_penalty >= 0.0)) {
        throw std::invalid_argument("overlap penalty must be finite and non-negative");
    }
    for (const auto &[key, cost] : latency_cost) {
        if (!(std::isfinite(cost) && cost >= 0.0)) {
            throw std::invalid_argument("latency costs must be finite and non-negative");
        }
    }
}

double score_mask(const GateMask &cand, const GateMask &chosen_union, double overlap_penalty, double cost) {
    const std::size_t shared = (cand & chosen_union).count();
    const std::size_t fresh = cand.count() - shared;
    return static_cast<double>(fresh) - overlap_penalty * static_cast<double>(shared) - cost;
}

double score_candidate(const MeasurementPoint &cand, const std::vector<MeasurementPoint> &chosen,
                       const Circuit &c, const PlacementConfig &cfg) {
    GateMask covered(c.num_gates());
    for (const MeasurementPoint &s : chosen) {
        covered |= backward_lightcone(c, s).gates;
    }
    return score_mask(backward_lightcone(c, cand).gates, covered, cfg.overlap_penalty, cfg.cost_of(cand));
}

std::vector<MeasurementPoint> select_placements(const Circuit &c, const PlacementConfig &cfg) {
    cfg.validate();
    const auto &cands = c.candidate_resets();
    const LightconeSet lcs = lightcone_set(c, cands);

    std::vector<bool> taken(cands.size(), false);
    std::vector<std::size_t> picked;
    GateMask covered(c.num_gates());
    while (picked.size() < cfg.budget) {
        std::size_t best = cands.size();
        double best_score = 0.0;
        for (std::size_t i = 0; i < cands.size(); ++i) {
            if (taken[i]) {
                continue;
            }
            const double s = score_mask(lcs.cones[i].gates, covered, cfg.overlap_penalty, cfg.cost_of(cands[i]));
            if (best == cands.size() || s > best_score) {
                best = i;
                best_score = s;
                continue;
            }
            if (s == best_score) {
                const std::size_t pi = c.gates_before(cands[i]);
                const std::size_t pb = c.gates_before(cands[best]);
                if (pi < pb || (pi == pb && cands[i].qubit < cands[best].qubit)) {
                    best = i;
                }
            }
        }
        if (best == cands.size() || best_score <= 0.0) {
            break;
        }
        taken[best] = true;
        picked.push_back(best);
        covered |= lcs.cones[best].gates;
    }

    std::vector<MeasurementPoint> out;
    out.reserve(picked.size());
    for (std::size_t i : picked) {
        out.push_back(cands[i]);
    }
    std::stable_sort(out.begin(), out.end(), [&](const MeasurementPoint &a, const MeasurementPoint &b) {
        const std::size_t pa = c.gates_before(a);
        const std::size_t pb = c.gates_before(b);
        return pa != pb ? pa < pb : a.qubit < b.qubit;
    });
    return out;
}

Circuit place_measurements(const Circuit &c, const PlacementConfig &cfg) {
    return c.with_measurements(select_placements(c, cfg));
}

}  // namespace auxval
