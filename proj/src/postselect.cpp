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

#include "auxval/postselect.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace auxval {

std::string_view strategy_name(Strategy s) {
    switch (s) {
        case Strategy::NoValidation:
            return "none";
        case Strategy::FinalOnly:
            return "final";
        case Strategy::AllResetPoints:
            return "all";
    }
    return "?";
}

Strategy parse_strategy(std::string_view name) {
    if (name == "none") {
        return Strategy::NoValidation;
    }
    if (name == "final") {
        return Strategy::FinalOnly;
    }
    if (name == "all") {
        return Strategy::AllResetPoints;
    }
    throw std::invalid_argument("unknown strategy '" + std::string(name) + "' (expected none|final|all)");
}

void PostSelectPolicy::validate() const {
    if (!(threshold >= 0.0 && threshold <= 1.0)) {
        throw std::invalid_argument("threshold " + std::to_string(threshold) + " is outside [0, 1]");
    }
}

double single_likelihood(std::size_t cone_size, const NoiseParams &np) {
    const double gate_term = static_cast<double>(cone_size) * np.r * np.p;
    if (np.q == 0.0) {
        return gate_term == 0.0 ? 1.0 : 0.0;
    }
    return np.q / (gate_term + np.q);
}

double log_single_likelihood(std::size_t cone_size, const NoiseParams &np) {
    const double gate_term = static_cast<double>(cone_size) * np.r * np.p;
    if (np.q == 0.0) {
        return gate_term == 0.0 ? 0.0 : -std::numeric_limits<double>::infinity();
    }
    return -std::log1p(gate_term / np.q);
}

BitVector visible_measurements(const LightconeSet &lcs, Strategy s) {
    BitVector visible(lcs.size(), false);
    for (std::size_t i = 0; i < lcs.size(); ++i) {
        switch (s) {
            case Strategy::NoValidation:
                break;
            case Strategy::FinalOnly:
                visible[i] = lcs.cones[i].point.kind == MeasureKind::Final;
                break;
            case Strategy::AllResetPoints:
                visible[i] = true;
                break;
        }
    }
    return visible;
}

LikelihoodModel::LikelihoodModel(const LightconeSet &lcs, const NoiseParams &np) {
    np.validate();
    log_factors_.reserve(lcs.size());
    for (const Lightcone &cone : lcs.cones) {
        log_factors_.push_back(log_single_likelihood(cone.size(), np));
    }
}

double LikelihoodModel::log_likelihood(const BitVector &m, const BitVector &visible,
                                       std::size_t prefix_len) const {
    if (m.size() != log_factors_.size() && prefix_len == static_cast<std::size_t>(-1)) {
        throw std::invalid_argument("outcome vector has " + std::to_string(m.size()) +
                                    " entries; expected " + std::to_string(log_factors_.size()));
    }
    if (!visible.empty() && visible.size() != log_factors_.size()) {
        throw std::invalid_argument("visibility mask length mismatch");
    }
    const std::size_t n = std::min({prefix_len, m.size(), log_factors_.size()});
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (m[i] && (visible.empty() || visible[i])) {
            total += log_factors_[i];
        }
    }
    return total;
}

double shot_likelihood(const BitVector &m, const LightconeSet &lcs, const NoiseParams &np) {
    return std::exp(LikelihoodModel(lcs, np).log_likelihood(m));
}

ShotFilter::ShotFilter(const LightconeSet &lcs, const NoiseParams &np, const PostSelectPolicy &policy)
    : model_(lcs, np),
      visible_(visible_measurements(lcs, policy.strategy)),
      policy_(policy),
      log_threshold_(std::log(policy.threshold)) {
    policy.validate();
}

Decision ShotFilter::operator()(const BitVector &m) const {
    if (policy_.strategy == Strategy::NoValidation) {
        if (m.size() != model_.size()) {
            throw std::invalid_argument("outcome vector length mismatch");
        }
        return {Verdict::Accept, 1.0};
    }
    const double log_p = model_.log_likelihood(m, visible_);
    return {log_p >= log_threshold_ ? Verdict::Accept : Verdict::Reject, std::exp(log_p)};
}

Decision decide(const ShotRecord &shot, const LightconeSet &lcs, const NoiseParams &np,
                const PostSelectPolicy &policy) {
    return ShotFilter(lcs, np, policy)(shot);
}

}  // namespace auxval
