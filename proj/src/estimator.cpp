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

#include "auxval/estimator.hpp"

#include <limits>
#include <stdexcept>

namespace auxval {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double ratio(std::size_t num, std::size_t den) {
    return den == 0 ? kNaN : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

SelectionStats selection_stats(const std::vector<ShotRecord> &shots, const std::vector<Decision> &decisions,
                               const std::vector<bool> &detectable) {
    if (shots.empty()) {
        throw std::invalid_argument("selection_stats: no shots");
    }
    if (shots.size() != decisions.size() || shots.size() != detectable.size()) {
        throw std::invalid_argument("selection_stats: shots and decisions differ in length");
    }
    SelectionStats s;
    s.n_shots = shots.size();
    for (std::size_t j = 0; j < shots.size(); ++j) {
        const bool kept = decisions[j].accepted();
        s.n_retained += kept;
        s.n_retained_flipped += kept && shots[j].final_output_flipped;
        if (!shots[j].corrupted) {
            ++s.n_good;
            s.n_good_rejected += !kept;
            continue;
        }
        s.n_corrupted_accepted += kept;
        if (detectable[j]) {
            ++s.n_detectable;
            s.n_detectable_retained += kept;
        } else {
            ++s.n_undetectable;
        }
    }
    const std::size_t n_corrupted = s.n_detectable + s.n_undetectable;
    s.f_good = ratio(s.n_good, s.n_shots);
    s.f_detectable = ratio(s.n_detectable, s.n_shots);
    s.f_undetectable = ratio(s.n_undetectable, s.n_shots);
    s.f_retain = ratio(s.n_retained, s.n_shots);
    s.p_retain_given_good = ratio(s.n_good - s.n_good_rejected, s.n_good);
    s.p_retain_given_corrupted = ratio(s.n_detectable_retained, s.n_detectable);
    s.fp_rate = ratio(s.n_good_rejected, s.n_good);
    s.fn_rate = ratio(s.n_corrupted_accepted, n_corrupted);
    return s;
}

SelectionStats selection_stats(const std::vector<ShotRecord> &shots, const std::vector<Decision> &decisions) {
    std::vector<bool> detectable(shots.size());
    for (std::size_t j = 0; j < shots.size(); ++j) {
        detectable[j] = shots[j].detectable;
    }
    return selection_stats(shots, decisions, detectable);
}

std::vector<bool> detectable_flags(const Circuit &c, const std::vector<ShotRecord> &shots,
                                   const LightconeSet &lcs, const BitVector &visible) {
    GateMask coverage(c.num_gates());
    for (std::size_t i = 0; i < lcs.size(); ++i) {
        if (visible.at(i)) {
            coverage |= lcs.cones[i].gates;
        }
    }
    std::vector<bool> out(shots.size(), false);
    for (std::size_t j = 0; j < shots.size(); ++j) {
        for (GateId id : shots[j].failed_gates) {
            if (coverage.test(c.position_of(id))) {
                out[j] = true;
                break;
            }
        }
    }
    return out;
}

double predicted_f_retain(const SelectionStats &s) {
    const double good_like = s.f_good + s.f_undetectable;
    double total = 0.0;
    if (good_like > 0.0) {
        total += good_like * s.p_retain_given_good;
    }
    if (s.f_detectable > 0.0) {
        total += s.f_detectable * s.p_retain_given_corrupted;
    }
    return total;
}

double bias_estimate(const SelectionStats &s, double delta) {
    if (!(s.f_retain > 0.0)) {
        throw std::domain_error("bias_estimate: all shots rejected (f_retain = 0)");
    }
    double leaked = 0.0;
    if (s.f_detectable > 0.0) {
        leaked += s.f_detectable * s.p_retain_given_corrupted;
    }
    if (s.f_undetectable > 0.0) {
        leaked += s.f_undetectable * s.p_retain_given_good;
    }
    return delta * leaked / s.f_retain;
}

double variance_estimate(double sigma_sq, std::size_t n, double f_retain) {
    if (n == 0) {
        throw std::domain_error("variance_estimate: n must be at least 1");
    }
    if (!(f_retain > 0.0 && f_retain <= 1.0)) {
        throw std::domain_error("variance_estimate: f_retain must lie in (0, 1]");
    }
    return sigma_sq / (static_cast<double>(n) * f_retain);
}

BiasVarianceEstimate bias_variance(const SelectionStats &s, double delta, double sigma_sq) {
    BiasVarianceEstimate e;
    e.delta = delta;
    e.sigma_sq = sigma_sq;
    e.n_shots = s.n_shots;
    e.bias = bias_estimate(s, delta);
    e.variance = variance_estimate(sigma_sq, s.n_shots, s.f_retain);
    e.variance_inflation = 1.0 / s.f_retain;
    return e;
}

}  // namespace auxval
