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

#ifndef AUXVAL_ESTIMATOR_HPP
#define AUXVAL_ESTIMATOR_HPP

#include <cstddef>
#include <vector>

#include "auxval/lightcone.hpp"
#include "auxval/noise.hpp"
#include "auxval/postselect.hpp"

namespace auxval {

/// Empirical shot classification and filter performance of one decision list.
///
/// Conditional rates with an empty conditioning class are NaN: fn_rate when no shot is
/// corrupted, p_retain_given_corrupted when no shot is detectable, and so on.
struct SelectionStats {
    std::size_t n_shots = 0;
    std::size_t n_good = 0;
    std::size_t n_detectable = 0;
    std::size_t n_undetectable = 0;
    std::size_t n_retained = 0;
    std::size_t n_good_rejected = 0;
    std::size_t n_corrupted_accepted = 0;
    std::size_t n_detectable_retained = 0;
    /// Retained shots whose logical output was flipped.
    std::size_t n_retained_flipped = 0;

    double f_good = 0.0;
    double f_detectable = 0.0;
    double f_undetectable = 0.0;
    double f_retain = 0.0;
    double p_retain_given_good = 0.0;
    /// Over detectable shots; undetectable ones retain like good shots.
    double p_retain_given_corrupted = 0.0;
    double fp_rate = 0.0;  // good shots rejected / good shots
    double fn_rate = 0.0;  // corrupted shots accepted / corrupted shots
};

struct BiasVarianceEstimate {
    double bias = 0.0;  // in units of delta
    double variance = 0.0;
    double variance_inflation = 1.0;  // 1 / f_retain
    double delta = 1.0;
    double sigma_sq = 1.0;
    std::size_t n_shots = 0;
};

/// Counts shots against decisions, classifying by each shot's own `detectable` flag.
/// Throws std::invalid_argument on empty input or length mismatch.
SelectionStats selection_stats(const std::vector<ShotRecord> &shots, const std::vector<Decision> &decisions);
/// Same, with detectability supplied per shot (e.g. relative to a strategy's coverage).
SelectionStats selection_stats(const std::vector<ShotRecord> &shots, const std::vector<Decision> &decisions,
                               const std::vector<bool> &detectable);

/// Per-shot detectability against the union of the given visible lightcones.
std::vector<bool> detectable_flags(const Circuit &c, const std::vector<ShotRecord> &shots,
                                   const LightconeSet &lcs, const BitVector &visible);

/// (f_good + f_undetectable) Pr(retain|good) + f_detectable Pr(retain|corrupted).
/// A term whose class fraction is zero contributes zero even if its rate is NaN.
double predicted_f_retain(const SelectionStats &stats);

/// delta (f_detectable Pr(retain|corrupted) + f_undetectable Pr(retain|good)) / f_retain.
/// Throws std::domain_error when f_retain = 0 (all shots rejected).
double bias_estimate(const SelectionStats &stats, double delta);

/// sigma^2 / (n f_retain). Throws std::domain_error unless n >= 1 and 0 < f_retain <= 1.
double variance_estimate(double sigma_sq, std::size_t n, double f_retain);

BiasVarianceEstimate bias_variance(const SelectionStats &stats, double delta, double sigma_sq);

}  // namespace auxval

#endif  // AUXVAL_ESTIMATOR_HPP
