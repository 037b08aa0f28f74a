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

#ifndef AUXVAL_POSTSELECT_HPP
#define AUXVAL_POSTSELECT_HPP

#include <cstddef>
#include <string_view>
#include <vector>

#include "auxval/lightcone.hpp"
#include "auxval/noise.hpp"

namespace auxval {

enum class Strategy { NoValidation, FinalOnly, AllResetPoints };

std::string_view strategy_name(Strategy s);  // "none" | "final" | "all"
Strategy parse_strategy(std::string_view name);

struct PostSelectPolicy {
    /// Accept iff the shot likelihood is >= threshold.
    double threshold = 0.0;
    Strategy strategy = Strategy::AllResetPoints;

    void validate() const;
};

enum class Verdict { Accept, Reject };

struct Decision {
    Verdict verdict = Verdict::Accept;
    double likelihood = 1.0;

    bool accepted() const { return verdict == Verdict::Accept; }
    bool operator==(const Decision &) const = default;
};

/// Probability that lightcone i is error-free given m_i = 1: q / (G r p + q).
/// Returns 1 when the denominator vanishes and 0 when only q does.
double single_likelihood(std::size_t cone_size, const NoiseParams &np);
/// log of single_likelihood, computed as -log1p(G r p / q) for accuracy.
double log_single_likelihood(std::size_t cone_size, const NoiseParams &np);

/// Which measurements a strategy may look at.
BitVector visible_measurements(const LightconeSet &lcs, Strategy s);

/// Per-measurement log factors for one (lightcones, noise) pair.
class LikelihoodModel {
  public:
    LikelihoodModel(const LightconeSet &lcs, const NoiseParams &np);

    std::size_t size() const { return log_factors_.size(); }
    double log_factor(std::size_t i) const { return log_factors_[i]; }

    /// Sum of log factors over indices i < prefix_len with m[i] set and visible[i] set
    /// (an empty `visible` means all visible). Throws on length mismatch.
    double log_likelihood(const BitVector &m, const BitVector &visible = {},
                          std::size_t prefix_len = static_cast<std::size_t>(-1)) const;

  private:
    std::vector<double> log_factors_;
};

/// Product over {i : m_i = 1} of single_likelihood(G_i); 1 for the empty product.
double shot_likelihood(const BitVector &m, const LightconeSet &lcs, const NoiseParams &np);

/// Accept/reject of one shot under a policy, with the likelihood of the visible outcomes.
Decision decide(const ShotRecord &shot, const LightconeSet &lcs, const NoiseParams &np,
                const PostSelectPolicy &policy);

/// Reusable form of decide() for many shots under one policy.
class ShotFilter {
  public:
    ShotFilter(const LightconeSet &lcs, const NoiseParams &np, const PostSelectPolicy &policy);

    Decision operator()(const BitVector &m) const;
    Decision operator()(const ShotRecord &shot) const { return (*this)(shot.m); }

    const LikelihoodModel &model() const { return model_; }
    const BitVector &visible() const { return visible_; }
    const PostSelectPolicy &policy() const { return policy_; }
    double log_threshold() const { return log_threshold_; }

  private:
    LikelihoodModel model_;
    BitVector visible_;
    PostSelectPolicy policy_;
    double log_threshold_;
};

}  // namespace auxval

#endif  // AUXVAL_POSTSELECT_HPP
