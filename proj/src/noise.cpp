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

#include "auxval/noise.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "auxval/parallel.hpp"

namespace auxval {

void NoiseParams::validate() const {
    auto check = [](double v, const char *name) {
        if (!(v >= 0.0 && v <= 1.0)) {
            throw std::invalid_argument(std::string("noise parameter ") + name + " = " +
                                        std::to_string(v) + " is outside [0, 1]");
        }
    };
    check(p, "p");
    check(r, "r");
    check(q, "q");
    if (delta_flip_prob) {
        check(*delta_flip_prob, "delta_flip_prob");
    }
}

ShotSampler::ShotSampler(const Circuit &c, const LightconeSet &lcs, const NoiseParams &np)
    : circuit_(&c), noise_(np), num_measurements_(lcs.size()), covering_(c.num_gates()) {
    np.validate();
    if (lcs.num_gates != c.num_gates()) {
        throw std::invalid_argument("lightcone set was computed for a different circuit");
    }
    for (std::size_t i = 0; i < lcs.size(); ++i) {
        const GateMask &g = lcs.cones[i].gates;
        for (auto pos = g.find_first(); pos != GateMask::npos; pos = g.find_next(pos)) {
            covering_[pos].push_back(static_cast<std::uint32_t>(i));
        }
    }
    coverage_ = lcs.union_mask;
}

ShotRecord ShotSampler::sample(PhiloxStream &rng) const {
    std::vector<std::size_t> failed;
    const std::size_t n = circuit_->num_gates();
    for (std::size_t pos = 0; pos < n; ++pos) {
        if (rng.bernoulli(noise_.p)) {
            failed.push_back(pos);
        }
    }
    return finish(std::move(failed), rng);
}

ShotRecord ShotSampler::sample_with_failures(std::span<const std::size_t> failed_positions,
                                             PhiloxStream &rng) const {
    std::vector<std::size_t> failed(failed_positions.begin(), failed_positions.end());
    std::sort(failed.begin(), failed.end());
    failed.erase(std::unique(failed.begin(), failed.end()), failed.end());
    if (!failed.empty() && failed.back() >= circuit_->num_gates()) {
        throw std::out_of_range("forced failure position out of range");
    }
    return finish(std::move(failed), rng);
}

ShotRecord ShotSampler::finish(std::vector<std::size_t> failed, PhiloxStream &rng) const {
    ShotRecord shot;
    shot.true_premeasure.assign(num_measurements_, false);
    for (std::size_t pos : failed) {
        for (std::uint32_t i : covering_[pos]) {
            if (rng.bernoulli(noise_.r)) {
                shot.true_premeasure[i].flip();
            }
        }
    }
    shot.m = shot.true_premeasure;
    for (std::size_t i = 0; i < num_measurements_; ++i) {
        if (rng.bernoulli(noise_.q)) {
            shot.m[i].flip();
        }
    }
    const double delta = noise_.delta_flip();
    for (std::size_t pos : failed) {
        if (rng.bernoulli(delta)) {
            shot.final_output_flipped = !shot.final_output_flipped;
        }
        if (coverage_.test(pos)) {
            shot.detectable = true;
        }
    }
    shot.corrupted = !failed.empty();
    shot.failed_gates.reserve(failed.size());
    for (std::size_t pos : failed) {
        shot.failed_gates.push_back(circuit_->gates()[pos].id);
    }
    return shot;
}

PhiloxStream shot_stream(std::uint64_t seed, std::uint64_t index) { return PhiloxStream(seed, index); }

ShotRecord sample_shot(const Circuit &c, const LightconeSet &lcs, const NoiseParams &np,
                       PhiloxStream &rng) {
    return ShotSampler(c, lcs, np).sample(rng);
}

std::vector<ShotRecord> sample_batch(const Circuit &c, const LightconeSet &lcs,
                                     const NoiseParams &np, std::size_t n_shots,
                                     std::uint64_t seed, unsigned workers) {
    if (n_shots == 0) {
        throw std::invalid_argument("n_shots must be at least 1");
    }
    const ShotSampler sampler(c, lcs, np);
    std::vector<ShotRecord> shots(n_shots);
    parallel_chunks(n_shots, workers, [&](std::size_t begin, std::size_t end) {
        for (std::size_t j = begin; j < end; ++j) {
            PhiloxStream rng = shot_stream(seed, j);
            shots[j] = sampler.sample(rng);
        }
    });
    return shots;
}

}  // namespace auxval
