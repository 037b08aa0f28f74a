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

#include "auxval/early_abort.hpp"

#include <cmath>
#include <stdexcept>

#include "auxval/parallel.hpp"

namespace auxval {

double prefix_likelihood(const BitVector &m_prefix, const LightconeSet &lcs, const NoiseParams &np) {
    if (m_prefix.size() > lcs.size()) {
        throw std::invalid_argument("prefix longer than the measurement list");
    }
    return std::exp(LikelihoodModel(lcs, np).log_likelihood(m_prefix, {}, m_prefix.size()));
}

std::optional<std::size_t> abort_index(const BitVector &m, const ShotFilter &filter) {
    if (filter.policy().strategy == Strategy::NoValidation) {
        return std::nullopt;
    }
    const LikelihoodModel &model = filter.model();
    const BitVector &visible = filter.visible();
    if (m.size() != model.size()) {
        throw std::invalid_argument("outcome vector length mismatch");
    }
    double log_p = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (!m[i] || !visible[i]) {
            continue;
        }
        log_p += model.log_factor(i);
        if (log_p < filter.log_threshold()) {
            return i;
        }
    }
    return std::nullopt;
}

AbortOutcome run_with_abort(const Circuit &c, const ShotRecord &shot, const ShotFilter &filter) {
    AbortOutcome out;
    out.aborted_at = abort_index(shot.m, filter);
    if (out.aborted_at) {
        out.gates_executed = c.gates_before(c.measurements()[*out.aborted_at]);
        out.verdict = Verdict::Reject;
    } else {
        out.gates_executed = c.num_gates();
    }
    return out;
}

namespace {

struct Tally {
    std::size_t aborted = 0;
    std::size_t executed = 0;
    bool consistent = true;

    void add(const AbortOutcome &o, const Decision &full) {
        aborted += o.aborted_at.has_value();
        executed += o.gates_executed;
        consistent = consistent && (o.verdict == full.verdict);
    }
};

AbortReport finish(const Tally &t, std::size_t n_shots, std::size_t total_gates) {
    AbortReport r;
    r.n_shots = n_shots;
    r.total_gates = total_gates;
    r.decisions_consistent = t.consistent;
    if (n_shots > 0) {
        const double n = static_cast<double>(n_shots);
        r.aborted_fraction = static_cast<double>(t.aborted) / n;
        r.mean_gates_executed = static_cast<double>(t.executed) / n;
        r.mean_gates_saved = static_cast<double>(n_shots * total_gates - t.executed) / n;
    }
    return r;
}

void require_validation(const PostSelectPolicy &policy) {
    if (policy.strategy == Strategy::NoValidation) {
        throw std::invalid_argument("early abort needs a validating strategy (final or all)");
    }
}

}  // namespace

AbortReport abort_report(const Circuit &c, const LightconeSet &lcs, const NoiseParams &np,
                         const PostSelectPolicy &policy, const std::vector<ShotRecord> &shots,
                         std::vector<AbortOutcome> *outcomes) {
    require_validation(policy);
    const ShotFilter filter(lcs, np, policy);
    if (outcomes) {
        outcomes->clear();
        outcomes->reserve(shots.size());
    }
    Tally tally;
    for (const ShotRecord &shot : shots) {
        const AbortOutcome o = run_with_abort(c, shot, filter);
        tally.add(o, filter(shot));
        if (outcomes) {
            outcomes->push_back(o);
        }
    }
    return finish(tally, shots.size(), c.num_gates());
}

AbortReport simulate_with_abort(const Circuit &c, const LightconeSet &lcs, const NoiseParams &np,
                                const PostSelectPolicy &policy, std::size_t n_shots, std::uint64_t seed,
                                unsigned workers) {
    require_validation(policy);
    if (n_shots == 0) {
        throw std::invalid_argument("n_shots must be at least 1");
    }
    const ShotSampler sampler(c, lcs, np);
    const ShotFilter filter(lcs, np, policy);
    const std::size_t w = std::max(1u, workers);
    std::vector<Tally> tallies(w);
    const std::size_t chunk = (n_shots + w - 1) / w;
    parallel_chunks(w, static_cast<unsigned>(w), [&](std::size_t tb, std::size_t te) {
        for (std::size_t t = tb; t < te; ++t) {
            const std::size_t begin = std::min(n_shots, t * chunk);
            const std::size_t end = std::min(n_shots, begin + chunk);
            for (std::size_t j = begin; j < end; ++j) {
                PhiloxStream rng = shot_stream(seed, j);
                const ShotRecord shot = sampler.sample(rng);
                tallies[t].add(run_with_abort(c, shot, filter), filter(shot));
            }
        }
    });
    Tally total;
    for (const Tally &t : tallies) {
        total.aborted += t.aborted;
        total.executed += t.executed;
        total.consistent = total.consistent && t.consistent;
    }
    return finish(total, n_shots, c.num_gates());
}

}  // namespace auxval
