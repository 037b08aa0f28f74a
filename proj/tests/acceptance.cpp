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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits nonzero if
// any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "auxval/early_abort.hpp"
#include "auxval/estimator.hpp"
#include "auxval/experiment.hpp"
#include "auxval/generator.hpp"
#include "auxval/lightcone.hpp"
#include "auxval/noise.hpp"
#include "auxval/placement.hpp"
#include "auxval/postselect.hpp"
#include "test_util.hpp"

#ifndef AUXVAL_SOURCE_DIR
#define AUXVAL_SOURCE_DIR "."
#endif

using namespace auxval;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char *pattern, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof(buf), pattern, args...);
    return buf;
}

// Independent cones of the given sizes on separate auxiliaries.
LightconeSet cones_of_sizes(const std::vector<std::size_t> &sizes) {
    std::string text = "qubits " + std::to_string(sizes.size()) + "\n";
    std::string meas;
    std::size_t gate = 0;
    for (std::size_t q = 0; q < sizes.size(); ++q) {
        text += "role " + std::to_string(q) + " aux\n";
    }
    for (std::size_t q = 0; q < sizes.size(); ++q) {
        for (std::size_t g = 0; g < sizes[q]; ++g) {
            text += "gate " + std::to_string(gate++) + " x " + std::to_string(q) + "\n";
        }
        meas += "measure " + std::to_string(q + 1) + " " + std::to_string(q) + " after " +
                (sizes[q] == 0 ? std::string("start") : std::to_string(gate - 1)) + " kind final\n";
    }
    return lightcone_set(parse_circuit(text + meas));
}

// Likelihood against the "no error in any lightcone" product, evaluated directly.
Outcome likelihood_exactness() {
    std::mt19937_64 gen(1);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_int_distribution<std::size_t> pick_k(1, 12);
    std::uniform_int_distribution<std::size_t> pick_g(0, 400);
    double worst = 0.0;
    const auto t0 = Clock::now();
    double model_time = 0.0;
    for (int trial = 0; trial < 10000; ++trial) {
        const std::size_t k = pick_k(gen);
        std::vector<std::size_t> sizes(k);
        for (auto &s : sizes) {
            s = pick_g(gen);
        }
        LightconeSet lcs;
        lcs.num_gates = 0;
        for (std::size_t s : sizes) {
            Lightcone cone;
            cone.gates = GateMask(400);
            for (std::size_t i = 0; i < s; ++i) {
                cone.gates.set(i);
            }
            lcs.cones.push_back(cone);
        }
        const NoiseParams np{0.05 * u(gen), u(gen), 1e-4 + 0.3 * u(gen), std::nullopt};
        BitVector m(k);
        for (std::size_t i = 0; i < k; ++i) {
            m[i] = u(gen) < 0.5;
        }
        double direct = 1.0;
        for (std::size_t i = 0; i < k; ++i) {
            if (m[i]) {
                const double gate_term = static_cast<double>(sizes[i]) * np.r * np.p;
                direct *= np.q / (gate_term + np.q);
            }
        }
        const auto s0 = Clock::now();
        const double got = shot_likelihood(m, lcs, np);
        model_time += std::chrono::duration<double>(Clock::now() - s0).count();
        worst = std::max(worst, std::abs(got - direct) / direct);
    }
    const double total = std::chrono::duration<double>(Clock::now() - t0).count();
    return {worst <= 1e-12 && model_time < 1.0,
            fmt("max relative error %.3g over 1e4 tuples; likelihood time %.3fs (harness %.3fs)", worst, model_time,
                total)};
}

Outcome single_error_oracle() {
    GeneratorConfig gcfg;
    gcfg.n_blocks = 3;
    gcfg.gates_per_block_half = 25;
    const Circuit c = generate(gcfg);
    const LightconeSet lcs = lightcone_set(c);
    const double r = 0.5;
    const ShotSampler sampler(c, lcs, {0.0, r, 0.0, std::nullopt});
    const std::size_t n = 100000;
    const std::size_t positions[] = {0, c.num_gates() / 3, c.num_gates() / 2, c.num_gates() - 1};
    double worst_z = 0.0;
    bool ok = c.num_gates() <= 200;
    const auto t0 = Clock::now();
    for (std::size_t g : positions) {
        std::vector<std::size_t> ones(lcs.size(), 0);
        for (std::size_t j = 0; j < n; ++j) {
            PhiloxStream rng = shot_stream(100 + g, j);
            const std::size_t forced[] = {g};
            const ShotRecord s = sampler.sample_with_failures(forced, rng);
            for (std::size_t i = 0; i < lcs.size(); ++i) {
                ones[i] += s.m[i];
            }
        }
        for (std::size_t i = 0; i < lcs.size(); ++i) {
            const double expect = lcs.cones[i].gates.test(g) ? r : 0.0;
            const double rate = static_cast<double>(ones[i]) / n;
            if (expect == 0.0) {
                ok = ok && ones[i] == 0;
                continue;
            }
            const double sigma = std::sqrt(expect * (1 - expect) / n);
            worst_z = std::max(worst_z, std::abs(rate - expect) / sigma);
            ok = ok && std::abs(rate - expect) <= 3.0 * sigma;
        }
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    return {ok && secs < 60.0, fmt("%zu gates, %zu measurements, 4 forced gates x 1e5 shots; worst |z| = %.2f; %.2fs",
                                   c.num_gates(), lcs.size(), worst_z, secs)};
}

Outcome lightcone_oracle() {
    std::mt19937_64 gen(2);
    std::size_t checked = 0;
    std::size_t mismatches = 0;
    const auto t0 = Clock::now();
    for (int trial = 0; trial < 100; ++trial) {
        testutil::RandomCircuitSpec spec;
        spec.data = 2 + trial % 7;
        spec.aux = 1 + trial % 5;
        spec.gates = 5 * (trial + 1);
        spec.measurements = 8;
        spec.max_arity = 1 + trial % 3;
        const Circuit c = testutil::random_circuit(gen, spec);
        const auto reach = testutil::reachability(c);
        for (const MeasurementPoint &m : c.measurements()) {
            const auto ids = backward_lightcone(c, m).gate_ids(c);
            mismatches += std::set<GateId>(ids.begin(), ids.end()) != testutil::oracle_cone(c, reach, m);
            ++checked;
        }
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    return {mismatches == 0 && secs < 60.0,
            fmt("100 random circuits (5..500 gates), %zu cones, %zu mismatches; %.2fs", checked, mismatches, secs)};
}

Outcome count_threshold_equivalence() {
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::size_t vectors = 0;
    std::size_t disagreements = 0;
    for (std::size_t k = 1; k <= 10; ++k) {
        for (int rep = 0; rep < 20; ++rep) {
            const std::size_t g = 1 + static_cast<std::size_t>(u(gen) * 200);
            const LightconeSet lcs = cones_of_sizes(std::vector<std::size_t>(k, g));
            const NoiseParams np{0.01 * u(gen), 0.5, 0.001 + 0.2 * u(gen), std::nullopt};
            const double th = std::pow(u(gen), 3.0);
            const ShotFilter filter(lcs, np, {th, Strategy::AllResetPoints});
            const double max_ones = std::floor(std::log(th) / std::log(single_likelihood(g, np)));
            for (std::uint32_t bits = 0; bits < (1U << k); ++bits) {
                BitVector m(k);
                for (std::size_t i = 0; i < k; ++i) {
                    m[i] = (bits >> i) & 1U;
                }
                ShotRecord shot;
                shot.m = m;
                const bool by_count = static_cast<double>(std::popcount(bits)) <= max_ones;
                disagreements += decide(shot, lcs, np, filter.policy()).accepted() != by_count;
                ++vectors;
            }
        }
    }
    return {disagreements == 0,
            fmt("k = 1..10, 20 (G, p, q, threshold) draws each, %zu vectors, %zu disagreements", vectors,
                disagreements)};
}

Outcome formula_consistency() {
    ExperimentConfig cfg;
    cfg.generator.n_blocks = 3;
    cfg.noise = {0.004, 0.5, 0.03, std::nullopt};
    cfg.thresholds = {0.05, 0.2, 0.5, 1.0};
    cfg.n_shots = 100000;
    cfg.seed = 5;

    // Trailing data-only gates lie outside every lightcone.
    std::string text = serialize_circuit(experiment_circuit(cfg));
    const std::size_t first_gate = generate(cfg.generator).num_gates();
    for (std::size_t i = 0; i < 60; ++i) {
        text += "gate " + std::to_string(first_gate + i) + " idle " + std::to_string(i % cfg.generator.data_qubits) +
                "\n";
    }
    const Circuit circuit = parse_circuit(text);
    const ExperimentReport report = run_experiment(cfg, circuit);
    std::size_t cells = 0;
    bool ok = true;
    double worst_z = 0.0;
    double max_undetectable = 0.0;
    const ReportCell *lowest = nullptr;
    for (const ReportCell &c : report.cells) {
        const double f = c.stats.f_retain;
        const double sigma = std::sqrt(std::max(f * (1 - f), 1e-12) / static_cast<double>(c.stats.n_shots));
        const double z = std::abs(c.predicted_f_retain - f) / sigma;
        worst_z = std::max(worst_z, z);
        ok = ok && z <= 3.0;
        max_undetectable = std::max(max_undetectable, c.stats.f_undetectable);
        ++cells;
        if (!lowest || f < lowest->stats.f_retain) {
            lowest = &c;
        }
    }
    ok = ok && cells >= 5;

    // Bootstrap of a fair +/-1 observable averaged over retained shots.
    const LightconeSet lcs = lightcone_set(circuit);
    const auto shots = sample_batch(circuit, lcs, cfg.noise, cfg.n_shots, cfg.seed);
    const ShotFilter filter(lcs, cfg.noise, {lowest->threshold, lowest->strategy});
    std::vector<int> value(shots.size());
    std::vector<bool> kept(shots.size());
    PhiloxStream coin(cfg.seed, 0xb007ULL << 32);
    for (std::size_t j = 0; j < shots.size(); ++j) {
        value[j] = coin.bernoulli(0.5) ? 1 : -1;
        kept[j] = filter(shots[j]).accepted();
    }
    const std::size_t reps = 2000;
    PhiloxStream boot(cfg.seed, (0xb007ULL << 32) + 1);
    double sum = 0.0;
    double sum_sq = 0.0;
    for (std::size_t b = 0; b < reps; ++b) {
        long long total = 0;
        std::size_t n_kept = 0;
        for (std::size_t j = 0; j < shots.size(); ++j) {
            const std::size_t pick = boot.below(shots.size());
            if (kept[pick]) {
                total += value[pick];
                ++n_kept;
            }
        }
        const double mean = static_cast<double>(total) / static_cast<double>(n_kept);
        sum += mean;
        sum_sq += mean * mean;
    }
    const double boot_var = (sum_sq - sum * sum / reps) / (reps - 1);
    const double formula = variance_estimate(1.0, cfg.n_shots, lowest->stats.f_retain);
    const double rel = std::abs(boot_var - formula) / formula;
    ok = ok && rel <= 0.10;
    return {ok, fmt("%zu cells (undetectable fraction up to %.3f), worst |z| = %.3g for f_retain; bootstrap variance %.4g vs %.4g (rel %.3f) at "
                    "f_retain %.3f, 2000 replicates",
                    cells, max_undetectable, worst_z, boot_var, formula, rel, lowest->stats.f_retain)};
}

Outcome headline() {
    const std::string path = std::string(AUXVAL_SOURCE_DIR) + "/configs/headline.toml";
    ExperimentConfig cfg;
    try {
        cfg = load_experiment_config(path);
    } catch (const std::exception &e) {
        return {false, std::string("cannot load headline config: ") + e.what()};
    }
    const auto t0 = Clock::now();
    const ExperimentReport report = run_experiment(cfg);
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    CalibrationTarget target;
    std::optional<HeadlineCheck> hit;
    for (double th : cfg.thresholds) {
        const HeadlineCheck h = check_headline(report, th, target);
        if (h.meets && !hit) {
            hit = h;
        }
    }
    if (!hit) {
        return {false, fmt("no threshold in configs/headline.toml meets the target (N = %zu, %.1fs)", cfg.n_shots,
                           secs)};
    }
    return {cfg.n_shots >= 100000 && secs < 300.0,
            fmt("p=%g r=%g q=%g threshold=%g N=%zu: fn none/final/all = %.4f/%.4f/%.4f (reduction %.2f pts), "
                "fp none/final/all = %.5f/%.5f/%.5f; %.1fs",
                hit->noise.p, hit->noise.r, hit->noise.q, hit->threshold, cfg.n_shots, hit->fn_none, hit->fn_final,
                hit->fn_all, 100.0 * hit->fn_reduction, hit->fp_none, hit->fp_final, hit->fp_all, secs)};
}

Outcome early_abort_soundness() {
    GeneratorConfig gcfg;
    const Circuit c = generate(gcfg);
    const LightconeSet lcs = lightcone_set(c);
    const NoiseParams np{0.002, 0.5, 0.02, std::nullopt};
    const std::size_t n = 100000;
    const auto shots = sample_batch(c, lcs, np, n, 9);
    bool ok = true;
    std::string detail;
    for (Strategy s : {Strategy::FinalOnly, Strategy::AllResetPoints}) {
        for (double th : {0.0, 0.05, 0.3, 1.0}) {
            const PostSelectPolicy policy{th, s};
            const ShotFilter filter(lcs, np, policy);
            std::size_t mid_visible = 0;
            for (std::size_t i = 0; i < lcs.size(); ++i) {
                mid_visible += filter.visible()[i] && c.gates_before(c.measurements()[i]) < c.num_gates();
            }
            std::vector<AbortOutcome> outcomes;
            const AbortReport rep = abort_report(c, lcs, np, policy, shots, &outcomes);
            std::size_t mismatches = 0;
            for (std::size_t j = 0; j < n; ++j) {
                mismatches += outcomes[j].verdict != filter(shots[j]).verdict;
            }
            const AbortReport sim = simulate_with_abort(c, lcs, np, policy, n, 9, 4);
            const bool cell_ok = mismatches == 0 && rep.decisions_consistent && sim.decisions_consistent &&
                                 sim.aborted_fraction == rep.aborted_fraction &&
                                 sim.mean_gates_saved == rep.mean_gates_saved &&
                                 (rep.aborted_fraction == 0.0 || rep.mean_gates_saved > 0.0 ||
                                  mid_visible == 0);
            ok = ok && cell_ok;
            if (s == Strategy::AllResetPoints && th == 0.3) {
                detail = fmt("e.g. all@0.3: aborted %.4f, mean gates saved %.2f of %zu", rep.aborted_fraction,
                             rep.mean_gates_saved, c.num_gates());
            }
        }
    }
    return {ok, "1e5 shots x 8 (strategy, threshold) cells, abort verdicts bit-identical to full runs; " + detail};
}

Outcome monotonicity() {
    std::mt19937_64 gen(8);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::size_t sweep_cases = 0;
    std::size_t sweep_bad = 0;
    const std::vector<double> ths{0.0, 0.001, 0.01, 0.05, 0.1, 0.2, 0.4, 0.6, 0.8, 0.95, 1.0};
    for (int trial = 0; trial < 1000; ++trial) {
        GeneratorConfig gcfg;
        gcfg.n_blocks = 1 + trial % 3;
        gcfg.aux_qubits = 1 + trial % 3;
        gcfg.gates_per_block_half = 3 + trial % 6;
        gcfg.seed = static_cast<std::uint64_t>(trial);
        const Circuit c = generate(gcfg);
        const LightconeSet lcs = lightcone_set(c);
        const NoiseParams np{0.05 * u(gen), u(gen), 0.2 * u(gen), std::nullopt};
        const auto shots = sample_batch(c, lcs, np, 200, static_cast<std::uint64_t>(trial));
        for (Strategy s : {Strategy::NoValidation, Strategy::FinalOnly, Strategy::AllResetPoints}) {
            double prev_fp = -1.0;
            double prev_fn = 2.0;
            for (double th : ths) {
                const ShotFilter filter(lcs, np, {th, s});
                std::vector<Decision> d;
                for (const ShotRecord &shot : shots) {
                    d.push_back(filter(shot));
                }
                const SelectionStats st = selection_stats(shots, d);
                const double fp = std::isnan(st.fp_rate) ? 0.0 : st.fp_rate;
                const double fn = std::isnan(st.fn_rate) ? 1.0 : st.fn_rate;
                sweep_bad += fp < prev_fp || fn > prev_fn;
                prev_fp = fp;
                prev_fn = fn;
            }
        }
        ++sweep_cases;
    }

    std::size_t flip_cases = 0;
    std::size_t flip_bad = 0;
    std::uniform_int_distribution<std::size_t> pick_g(0, 300);
    while (flip_cases < 1000) {
        const std::size_t k = 1 + flip_cases % 10;
        std::vector<std::size_t> sizes(k);
        for (auto &s : sizes) {
            s = pick_g(gen);
        }
        const LightconeSet lcs = cones_of_sizes(sizes);
        const NoiseParams np{0.02 * u(gen), u(gen), 0.3 * u(gen), std::nullopt};
        BitVector m(k);
        for (std::size_t i = 0; i < k; ++i) {
            m[i] = u(gen) < 0.4;
        }
        const double base = shot_likelihood(m, lcs, np);
        for (std::size_t i = 0; i < k; ++i) {
            if (!m[i]) {
                BitVector f = m;
                f[i] = true;
                flip_bad += shot_likelihood(f, lcs, np) > base;
            }
        }
        ++flip_cases;
    }

    std::size_t place_cases = 0;
    std::size_t place_bad = 0;
    while (place_cases < 1000) {
        testutil::RandomCircuitSpec spec;
        spec.gates = 10 + place_cases % 40;
        spec.aux = 1 + place_cases % 4;
        spec.measurements = 2 + place_cases % 7;
        spec.max_arity = 1 + place_cases % 3;
        const Circuit c = testutil::random_circuit(gen, spec);
        PlacementConfig pcfg;
        pcfg.overlap_penalty = (place_cases % 3) * 0.25;
        std::size_t prev = 0;
        for (std::size_t b = 0; b <= c.candidate_resets().size(); ++b) {
            pcfg.budget = b;
            const std::size_t cov = lightcone_set(c, select_placements(c, pcfg)).union_size();
            place_bad += cov < prev;
            prev = cov;
        }
        ++place_cases;
    }
    return {sweep_bad == 0 && flip_bad == 0 && place_bad == 0 && sweep_cases >= 1000 && flip_cases >= 1000 &&
                place_cases >= 1000,
            fmt("threshold sweeps %zu cases / %zu violations; 0->1 flips %zu cases / %zu; placement budgets %zu "
                "cases / %zu",
                sweep_cases, sweep_bad, flip_cases, flip_bad, place_cases, place_bad)};
}

Outcome reproducibility() {
    ExperimentConfig cfg;
    cfg.thresholds = {0.0, 0.1, 0.5, 1.0};
    cfg.n_shots = 20000;
    cfg.seed = 1234;
    const std::string a = emit_report(run_experiment(cfg), ReportFormat::Csv);
    const std::string b = emit_report(run_experiment(cfg), ReportFormat::Csv);
    cfg.workers = 8;
    const std::string many = emit_report(run_experiment(cfg), ReportFormat::Csv);
    return {a == b && a == many && !a.empty(),
            fmt("CSV of %zu bytes identical across two runs and 1 vs 8 workers", a.size())};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char *, std::function<Outcome()>>> criteria{
        {"likelihood exactness", likelihood_exactness},
        {"single-error oracle equivalence", single_error_oracle},
        {"lightcone oracle", lightcone_oracle},
        {"count-threshold equivalence", count_threshold_equivalence},
        {"retention and variance formulas", formula_consistency},
        {"headline tradeoff", headline},
        {"early-abort soundness", early_abort_soundness},
        {"monotonicity suite", monotonicity},
        {"reproducibility", reproducibility},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        std::printf("%s criterion %zu (%s): %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                    o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria failed\n", failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
