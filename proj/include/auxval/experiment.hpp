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

#ifndef AUXVAL_EXPERIMENT_HPP
#define AUXVAL_EXPERIMENT_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "auxval/circuit.hpp"
#include "auxval/early_abort.hpp"
#include "auxval/estimator.hpp"
#include "auxval/generator.hpp"
#include "auxval/noise.hpp"
#include "auxval/postselect.hpp"

namespace auxval {

struct ExperimentConfig {
    GeneratorConfig generator;
    /// When set, the circuit is loaded from this file instead of generated.
    std::optional<std::string> circuit_path;
    NoiseParams noise{1e-3, 0.5, 1e-2, std::nullopt};
    std::vector<Strategy> strategies{Strategy::NoValidation, Strategy::FinalOnly, Strategy::AllResetPoints};
    std::vector<double> thresholds{0.0, 0.5, 1.0};
    std::size_t n_shots = 100000;
    std::uint64_t seed = 1;
    double delta = 1.0;
    double sigma_sq = 1.0;
    /// Threads used for sampling. Does not affect results.
    unsigned workers = 1;

    /// Throws std::invalid_argument on unsorted/out-of-range thresholds, zero shots,
    /// an empty strategy list, or invalid generator/noise settings.
    void validate() const;
};

/// Parses the flat `key = value` config document (TOML subset: numbers, quoted
/// strings, booleans, one-line arrays, `#` comments). Unknown keys are errors.
///
/// Keys: circuit, blocks, data, aux, half_gates, reuse, gen_seed, p, r, q,
/// delta_flip_prob, strategies, thresholds, shots, seed, delta, sigma2, workers.
ExperimentConfig parse_experiment_config(std::string_view text);
ExperimentConfig load_experiment_config(const std::string &path);
std::string serialize_experiment_config(const ExperimentConfig &cfg);

struct ReportCell {
    Strategy strategy = Strategy::NoValidation;
    double threshold = 0.0;
    SelectionStats stats;
    double predicted_f_retain = 0.0;
    /// Empty when every shot was rejected.
    std::optional<BiasVarianceEstimate> estimate;
    /// Fraction of retained shots whose logical output was flipped.
    double observed_output_error = 0.0;
    /// Empty for NoValidation.
    std::optional<AbortReport> abort;
};

struct CircuitSummary {
    std::size_t num_qubits = 0;
    std::size_t num_gates = 0;
    std::size_t num_measurements = 0;
    std::size_t num_final = 0;
    std::vector<std::size_t> cone_sizes;
};

struct ExperimentReport {
    ExperimentConfig config;
    std::string tool_version;
    CircuitSummary circuit;
    /// Ordered by strategy (config order), then threshold (ascending).
    std::vector<ReportCell> cells;

    const ReportCell &cell(Strategy s, double threshold) const;
};

/// One shared shot batch evaluated under every (strategy, threshold) pair.
ExperimentReport run_experiment(const ExperimentConfig &cfg);
/// Same, on an explicit circuit (config's generator/circuit_path are ignored).
ExperimentReport run_experiment(const ExperimentConfig &cfg, const Circuit &circuit);

/// The circuit a config describes, instrumented at every reset candidate when the
/// source has no measurements.
Circuit experiment_circuit(const ExperimentConfig &cfg);

enum class ReportFormat { Json, Csv };

/// CSV columns: strategy, threshold, fp_rate, fn_rate, f_retain, bias,
/// variance_inflation, aborted_fraction, mean_gates_saved. Undefined values are "nan",
/// inapplicable ones empty. Numbers use the shortest round-trip representation.
std::string emit_report(const ExperimentReport &report, ReportFormat format);

// --- headline calibration ---

struct CalibrationTarget {
    double fn_reduction_min = 0.08;
    double fn_reduction_max = 0.12;
    double fp_max = 0.02;
    double fn_reduction_goal = 0.10;
    double fp_goal = 0.01;
};

/// Three-strategy comparison at one threshold.
struct HeadlineCheck {
    NoiseParams noise;
    double threshold = 0.0;
    double fn_none = 0.0, fn_final = 0.0, fn_all = 0.0;
    double fp_none = 0.0, fp_final = 0.0, fp_all = 0.0;
    double fn_reduction = 0.0;  // fn_none - fn_all
    bool final_between = false;  // strictly, on both axes
    bool meets = false;
    double distance = 0.0;  // to (fn_reduction_goal, fp_goal)
};

/// Requires cells for all three strategies at `threshold`.
HeadlineCheck check_headline(const ExperimentReport &report, double threshold, const CalibrationTarget &target);

struct CalibrationResult {
    std::vector<HeadlineCheck> candidates;  // every (p, q, threshold) that meets the target
    std::optional<HeadlineCheck> best;
    std::size_t evaluated = 0;
};

/// Sweeps (p, q) at the config's r over the given grids and the given thresholds,
/// keeping every regime that meets `target`; `best` is the closest to the goal.
CalibrationResult calibrate(const ExperimentConfig &base, const std::vector<double> &p_grid,
                            const std::vector<double> &q_grid, const std::vector<double> &thresholds,
                            const CalibrationTarget &target);

std::string calibration_json(const CalibrationResult &result, const ExperimentConfig &base);

}  // namespace auxval

#endif  // AUXVAL_EXPERIMENT_HPP
