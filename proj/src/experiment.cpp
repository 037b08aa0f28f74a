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

#include "auxval/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "auxval/lightcone.hpp"
#include "json.hpp"

#ifndef AUXVAL_VERSION
#define AUXVAL_VERSION "dev"
#endif

namespace auxval {

using nlohmann::ordered_json;

const ReportCell &ExperimentReport::cell(Strategy s, double threshold) const {
    for (const ReportCell &c : cells) {
        if (c.strategy == s && c.threshold == threshold) {
            return c;
        }
    }
    throw std::out_of_range("no report cell for strategy '" + std::string(strategy_name(s)) + "' at threshold " +
                            std::to_string(threshold));
}

Circuit experiment_circuit(const ExperimentConfig &cfg) {
    Circuit c = cfg.circuit_path ? load_circuit_file(*cfg.circuit_path) : generate(cfg.generator);
    if (c.measurements().empty()) {
        c = c.with_measurements(c.candidate_resets());
    }
    return c;
}

ExperimentReport run_experiment(const ExperimentConfig &cfg) { return run_experiment(cfg, experiment_circuit(cfg)); }

ExperimentReport run_experiment(const ExperimentConfig &cfg, const Circuit &circuit) {
    cfg.validate();
    if (circuit.measurements().empty()) {
        throw std::invalid_argument("experiment circuit has no measurements");
    }
    const LightconeSet lcs = lightcone_set(circuit);
    const std::vector<ShotRecord> shots = sample_batch(circuit, lcs, cfg.noise, cfg.n_shots, cfg.seed, cfg.workers);

    ExperimentReport report;
    report.config = cfg;
    report.tool_version = AUXVAL_VERSION;
    report.circuit.num_qubits = circuit.num_qubits();
    report.circuit.num_gates = circuit.num_gates();
    report.circuit.num_measurements = circuit.measurements().size();
    report.circuit.cone_sizes = lcs.sizes();
    for (const MeasurementPoint &m : circuit.measurements()) {
        report.circuit.num_final += m.kind == MeasureKind::Final;
    }

    for (Strategy strategy : cfg.strategies) {
        const BitVector visible = visible_measurements(lcs, strategy);
        const std::vector<bool> detectable = detectable_flags(circuit, shots, lcs, visible);
        for (double threshold : cfg.thresholds) {
            const PostSelectPolicy policy{threshold, strategy};
            const ShotFilter filter(lcs, cfg.noise, policy);
            std::vector<Decision> decisions;
            decisions.reserve(shots.size());
            for (const ShotRecord &shot : shots) {
                decisions.push_back(filter(shot));
            }

            ReportCell cell;
            cell.strategy = strategy;
            cell.threshold = threshold;
            cell.stats = selection_stats(shots, decisions, detectable);
            cell.predicted_f_retain = predicted_f_retain(cell.stats);
            if (cell.stats.n_retained > 0) {
                cell.estimate = bias_variance(cell.stats, cfg.delta, cfg.sigma_sq);
                cell.observed_output_error =
                    static_cast<double>(cell.stats.n_retained_flipped) / static_cast<double>(cell.stats.n_retained);
            } else {
                cell.observed_output_error = std::nan("");
            }
            if (strategy != Strategy::NoValidation) {
                cell.abort = abort_report(circuit, lcs, cfg.noise, policy, shots);
            }
            report.cells.push_back(std::move(cell));
        }
    }
    return report;
}

// --- report output ---

namespace {

std::string fmt(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

// NaN becomes null, matching the CSV "nan" sentinel.
ordered_json jnum(double v) { return std::isnan(v) ? ordered_json(nullptr) : ordered_json(v); }

ordered_json config_json(const ExperimentConfig &cfg) {
    ordered_json j;
    if (cfg.circuit_path) {
        j["circuit"] = *cfg.circuit_path;
    } else {
        const GeneratorConfig &g = cfg.generator;
        j["generator"] = {{"blocks", g.n_blocks},
                          {"data", g.data_qubits},
                          {"aux", g.aux_qubits},
                          {"half_gates", g.gates_per_block_half},
                          {"reuse", aux_reuse_name(g.aux_reuse)},
                          {"seed", g.seed}};
    }
    j["noise"] = {{"p", cfg.noise.p}, {"r", cfg.noise.r}, {"q", cfg.noise.q}, {"delta_flip_prob", cfg.noise.delta_flip()}};
    ordered_json strategies = ordered_json::array();
    for (Strategy s : cfg.strategies) {
        strategies.push_back(strategy_name(s));
    }
    j["strategies"] = strategies;
    j["thresholds"] = cfg.thresholds;
    j["shots"] = cfg.n_shots;
    j["seed"] = cfg.seed;
    j["delta"] = cfg.delta;
    j["sigma2"] = cfg.sigma_sq;
    return j;
}

ordered_json stats_json(const SelectionStats &s) {
    ordered_json j;
    j["n_shots"] = s.n_shots;
    j["n_good"] = s.n_good;
    j["n_detectable"] = s.n_detectable;
    j["n_undetectable"] = s.n_undetectable;
    j["n_retained"] = s.n_retained;
    j["f_good"] = jnum(s.f_good);
    j["f_detectable"] = jnum(s.f_detectable);
    j["f_undetectable"] = jnum(s.f_undetectable);
    j["f_retain"] = jnum(s.f_retain);
    j["p_retain_given_good"] = jnum(s.p_retain_given_good);
    j["p_retain_given_corrupted"] = jnum(s.p_retain_given_corrupted);
    j["fp_rate"] = jnum(s.fp_rate);
    j["fn_rate"] = jnum(s.fn_rate);
    return j;
}

}  // namespace

std::string emit_report(const ExperimentReport &report, ReportFormat format) {
    if (format == ReportFormat::Csv) {
        std::ostringstream out;
        out << "strategy,threshold,fp_rate,fn_rate,f_retain,bias,variance_inflation,aborted_fraction,"
               "mean_gates_saved\n";
        for (const ReportCell &c : report.cells) {
            out << strategy_name(c.strategy) << ',' << fmt(c.threshold) << ',' << fmt(c.stats.fp_rate) << ','
                << fmt(c.stats.fn_rate) << ',' << fmt(c.stats.f_retain) << ','
                << (c.estimate ? fmt(c.estimate->bias) : "") << ','
                << (c.estimate ? fmt(c.estimate->variance_inflation) : "") << ','
                << (c.abort ? fmt(c.abort->aborted_fraction) : "") << ','
                << (c.abort ? fmt(c.abort->mean_gates_saved) : "") << '\n';
        }
        return out.str();
    }

    ordered_json j;
    j["metadata"] = {{"tool", "auxval"},
                     {"version", report.tool_version},
                     {"seed", report.config.seed},
                     {"config", config_json(report.config)}};
    j["circuit"] = {{"qubits", report.circuit.num_qubits},
                    {"gates", report.circuit.num_gates},
                    {"measurements", report.circuit.num_measurements},
                    {"final_measurements", report.circuit.num_final},
                    {"cone_sizes", report.circuit.cone_sizes}};
    ordered_json cells = ordered_json::array();
    for (const ReportCell &c : report.cells) {
        ordered_json cell;
        cell["strategy"] = strategy_name(c.strategy);
        cell["threshold"] = c.threshold;
        cell["stats"] = stats_json(c.stats);
        cell["predicted_f_retain"] = jnum(c.predicted_f_retain);
        if (c.estimate) {
            cell["estimate"] = {{"bias", jnum(c.estimate->bias)},
                                {"variance", jnum(c.estimate->variance)},
                                {"variance_inflation", jnum(c.estimate->variance_inflation)},
                                {"delta", c.estimate->delta},
                                {"sigma2", c.estimate->sigma_sq},
                                {"n_shots", c.estimate->n_shots}};
        } else {
            cell["estimate"] = nullptr;
        }
        cell["observed_output_error"] = jnum(c.observed_output_error);
        if (c.abort) {
            cell["abort"] = {{"aborted_fraction", c.abort->aborted_fraction},
                             {"mean_gates_executed", c.abort->mean_gates_executed},
                             {"mean_gates_saved", c.abort->mean_gates_saved},
                             {"decisions_consistent", c.abort->decisions_consistent}};
        } else {
            cell["abort"] = nullptr;
        }
        cells.push_back(std::move(cell));
    }
    j["cells"] = std::move(cells);
    return j.dump(2) + "\n";
}

// --- calibration ---

HeadlineCheck check_headline(const ExperimentReport &report, double threshold, const CalibrationTarget &target) {
    const SelectionStats &none = report.cell(Strategy::NoValidation, threshold).stats;
    const SelectionStats &fin = report.cell(Strategy::FinalOnly, threshold).stats;
    const SelectionStats &all = report.cell(Strategy::AllResetPoints, threshold).stats;

    HeadlineCheck h;
    h.noise = report.config.noise;
    h.threshold = threshold;
    h.fn_none = none.fn_rate;
    h.fn_final = fin.fn_rate;
    h.fn_all = all.fn_rate;
    h.fp_none = none.fp_rate;
    h.fp_final = fin.fp_rate;
    h.fp_all = all.fp_rate;
    h.fn_reduction = h.fn_none - h.fn_all;
    h.final_between = h.fn_all < h.fn_final && h.fn_final < h.fn_none && h.fp_none < h.fp_final && h.fp_final < h.fp_all;
    // NaN rates (no corrupted or no good shots) fail every comparison, so meets stays false.
    h.meets = h.fn_reduction >= target.fn_reduction_min && h.fn_reduction <= target.fn_reduction_max &&
              h.fp_all <= target.fp_max && h.final_between;
    h.distance = std::hypot(h.fn_reduction - target.fn_reduction_goal, h.fp_all - target.fp_goal);
    return h;
}

CalibrationResult calibrate(const ExperimentConfig &base, const std::vector<double> &p_grid,
                            const std::vector<double> &q_grid, const std::vector<double> &thresholds,
                            const CalibrationTarget &target) {
    ExperimentConfig cfg = base;
    cfg.strategies = {Strategy::NoValidation, Strategy::FinalOnly, Strategy::AllResetPoints};
    cfg.thresholds = thresholds;
    std::sort(cfg.thresholds.begin(), cfg.thresholds.end());
    cfg.thresholds.erase(std::unique(cfg.thresholds.begin(), cfg.thresholds.end()), cfg.thresholds.end());
    const Circuit circuit = experiment_circuit(cfg);

    CalibrationResult result;
    for (double p : p_grid) {
        for (double q : q_grid) {
            cfg.noise.p = p;
            cfg.noise.q = q;
            const ExperimentReport report = run_experiment(cfg, circuit);
            for (double th : cfg.thresholds) {
                ++result.evaluated;
                const HeadlineCheck h = check_headline(report, th, target);
                if (!h.meets) {
                    continue;
                }
                result.candidates.push_back(h);
                if (!result.best || h.distance < result.best->distance) {
                    result.best = h;
                }
            }
        }
    }
    return result;
}

std::string calibration_json(const CalibrationResult &result, const ExperimentConfig &base) {
    auto check_json = [](const HeadlineCheck &h) {
        ordered_json j;
        j["p"] = h.noise.p;
        j["r"] = h.noise.r;
        j["q"] = h.noise.q;
        j["threshold"] = h.threshold;
        j["fn_reduction"] = jnum(h.fn_reduction);
        j["fn"] = {{"none", jnum(h.fn_none)}, {"final", jnum(h.fn_final)}, {"all", jnum(h.fn_all)}};
        j["fp"] = {{"none", jnum(h.fp_none)}, {"final", jnum(h.fp_final)}, {"all", jnum(h.fp_all)}};
        j["distance"] = h.distance;
        return j;
    };
    ordered_json j;
    j["metadata"] = {{"tool", "auxval"}, {"version", AUXVAL_VERSION}, {"config", config_json(base)}};
    j["evaluated"] = result.evaluated;
    j["found"] = result.best.has_value();
    j["best"] = result.best ? check_json(*result.best) : ordered_json(nullptr);
    ordered_json all = ordered_json::array();
    for (const HeadlineCheck &h : result.candidates) {
        all.push_back(check_json(h));
    }
    j["candidates"] = std::move(all);
    return j.dump(2) + "\n";
}

}  // namespace auxval
