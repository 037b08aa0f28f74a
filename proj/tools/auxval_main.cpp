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

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "auxval/circuit.hpp"
#include "auxval/early_abort.hpp"
#include "auxval/estimator.hpp"
#include "auxval/experiment.hpp"
#include "auxval/generator.hpp"
#include "auxval/lightcone.hpp"
#include "auxval/noise.hpp"
#include "auxval/placement.hpp"
#include "auxval/postselect.hpp"
#include "auxval/shot_io.hpp"

using nlohmann::ordered_json;
using namespace auxval;

namespace {

// Writes `content` to `path`, or stdout for "-".
void write_output(const std::string &path, const std::string &content) {
    if (path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write '" + path + "'");
    }
    out << content;
}

std::ifstream open_input(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open '" + path + "'");
    }
    return in;
}

ordered_json jnum(double v) { return std::isnan(v) ? ordered_json(nullptr) : ordered_json(v); }

struct NoiseOptions {
    NoiseParams np{1e-3, 0.5, 1e-2, std::nullopt};
    double delta_flip = -1.0;

    void add_to(CLI::App *cmd) {
        cmd->add_option("--p", np.p, "Per-gate failure probability")->capture_default_str();
        cmd->add_option("--r", np.r, "Flip probability per failed gate in a lightcone")->capture_default_str();
        cmd->add_option("--q", np.q, "Readout error probability")->capture_default_str();
        cmd->add_option("--delta-flip-prob", delta_flip, "Per-failed-gate output flip probability (default: r)");
    }
    NoiseParams get() const {
        NoiseParams out = np;
        if (delta_flip >= 0.0) {
            out.delta_flip_prob = delta_flip;
        }
        out.validate();
        return out;
    }
};

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Auxiliary-qubit validation and post-selection toolkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(AUXVAL_VERSION));
    std::function<void()> action;

    // generate
    GeneratorConfig gen;
    std::string gen_reuse = "across";
    std::string gen_out = "-";
    auto *generate_cmd = app.add_subcommand("generate", "Generate a synthetic compute/uncompute circuit");
    generate_cmd->add_option("--blocks", gen.n_blocks)->capture_default_str();
    generate_cmd->add_option("--data", gen.data_qubits)->capture_default_str();
    generate_cmd->add_option("--aux", gen.aux_qubits)->capture_default_str();
    generate_cmd->add_option("--half-gates", gen.gates_per_block_half)->capture_default_str();
    generate_cmd->add_option("--reuse", gen_reuse)->check(CLI::IsMember({"across", "fresh"}))->capture_default_str();
    generate_cmd->add_option("--seed", gen.seed)->capture_default_str();
    generate_cmd->add_option("--out", gen_out)->capture_default_str();
    generate_cmd->callback([&] {
        action = [&] {
            gen.aux_reuse = parse_aux_reuse(gen_reuse);
            write_output(gen_out, serialize_circuit(generate(gen)));
        };
    });

    // check
    std::string check_circuit;
    auto *check_cmd = app.add_subcommand("check", "Check compute/uncompute block structure");
    check_cmd->add_option("--circuit", check_circuit)->required();
    int check_status = 0;
    check_cmd->callback([&] {
        action = [&] {
            const Circuit c = load_circuit_file(check_circuit);
            ordered_json out = ordered_json::array();
            for (const BlockCheck &b : check_uncomputation_structure(c)) {
                out.push_back({{"block", b.block},
                               {"verdict", b.verdict == BlockVerdict::Pass ? "pass" : "fail"},
                               {"reason", b.reason}});
                if (b.verdict != BlockVerdict::Pass) {
                    check_status = 3;
                }
            }
            std::cout << out.dump(2) << '\n';
        };
    });

    // lightcone
    std::string lc_circuit;
    std::string lc_out = "-";
    bool lc_candidates = false;
    auto *lightcone_cmd = app.add_subcommand("lightcone", "Report lightcone sizes, overlaps and coverage as JSON");
    lightcone_cmd->add_option("--circuit", lc_circuit)->required();
    lightcone_cmd->add_flag("--candidates", lc_candidates, "Use reset candidates instead of measurements");
    lightcone_cmd->add_option("--out", lc_out)->capture_default_str();
    lightcone_cmd->callback([&] {
        action = [&] {
            const Circuit c = load_circuit_file(lc_circuit);
            const LightconeSet lcs = lc_candidates ? lightcone_set(c, c.candidate_resets()) : lightcone_set(c);
            ordered_json j;
            ordered_json cones = ordered_json::array();
            for (const Lightcone &cone : lcs.cones) {
                cones.push_back({{"id", cone.point.id},
                                 {"qubit", cone.point.qubit},
                                 {"after", cone.point.after_gate ? ordered_json(*cone.point.after_gate) : ordered_json()},
                                 {"kind", cone.point.kind == MeasureKind::Final ? "final" : "mid"},
                                 {"G", cone.size()}});
            }
            j["measurements"] = std::move(cones);
            j["overlap"] = lcs.overlap;
            j["union_size"] = lcs.union_size();
            j["total_gates"] = lcs.num_gates;
            j["union_coverage"] = lcs.union_fraction();
            write_output(lc_out, j.dump(2) + "\n");
        };
    });

    // simulate
    std::string sim_circuit;
    std::string sim_out = "-";
    NoiseOptions sim_noise;
    std::size_t sim_shots = 1000;
    std::uint64_t sim_seed = 1;
    unsigned sim_workers = 1;
    auto *simulate_cmd = app.add_subcommand("simulate", "Sample shots; writes one JSON object per shot");
    simulate_cmd->add_option("--circuit", sim_circuit)->required();
    sim_noise.add_to(simulate_cmd);
    simulate_cmd->add_option("--shots", sim_shots)->capture_default_str();
    simulate_cmd->add_option("--seed", sim_seed)->capture_default_str();
    simulate_cmd->add_option("--workers", sim_workers)->capture_default_str();
    simulate_cmd->add_option("--out", sim_out)->capture_default_str();
    simulate_cmd->callback([&] {
        action = [&] {
            const Circuit c = load_circuit_file(sim_circuit);
            const LightconeSet lcs = lightcone_set(c);
            const NoiseParams np = sim_noise.get();
            const auto shots = sample_batch(c, lcs, np, sim_shots, sim_seed, sim_workers);
            std::ostringstream out;
            write_shot_file(out, c, lcs, np, sim_seed, shots);
            write_output(sim_out, out.str());
        };
    });

    // filter
    std::string filt_shots;
    std::string filt_out = "-";
    double filt_threshold = 0.5;
    std::string filt_strategy = "all";
    auto *filter_cmd = app.add_subcommand("filter", "Accept/reject each shot of a shot file");
    filter_cmd->add_option("--shots", filt_shots)->required();
    filter_cmd->add_option("--threshold", filt_threshold)->check(CLI::Range(0.0, 1.0))->capture_default_str();
    filter_cmd->add_option("--strategy", filt_strategy)->check(CLI::IsMember({"none", "final", "all"}))->capture_default_str();
    filter_cmd->add_option("--out", filt_out)->capture_default_str();
    filter_cmd->callback([&] {
        action = [&] {
            auto in = open_input(filt_shots);
            const ShotFile file = read_shot_file(in);
            const PostSelectPolicy policy{filt_threshold, parse_strategy(filt_strategy)};
            const ShotFilter filter(file.lightcones, file.noise, policy);
            std::vector<Decision> decisions;
            decisions.reserve(file.shots.size());
            for (const ShotRecord &s : file.shots) {
                decisions.push_back(filter(s));
            }
            std::ostringstream out;
            write_decision_file(out, policy, decisions);
            write_output(filt_out, out.str());
        };
    });

    // stats
    std::string st_shots;
    std::string st_decisions;
    std::string st_out = "-";
    double st_delta = 1.0;
    double st_sigma2 = 1.0;
    auto *stats_cmd = app.add_subcommand("stats", "Selection statistics, bias and variance of a decision file");
    stats_cmd->add_option("--shots", st_shots)->required();
    stats_cmd->add_option("--decisions", st_decisions)->required();
    stats_cmd->add_option("--delta", st_delta)->capture_default_str();
    stats_cmd->add_option("--sigma2", st_sigma2)->capture_default_str();
    stats_cmd->add_option("--out", st_out)->capture_default_str();
    stats_cmd->callback([&] {
        action = [&] {
            auto shots_in = open_input(st_shots);
            const ShotFile file = read_shot_file(shots_in);
            auto dec_in = open_input(st_decisions);
            const DecisionFile dec = read_decision_file(dec_in);
            const BitVector visible = visible_measurements(file.lightcones, dec.policy.strategy);
            const SelectionStats s = selection_stats(file.shots, dec.decisions, detectable_flags(file, visible));
            ordered_json j;
            j["strategy"] = strategy_name(dec.policy.strategy);
            j["threshold"] = dec.policy.threshold;
            j["n_shots"] = s.n_shots;
            j["f_good"] = jnum(s.f_good);
            j["f_detectable"] = jnum(s.f_detectable);
            j["f_undetectable"] = jnum(s.f_undetectable);
            j["f_retain"] = jnum(s.f_retain);
            j["predicted_f_retain"] = jnum(predicted_f_retain(s));
            j["p_retain_given_good"] = jnum(s.p_retain_given_good);
            j["p_retain_given_corrupted"] = jnum(s.p_retain_given_corrupted);
            j["fp_rate"] = jnum(s.fp_rate);
            j["fn_rate"] = jnum(s.fn_rate);
            if (s.n_corrupted_accepted + s.n_detectable + s.n_undetectable == 0) {
                j["fn_note"] = "no corrupted shots";
            }
            if (s.n_retained > 0) {
                const BiasVarianceEstimate e = bias_variance(s, st_delta, st_sigma2);
                j["bias"] = jnum(e.bias);
                j["variance"] = jnum(e.variance);
                j["variance_inflation"] = jnum(e.variance_inflation);
            } else {
                j["bias"] = nullptr;
                j["variance"] = nullptr;
                j["variance_inflation"] = nullptr;
                j["note"] = "all shots rejected";
            }
            j["delta"] = st_delta;
            j["sigma2"] = st_sigma2;
            write_output(st_out, j.dump(2) + "\n");
        };
    });

    // place
    std::string pl_circuit;
    std::string pl_out = "-";
    PlacementConfig pl_cfg;
    auto *place_cmd = app.add_subcommand("place", "Choose validation points greedily and rewrite the circuit");
    place_cmd->add_option("--circuit", pl_circuit)->required();
    place_cmd->add_option("--budget", pl_cfg.budget)->required();
    place_cmd->add_option("--overlap-penalty", pl_cfg.overlap_penalty)->capture_default_str();
    place_cmd->add_option("--out", pl_out)->capture_default_str();
    place_cmd->callback([&] {
        action = [&] { write_output(pl_out, serialize_circuit(place_measurements(load_circuit_file(pl_circuit), pl_cfg))); };
    });

    // abort-sim
    std::string ab_circuit;
    std::string ab_out = "-";
    NoiseOptions ab_noise;
    double ab_threshold = 0.5;
    std::string ab_strategy = "all";
    std::size_t ab_shots = 1000;
    std::uint64_t ab_seed = 1;
    unsigned ab_workers = 1;
    auto *abort_cmd = app.add_subcommand("abort-sim", "Early-abort simulation report");
    abort_cmd->add_option("--circuit", ab_circuit)->required();
    abort_cmd->add_option("--threshold", ab_threshold)->check(CLI::Range(0.0, 1.0))->capture_default_str();
    abort_cmd->add_option("--strategy", ab_strategy)->check(CLI::IsMember({"final", "all"}))->capture_default_str();
    ab_noise.add_to(abort_cmd);
    abort_cmd->add_option("--shots", ab_shots)->capture_default_str();
    abort_cmd->add_option("--seed", ab_seed)->capture_default_str();
    abort_cmd->add_option("--workers", ab_workers)->capture_default_str();
    abort_cmd->add_option("--out", ab_out)->capture_default_str();
    abort_cmd->callback([&] {
        action = [&] {
            const Circuit c = load_circuit_file(ab_circuit);
            const LightconeSet lcs = lightcone_set(c);
            const NoiseParams np = ab_noise.get();
            const PostSelectPolicy policy{ab_threshold, parse_strategy(ab_strategy)};
            const AbortReport r = simulate_with_abort(c, lcs, np, policy, ab_shots, ab_seed, ab_workers);
            ordered_json j;
            j["strategy"] = ab_strategy;
            j["threshold"] = ab_threshold;
            j["n_shots"] = r.n_shots;
            j["total_gates"] = r.total_gates;
            j["aborted_fraction"] = r.aborted_fraction;
            j["mean_gates_executed"] = r.mean_gates_executed;
            j["mean_gates_saved"] = r.mean_gates_saved;
            j["decisions_consistent"] = r.decisions_consistent;
            write_output(ab_out, j.dump(2) + "\n");
        };
    });

    // run
    std::string run_config;
    std::string run_out = "-";
    std::string run_format;
    std::optional<std::uint64_t> run_seed;
    std::optional<unsigned> run_workers;
    auto *run_cmd = app.add_subcommand("run", "Run a full strategy/threshold study from a config file");
    run_cmd->add_option("--config", run_config)->required();
    run_cmd->add_option("--out", run_out, "Report path; format from extension (.json or .csv)")->capture_default_str();
    run_cmd->add_option("--format", run_format, "Override format")->check(CLI::IsMember({"json", "csv"}));
    run_cmd->add_option("--seed", run_seed, "Override the config seed");
    run_cmd->add_option("--workers", run_workers, "Override the config worker count");
    run_cmd->callback([&] {
        action = [&] {
            ExperimentConfig cfg = load_experiment_config(run_config);
            if (run_seed) {
                cfg.seed = *run_seed;
            }
            if (run_workers) {
                cfg.workers = *run_workers;
            }
            std::string format = run_format;
            if (format.empty()) {
                format = run_out.ends_with(".csv") ? "csv" : "json";
            }
            const ExperimentReport report = run_experiment(cfg);
            write_output(run_out, emit_report(report, format == "csv" ? ReportFormat::Csv : ReportFormat::Json));
        };
    });

    // calibrate
    std::string cal_config;
    std::string cal_out = "-";
    std::string cal_write_config;
    std::vector<double> cal_p{1e-4, 2e-4, 5e-4, 1e-3, 2e-3};
    std::vector<double> cal_q{0.002, 0.005, 0.01, 0.02, 0.05};
    std::vector<double> cal_thresholds;
    std::optional<std::size_t> cal_shots;
    auto *cal_cmd = app.add_subcommand("calibrate", "Sweep (p, q) for a regime matching the headline tradeoff");
    cal_cmd->add_option("--config", cal_config)->required();
    cal_cmd->add_option("--p-grid", cal_p)->capture_default_str();
    cal_cmd->add_option("--q-grid", cal_q)->capture_default_str();
    cal_cmd->add_option("--thresholds", cal_thresholds, "Thresholds to scan (default: log grid 1e-8..1)");
    cal_cmd->add_option("--shots", cal_shots, "Override the config shot count");
    cal_cmd->add_option("--out", cal_out)->capture_default_str();
    cal_cmd->add_option("--write-config", cal_write_config, "Write the best regime as a run config");
    cal_cmd->callback([&] {
        action = [&] {
            ExperimentConfig cfg = load_experiment_config(cal_config);
            if (cal_shots) {
                cfg.n_shots = *cal_shots;
            }
            std::vector<double> thresholds = cal_thresholds;
            if (thresholds.empty()) {
                for (int e = -80; e <= 0; ++e) {
                    thresholds.push_back(std::pow(10.0, e / 10.0));
                }
            }
            const CalibrationResult result = calibrate(cfg, cal_p, cal_q, thresholds, CalibrationTarget{});
            write_output(cal_out, calibration_json(result, cfg));
            if (!cal_write_config.empty() && result.best) {
                ExperimentConfig found = cfg;
                found.noise.p = result.best->noise.p;
                found.noise.q = result.best->noise.q;
                found.thresholds = {0.0, result.best->threshold, 1.0};
                write_output(cal_write_config, serialize_experiment_config(found));
            }
            if (!result.best) {
                std::cerr << "calibrate: no regime met the target\n";
                check_status = 4;
            }
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e);
    }
    try {
        action();
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return check_status;
}
