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

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <variant>

#include "auxval/experiment.hpp"

namespace auxval {

void ExperimentConfig::validate() const {
    if (!circuit_path) {
        generator.validate();
    }
    noise.validate();
    if (strategies.empty()) {
        throw std::invalid_argument("at least one strategy is required");
    }
    for (std::size_t i = 0; i < thresholds.size(); ++i) {
        if (!(thresholds[i] >= 0.0 && thresholds[i] <= 1.0)) {
            throw std::invalid_argument("thresholds must lie in [0, 1]");
        }
        if (i > 0 && !(thresholds[i] > thresholds[i - 1])) {
            throw std::invalid_argument("thresholds must be strictly ascending");
        }
    }
    if (n_shots == 0) {
        throw std::invalid_argument("shots must be at least 1");
    }
    if (!(sigma_sq >= 0.0)) {
        throw std::invalid_argument("sigma2 must be non-negative");
    }
}

namespace {

using Scalar = std::variant<double, std::string, bool>;
using Value = std::variant<Scalar, std::vector<Scalar>>;

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// Cuts a trailing comment that is not inside a quoted string.
std::string_view strip_comment(std::string_view s) {
    bool quoted = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '"') {
            quoted = !quoted;
        } else if (s[i] == '#' && !quoted) {
            return s.substr(0, i);
        }
    }
    return s;
}

Scalar parse_scalar(std::string_view tok, std::size_t line) {
    tok = trim(tok);
    if (tok.size() >= 2 && tok.front() == '"' && tok.back() == '"') {
        return std::string(tok.substr(1, tok.size() - 2));
    }
    if (tok == "true" || tok == "false") {
        return tok == "true";
    }
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size() || tok.empty()) {
        throw std::invalid_argument("config line " + std::to_string(line) + ": cannot parse value '" +
                                    std::string(tok) + "'");
    }
    return v;
}

Value parse_value(std::string_view tok, std::size_t line) {
    tok = trim(tok);
    if (tok.starts_with('[')) {
        if (!tok.ends_with(']')) {
            throw std::invalid_argument("config line " + std::to_string(line) + ": unterminated array");
        }
        std::vector<Scalar> items;
        std::string_view body = trim(tok.substr(1, tok.size() - 2));
        while (!body.empty()) {
            const auto comma = body.find(',');
            items.push_back(parse_scalar(body.substr(0, comma), line));
            if (comma == std::string_view::npos) {
                break;
            }
            body = trim(body.substr(comma + 1));
        }
        return items;
    }
    return parse_scalar(tok, line);
}

struct Reader {
    std::string key;
    std::size_t line;

    [[noreturn]] void fail(const std::string &what) const {
        throw std::invalid_argument("config line " + std::to_string(line) + ": '" + key + "' " + what);
    }
    double number(const Value &v) const {
        const auto *s = std::get_if<Scalar>(&v);
        if (!s || !std::holds_alternative<double>(*s)) {
            fail("expects a number");
        }
        return std::get<double>(*s);
    }
    std::size_t count(const Value &v) const {
        const double d = number(v);
        if (d < 0 || d != static_cast<double>(static_cast<std::uint64_t>(d))) {
            fail("expects a non-negative integer");
        }
        return static_cast<std::size_t>(d);
    }
    std::string string(const Value &v) const {
        const auto *s = std::get_if<Scalar>(&v);
        if (!s || !std::holds_alternative<std::string>(*s)) {
            fail("expects a quoted string");
        }
        return std::get<std::string>(*s);
    }
    std::vector<Scalar> array(const Value &v) const {
        const auto *a = std::get_if<std::vector<Scalar>>(&v);
        if (!a) {
            fail("expects an array");
        }
        return *a;
    }
};

}  // namespace

ExperimentConfig parse_experiment_config(std::string_view text) {
    ExperimentConfig cfg;
    std::size_t line_no = 0;
    std::istringstream in{std::string(text)};
    std::string raw;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string_view line = trim(strip_comment(raw));
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw std::invalid_argument("config line " + std::to_string(line_no) + ": expected key = value");
        }
        const Reader rd{std::string(trim(line.substr(0, eq))), line_no};
        const Value v = parse_value(line.substr(eq + 1), line_no);
        const std::string &k = rd.key;

        if (k == "circuit") {
            cfg.circuit_path = rd.string(v);
        } else if (k == "blocks") {
            cfg.generator.n_blocks = rd.count(v);
        } else if (k == "data") {
            cfg.generator.data_qubits = rd.count(v);
        } else if (k == "aux") {
            cfg.generator.aux_qubits = rd.count(v);
        } else if (k == "half_gates") {
            cfg.generator.gates_per_block_half = rd.count(v);
        } else if (k == "reuse") {
            cfg.generator.aux_reuse = parse_aux_reuse(rd.string(v));
        } else if (k == "gen_seed") {
            cfg.generator.seed = rd.count(v);
        } else if (k == "p") {
            cfg.noise.p = rd.number(v);
        } else if (k == "r") {
            cfg.noise.r = rd.number(v);
        } else if (k == "q") {
            cfg.noise.q = rd.number(v);
        } else if (k == "delta_flip_prob") {
            cfg.noise.delta_flip_prob = rd.number(v);
        } else if (k == "strategies") {
            cfg.strategies.clear();
            for (const Scalar &s : rd.array(v)) {
                if (!std::holds_alternative<std::string>(s)) {
                    rd.fail("expects strategy names");
                }
                cfg.strategies.push_back(parse_strategy(std::get<std::string>(s)));
            }
        } else if (k == "thresholds") {
            cfg.thresholds.clear();
            for (const Scalar &s : rd.array(v)) {
                if (!std::holds_alternative<double>(s)) {
                    rd.fail("expects numbers");
                }
                cfg.thresholds.push_back(std::get<double>(s));
            }
        } else if (k == "shots") {
            cfg.n_shots = rd.count(v);
        } else if (k == "seed") {
            cfg.seed = rd.count(v);
        } else if (k == "delta") {
            cfg.delta = rd.number(v);
        } else if (k == "sigma2") {
            cfg.sigma_sq = rd.number(v);
        } else if (k == "workers") {
            cfg.workers = static_cast<unsigned>(rd.count(v));
        } else {
            rd.fail("is not a recognized key");
        }
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig load_experiment_config(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open config file '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_experiment_config(buf.str());
}

namespace {

std::string num(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    std::string s(buf, ptr);
    // Keep integral values readable as floats so they reparse as numbers either way.
    if (s.find_first_of(".eEn") == std::string::npos) {
        s += ".0";
    }
    return s;
}

}  // namespace

std::string serialize_experiment_config(const ExperimentConfig &cfg) {
    std::ostringstream out;
    if (cfg.circuit_path) {
        out << "circuit = \"" << *cfg.circuit_path << "\"\n";
    }
    const GeneratorConfig &g = cfg.generator;
    out << "blocks = " << g.n_blocks << '\n'
        << "data = " << g.data_qubits << '\n'
        << "aux = " << g.aux_qubits << '\n'
        << "half_gates = " << g.gates_per_block_half << '\n'
        << "reuse = \"" << aux_reuse_name(g.aux_reuse) << "\"\n"
        << "gen_seed = " << g.seed << '\n'
        << "p = " << num(cfg.noise.p) << '\n'
        << "r = " << num(cfg.noise.r) << '\n'
        << "q = " << num(cfg.noise.q) << '\n';
    if (cfg.noise.delta_flip_prob) {
        out << "delta_flip_prob = " << num(*cfg.noise.delta_flip_prob) << '\n';
    }
    out << "strategies = [";
    for (std::size_t i = 0; i < cfg.strategies.size(); ++i) {
        out << (i ? ", " : "") << '"' << strategy_name(cfg.strategies[i]) << '"';
    }
    out << "]\nthresholds = [";
    for (std::size_t i = 0; i < cfg.thresholds.size(); ++i) {
        out << (i ? ", " : "") << num(cfg.thresholds[i]);
    }
    out << "]\n"
        << "shots = " << cfg.n_shots << '\n'
        << "seed = " << cfg.seed << '\n'
        << "delta = " << num(cfg.delta) << '\n'
        << "sigma2 = " << num(cfg.sigma_sq) << '\n'
        << "workers = " << cfg.workers << '\n';
    return out.str();
}

}  // namespace auxval
