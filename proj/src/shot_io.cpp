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

#include "auxval/shot_io.hpp"

#include <istream>
#include <ostream>
#include <stdexcept>
#include <unordered_map>

#include "json.hpp"

namespace auxval {

using nlohmann::ordered_json;

namespace {

constexpr const char *kShotFormat = "auxval-shots/1";
constexpr const char *kDecisionFormat = "auxval-decisions/1";

ordered_json noise_json(const NoiseParams &np) {
    ordered_json j;
    j["p"] = np.p;
    j["r"] = np.r;
    j["q"] = np.q;
    j["delta_flip_prob"] = np.delta_flip();
    return j;
}

NoiseParams noise_from_json(const ordered_json &j) {
    NoiseParams np;
    np.p = j.at("p").get<double>();
    np.r = j.at("r").get<double>();
    np.q = j.at("q").get<double>();
    if (j.contains("delta_flip_prob")) {
        np.delta_flip_prob = j.at("delta_flip_prob").get<double>();
    }
    np.validate();
    return np;
}

// Next non-blank line as JSON; `line_no` tracks the 1-based number of the last line read.
ordered_json read_line(std::istream &in, std::size_t &line_no, bool &eof) {
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        try {
            return ordered_json::parse(line);
        } catch (const ordered_json::parse_error &e) {
            throw std::runtime_error("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    eof = true;
    return {};
}

void expect_header(const ordered_json &j, const char *format) {
    if (!j.is_object() || j.value("record", "") != "header" || j.value("format", "") != format) {
        throw std::runtime_error(std::string("missing or unexpected header; expected format ") + format);
    }
}

}  // namespace

std::string bits_to_string(const BitVector &bits) {
    std::string s(bits.size(), '0');
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i]) {
            s[i] = '1';
        }
    }
    return s;
}

BitVector bits_from_string(const std::string &text) {
    BitVector bits(text.size(), false);
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '1') {
            bits[i] = true;
        } else if (text[i] != '0') {
            throw std::runtime_error("bit string contains '" + std::string(1, text[i]) + "'");
        }
    }
    return bits;
}

void write_shot_file(std::ostream &out, const Circuit &c, const LightconeSet &lcs, const NoiseParams &np,
                     std::uint64_t seed, const std::vector<ShotRecord> &shots) {
    ordered_json header;
    header["record"] = "header";
    header["format"] = kShotFormat;
    header["noise"] = noise_json(np);
    header["seed"] = seed;
    header["n_shots"] = shots.size();
    ordered_json ids = ordered_json::array();
    for (const Gate &g : c.gates()) {
        ids.push_back(g.id);
    }
    header["gate_ids"] = std::move(ids);
    ordered_json ms = ordered_json::array();
    for (const Lightcone &cone : lcs.cones) {
        ordered_json m;
        m["id"] = cone.point.id;
        m["qubit"] = cone.point.qubit;
        m["after"] = cone.point.after_gate ? ordered_json(*cone.point.after_gate) : ordered_json(nullptr);
        m["kind"] = cone.point.kind == MeasureKind::Final ? "final" : "mid";
        m["cone"] = cone.gate_ids(c);
        ms.push_back(std::move(m));
    }
    header["measurements"] = std::move(ms);
    out << header.dump() << '\n';

    for (std::size_t j = 0; j < shots.size(); ++j) {
        const ShotRecord &s = shots[j];
        ordered_json rec;
        rec["record"] = "shot";
        rec["shot"] = j;
        rec["failed_gates"] = s.failed_gates;
        rec["m"] = bits_to_string(s.m);
        rec["true_premeasure"] = bits_to_string(s.true_premeasure);
        rec["corrupted"] = s.corrupted;
        rec["detectable"] = s.detectable;
        rec["final_output_flipped"] = s.final_output_flipped;
        out << rec.dump() << '\n';
    }
}

ShotFile read_shot_file(std::istream &in) {
    bool eof = false;
    std::size_t line_no = 0;
    const ordered_json header = read_line(in, line_no, eof);
    expect_header(header, kShotFormat);

    ShotFile file;
    file.noise = noise_from_json(header.at("noise"));
    file.seed = header.at("seed").get<std::uint64_t>();
    file.gate_ids = header.at("gate_ids").get<std::vector<GateId>>();
    std::unordered_map<GateId, std::size_t> pos;
    for (std::size_t i = 0; i < file.gate_ids.size(); ++i) {
        pos.emplace(file.gate_ids[i], i);
    }

    LightconeSet &lcs = file.lightcones;
    lcs.num_gates = file.gate_ids.size();
    lcs.union_mask = GateMask(lcs.num_gates);
    for (const auto &m : header.at("measurements")) {
        Lightcone cone{};
        cone.point.id = m.at("id").get<std::uint32_t>();
        cone.point.qubit = m.at("qubit").get<QubitId>();
        if (!m.at("after").is_null()) {
            cone.point.after_gate = m.at("after").get<GateId>();
        }
        cone.point.kind = m.at("kind").get<std::string>() == "final" ? MeasureKind::Final : MeasureKind::MidCircuit;
        cone.gates = GateMask(lcs.num_gates);
        for (GateId id : m.at("cone").get<std::vector<GateId>>()) {
            auto it = pos.find(id);
            if (it == pos.end()) {
                throw std::runtime_error("lightcone refers to unknown gate " + std::to_string(id));
            }
            cone.gates.set(it->second);
        }
        lcs.union_mask |= cone.gates;
        lcs.cones.push_back(std::move(cone));
    }
    const std::size_t k = lcs.cones.size();
    lcs.overlap.assign(k, std::vector<std::size_t>(k, 0));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            lcs.overlap[i][j] = (lcs.cones[i].gates & lcs.cones[j].gates).count();
        }
    }

    while (true) {
        const ordered_json rec = read_line(in, line_no, eof);
        if (eof) {
            break;
        }
        if (rec.value("record", "") != "shot") {
            throw std::runtime_error("line " + std::to_string(line_no) + ": expected a shot record");
        }
        ShotRecord s;
        s.failed_gates = rec.at("failed_gates").get<std::vector<GateId>>();
        s.m = bits_from_string(rec.at("m").get<std::string>());
        s.true_premeasure = bits_from_string(rec.at("true_premeasure").get<std::string>());
        s.corrupted = rec.at("corrupted").get<bool>();
        s.detectable = rec.at("detectable").get<bool>();
        s.final_output_flipped = rec.at("final_output_flipped").get<bool>();
        if (s.m.size() != k || s.true_premeasure.size() != k) {
            throw std::runtime_error("line " + std::to_string(line_no) + ": outcome vector length mismatch");
        }
        file.shots.push_back(std::move(s));
    }
    return file;
}

void write_decision_file(std::ostream &out, const PostSelectPolicy &policy, const std::vector<Decision> &decisions) {
    ordered_json header;
    header["record"] = "header";
    header["format"] = kDecisionFormat;
    header["strategy"] = strategy_name(policy.strategy);
    header["threshold"] = policy.threshold;
    out << header.dump() << '\n';
    for (std::size_t j = 0; j < decisions.size(); ++j) {
        ordered_json rec;
        rec["record"] = "decision";
        rec["shot"] = j;
        rec["decision"] = decisions[j].accepted() ? "accept" : "reject";
        rec["likelihood"] = decisions[j].likelihood;
        out << rec.dump() << '\n';
    }
}

DecisionFile read_decision_file(std::istream &in) {
    bool eof = false;
    std::size_t line_no = 0;
    const ordered_json header = read_line(in, line_no, eof);
    expect_header(header, kDecisionFormat);
    DecisionFile file;
    file.policy.strategy = parse_strategy(header.at("strategy").get<std::string>());
    file.policy.threshold = header.at("threshold").get<double>();
    while (true) {
        const ordered_json rec = read_line(in, line_no, eof);
        if (eof) {
            break;
        }
        const std::string verdict = rec.at("decision").get<std::string>();
        if (verdict != "accept" && verdict != "reject") {
            throw std::runtime_error("line " + std::to_string(line_no) + ": unknown decision '" + verdict + "'");
        }
        file.decisions.push_back({verdict == "accept" ? Verdict::Accept : Verdict::Reject,
                                  rec.at("likelihood").get<double>()});
    }
    return file;
}

std::vector<bool> detectable_flags(const ShotFile &file, const BitVector &visible) {
    GateMask coverage(file.gate_ids.size());
    for (std::size_t i = 0; i < file.lightcones.size(); ++i) {
        if (visible.at(i)) {
            coverage |= file.lightcones.cones[i].gates;
        }
    }
    std::unordered_map<GateId, std::size_t> pos;
    for (std::size_t i = 0; i < file.gate_ids.size(); ++i) {
        pos.emplace(file.gate_ids[i], i);
    }
    std::vector<bool> out(file.shots.size(), false);
    for (std::size_t j = 0; j < file.shots.size(); ++j) {
        for (GateId id : file.shots[j].failed_gates) {
            auto it = pos.find(id);
            if (it != pos.end() && coverage.test(it->second)) {
                out[j] = true;
                break;
            }
        }
    }
    return out;
}

}  // namespace auxval
