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

#include "auxval/circuit.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <utility>

namespace auxval {

namespace {

std::string describe(const MeasurementPoint &p) {
    std::string where = p.after_gate ? "after gate " + std::to_string(*p.after_gate) : "at start";
    return "qubit " + std::to_string(p.qubit) + " " + where;
}

}  // namespace

Circuit::Circuit(std::vector<Qubit> qubits, std::vector<Gate> gates,
                 std::vector<MeasurementPoint> measurements,
                 std::vector<MeasurementPoint> candidate_resets)
    : qubits_(std::move(qubits)),
      gates_(std::move(gates)),
      measurements_(std::move(measurements)),
      candidates_(std::move(candidate_resets)) {
    for (std::size_t i = 0; i < qubits_.size(); ++i) {
        if (qubits_[i].id != i) {
            throw CircuitError("qubit ids must be contiguous from 0; found " +
                               std::to_string(qubits_[i].id) + " at index " + std::to_string(i));
        }
    }

    for (std::size_t i = 0; i < gates_.size(); ++i) {
        const Gate &g = gates_[i];
        if (i > 0 && g.id <= gates_[i - 1].id) {
            throw CircuitError("gate ids must be strictly increasing; gate " + std::to_string(g.id) +
                               " follows gate " + std::to_string(gates_[i - 1].id));
        }
        if (g.operands.empty()) {
            throw CircuitError("gate " + std::to_string(g.id) + " has no operands");
        }
        std::set<QubitId> seen;
        for (QubitId q : g.operands) {
            if (q >= qubits_.size()) {
                throw CircuitError("gate " + std::to_string(g.id) + " uses unknown qubit " +
                                   std::to_string(q));
            }
            if (!seen.insert(q).second) {
                throw CircuitError("gate " + std::to_string(g.id) + " repeats qubit " +
                                   std::to_string(q));
            }
        }
        gate_pos_.emplace(g.id, i);
    }

    auto check_point = [&](const MeasurementPoint &p, const char *what) {
        if (p.qubit >= qubits_.size()) {
            throw CircuitError(std::string(what) + " on unknown qubit " + std::to_string(p.qubit));
        }
        if (qubits_[p.qubit].role != QubitRole::Auxiliary) {
            throw CircuitError(std::string(what) + " on data qubit: " + describe(p));
        }
        if (p.after_gate && !gate_pos_.contains(*p.after_gate)) {
            throw CircuitError(std::string(what) + " refers to unknown gate: " + describe(p));
        }
    };

    std::set<std::pair<QubitId, std::int64_t>> candidate_keys;
    for (const MeasurementPoint &p : candidates_) {
        check_point(p, "reset candidate");
        if (!candidate_keys.emplace(p.qubit, p.after_gate ? std::int64_t{*p.after_gate} : -1).second) {
            throw CircuitError("duplicate reset candidate: " + describe(p));
        }
    }

    std::set<std::pair<QubitId, std::int64_t>> measure_keys;
    std::set<std::uint32_t> measure_ids;
    for (const MeasurementPoint &p : measurements_) {
        check_point(p, "measurement");
        const std::pair<QubitId, std::int64_t> key{p.qubit, p.after_gate ? std::int64_t{*p.after_gate} : -1};
        if (!measure_keys.insert(key).second) {
            throw CircuitError("duplicate measurement: " + describe(p));
        }
        if (!measure_ids.insert(p.id).second) {
            throw CircuitError("duplicate measurement id " + std::to_string(p.id));
        }
        if (p.kind != MeasureKind::Final && !candidate_keys.contains(key)) {
            throw CircuitError("mid-circuit measurement is not a reset candidate: " + describe(p));
        }
    }

    std::stable_sort(measurements_.begin(), measurements_.end(),
                     [this](const MeasurementPoint &a, const MeasurementPoint &b) {
                         const std::size_t pa = gates_before(a);
                         const std::size_t pb = gates_before(b);
                         return pa != pb ? pa < pb : a.id < b.id;
                     });
}

std::size_t Circuit::position_of(GateId id) const {
    auto it = gate_pos_.find(id);
    if (it == gate_pos_.end()) {
        throw CircuitError("unknown gate id " + std::to_string(id));
    }
    return it->second;
}

std::size_t Circuit::gates_before(const MeasurementPoint &point) const {
    return point.after_gate ? position_of(*point.after_gate) + 1 : 0;
}

Circuit Circuit::with_measurements(std::vector<MeasurementPoint> measurements) const {
    std::stable_sort(measurements.begin(), measurements.end(),
                     [this](const MeasurementPoint &a, const MeasurementPoint &b) {
                         const std::size_t pa = gates_before(a);
                         const std::size_t pb = gates_before(b);
                         return pa != pb ? pa < pb : a.qubit < b.qubit;
                     });
    for (std::size_t i = 0; i < measurements.size(); ++i) {
        measurements[i].id = static_cast<std::uint32_t>(i + 1);
    }
    return Circuit(qubits_, gates_, std::move(measurements), candidates_);
}

// --- text format ---

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) {
            ++i;
        }
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') {
            ++j;
        }
        if (j > i) {
            out.push_back(line.substr(i, j - i));
        }
        i = j;
    }
    return out;
}

template <typename T>
T parse_int(std::string_view tok, std::size_t line, const char *what) {
    T value{};
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
        throw ParseError(line, std::string("expected ") + what + ", got '" + std::string(tok) + "'");
    }
    return value;
}

// Strips a trailing "# ..." comment that is separated from the content by whitespace.
std::string_view strip_comment(std::string_view line) {
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '#' && (i == 0 || line[i - 1] == ' ' || line[i - 1] == '\t')) {
            return line.substr(0, i);
        }
    }
    return line;
}

struct PendingPoint {
    MeasurementPoint point;
    std::size_t line;
};

std::optional<GateId> parse_position(std::string_view tok, std::size_t line) {
    if (tok == "start") {
        return std::nullopt;
    }
    return parse_int<GateId>(tok, line, "gate id or 'start'");
}

MeasureKind parse_kind(std::string_view tok, std::size_t line) {
    if (tok == "mid") {
        return MeasureKind::MidCircuit;
    }
    if (tok == "final") {
        return MeasureKind::Final;
    }
    throw ParseError(line, "expected kind 'mid' or 'final', got '" + std::string(tok) + "'");
}

}  // namespace

Circuit parse_circuit(std::string_view text) {
    std::optional<std::size_t> n_qubits;
    std::vector<QubitRole> roles;
    std::vector<Gate> gates;
    std::vector<PendingPoint> measures;
    std::vector<PendingPoint> candidates;
    std::set<GateId> gate_ids;

    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        ++line_no;
        const auto tokens = split_ws(strip_comment(text.substr(start, end - start)));
        start = end + 1;
        if (tokens.empty()) {
            continue;
        }

        const std::string_view kw = tokens[0];
        auto need_qubits = [&] {
            if (!n_qubits) {
                throw ParseError(line_no, "'" + std::string(kw) + "' before 'qubits' declaration");
            }
        };
        auto qubit_arg = [&](std::string_view tok) {
            auto q = parse_int<QubitId>(tok, line_no, "qubit id");
            if (q >= *n_qubits) {
                throw ParseError(line_no, "unknown qubit id " + std::to_string(q));
            }
            return q;
        };

        if (kw == "qubits") {
            if (tokens.size() != 2) {
                throw ParseError(line_no, "usage: qubits <n>");
            }
            if (n_qubits) {
                throw ParseError(line_no, "duplicate 'qubits' declaration");
            }
            n_qubits = parse_int<std::size_t>(tokens[1], line_no, "qubit count");
            roles.assign(*n_qubits, QubitRole::Data);
        } else if (kw == "role") {
            need_qubits();
            if (tokens.size() != 3) {
                throw ParseError(line_no, "usage: role <qubit_id> data|aux");
            }
            const QubitId q = qubit_arg(tokens[1]);
            if (tokens[2] == "data") {
                roles[q] = QubitRole::Data;
            } else if (tokens[2] == "aux") {
                roles[q] = QubitRole::Auxiliary;
            } else {
                throw ParseError(line_no, "unknown role '" + std::string(tokens[2]) + "'");
            }
        } else if (kw == "gate") {
            need_qubits();
            if (tokens.size() < 4) {
                throw ParseError(line_no, "usage: gate <id> <label> <q0> [<q1> ...] [block=<b>]");
            }
            Gate g;
            g.id = parse_int<GateId>(tokens[1], line_no, "gate id");
            if (!gates.empty() && g.id <= gates.back().id) {
                throw ParseError(line_no, "gate ids must be strictly increasing; " +
                                              std::to_string(g.id) + " follows " +
                                              std::to_string(gates.back().id));
            }
            g.label = std::string(tokens[2]);
            std::set<QubitId> seen;
            for (std::size_t t = 3; t < tokens.size(); ++t) {
                if (tokens[t].starts_with("block=")) {
                    if (t + 1 != tokens.size()) {
                        throw ParseError(line_no, "block=<b> must be the last field");
                    }
                    g.block = parse_int<std::int64_t>(tokens[t].substr(6), line_no, "block id");
                    continue;
                }
                const QubitId q = qubit_arg(tokens[t]);
                if (!seen.insert(q).second) {
                    throw ParseError(line_no, "gate repeats qubit " + std::to_string(q));
                }
                g.operands.push_back(q);
            }
            if (g.operands.empty()) {
                throw ParseError(line_no, "gate has no operands");
            }
            gate_ids.insert(g.id);
            gates.push_back(std::move(g));
        } else if (kw == "reset_candidate") {
            need_qubits();
            // reset_candidate <qubit> after <gate>|start [kind mid|final]
            if ((tokens.size() != 4 && tokens.size() != 6) || tokens[2] != "after" ||
                (tokens.size() == 6 && tokens[4] != "kind")) {
                throw ParseError(line_no, "usage: reset_candidate <qubit_id> after <gate_id>|start [kind mid|final]");
            }
            MeasurementPoint p;
            p.id = static_cast<std::uint32_t>(candidates.size() + 1);
            p.qubit = qubit_arg(tokens[1]);
            p.after_gate = parse_position(tokens[3], line_no);
            p.kind = tokens.size() == 6 ? parse_kind(tokens[5], line_no) : MeasureKind::MidCircuit;
            candidates.push_back({p, line_no});
        } else if (kw == "measure") {
            need_qubits();
            // measure <id> <qubit> after <gate>|start kind mid|final
            if (tokens.size() != 7 || tokens[3] != "after" || tokens[5] != "kind") {
                throw ParseError(line_no, "usage: measure <meas_id> <qubit_id> after <gate_id>|start kind mid|final");
            }
            MeasurementPoint p;
            p.id = parse_int<std::uint32_t>(tokens[1], line_no, "measurement id");
            p.qubit = qubit_arg(tokens[2]);
            p.after_gate = parse_position(tokens[4], line_no);
            p.kind = parse_kind(tokens[6], line_no);
            measures.push_back({p, line_no});
        } else {
            throw ParseError(line_no, "unknown directive '" + std::string(kw) + "'");
        }
    }

    if (!n_qubits) {
        throw ParseError(line_no, "missing 'qubits' declaration");
    }

    // Semantic checks that depend on the whole document, reported with line numbers.
    auto check_pending = [&](const PendingPoint &pp, const char *what) {
        if (roles[pp.point.qubit] != QubitRole::Auxiliary) {
            throw ParseError(pp.line, std::string(what) + " on data qubit " + std::to_string(pp.point.qubit));
        }
        if (pp.point.after_gate && !gate_ids.contains(*pp.point.after_gate)) {
            throw ParseError(pp.line, std::string(what) + " after unknown gate " +
                                          std::to_string(*pp.point.after_gate));
        }
    };
    for (const auto &pp : candidates) {
        check_pending(pp, "reset candidate");
    }
    for (const auto &pp : measures) {
        check_pending(pp, "measurement");
    }

    std::vector<Qubit> qubits;
    qubits.reserve(*n_qubits);
    for (std::size_t i = 0; i < *n_qubits; ++i) {
        qubits.push_back({static_cast<QubitId>(i), roles[i]});
    }
    std::vector<MeasurementPoint> ms;
    for (const auto &pp : measures) {
        ms.push_back(pp.point);
    }
    std::vector<MeasurementPoint> cs;
    for (const auto &pp : candidates) {
        cs.push_back(pp.point);
    }
    return Circuit(std::move(qubits), std::move(gates), std::move(ms), std::move(cs));
}

std::string serialize_circuit(const Circuit &c) {
    std::ostringstream out;
    auto pos = [](const MeasurementPoint &p) {
        return p.after_gate ? std::to_string(*p.after_gate) : std::string("start");
    };
    auto kind = [](const MeasurementPoint &p) { return p.kind == MeasureKind::Final ? "final" : "mid"; };

    out << "qubits " << c.num_qubits() << '\n';
    for (const Qubit &q : c.qubits()) {
        out << "role " << q.id << (q.role == QubitRole::Auxiliary ? " aux" : " data") << '\n';
    }
    for (const Gate &g : c.gates()) {
        out << "gate " << g.id << ' ' << g.label;
        for (QubitId q : g.operands) {
            out << ' ' << q;
        }
        if (g.block) {
            out << " block=" << *g.block;
        }
        out << '\n';
    }
    for (const MeasurementPoint &p : c.candidate_resets()) {
        out << "reset_candidate " << p.qubit << " after " << pos(p) << " kind " << kind(p) << '\n';
    }
    for (const MeasurementPoint &p : c.measurements()) {
        out << "measure " << p.id << ' ' << p.qubit << " after " << pos(p) << " kind " << kind(p) << '\n';
    }
    return out.str();
}

Circuit load_circuit_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open circuit file '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_circuit(buf.str());
}

void save_circuit_file(const Circuit &c, const std::string &path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write circuit file '" + path + "'");
    }
    out << serialize_circuit(c);
}

// --- uncomputation structure ---

std::string inverse_label(std::string_view label) {
    constexpr std::string_view kSuffix = "_inv";
    if (label.size() > kSuffix.size() && label.ends_with(kSuffix)) {
        return std::string(label.substr(0, label.size() - kSuffix.size()));
    }
    return std::string(label) + std::string(kSuffix);
}

std::vector<BlockCheck> check_uncomputation_structure(const Circuit &c) {
    std::vector<std::int64_t> order;
    std::map<std::int64_t, std::vector<const Gate *>> blocks;
    for (const Gate &g : c.gates()) {
        if (!g.block) {
            throw CircuitError("gate " + std::to_string(g.id) + " has no block id");
        }
        auto [it, inserted] = blocks.try_emplace(*g.block);
        if (inserted) {
            order.push_back(*g.block);
        }
        it->second.push_back(&g);
    }

    std::set<std::pair<QubitId, GateId>> resets;
    for (const MeasurementPoint &p : c.candidate_resets()) {
        if (p.after_gate) {
            resets.emplace(p.qubit, *p.after_gate);
        }
    }

    std::vector<BlockCheck> out;
    for (std::int64_t b : order) {
        const auto &gs = blocks[b];
        BlockCheck check{b, BlockVerdict::Pass, {}};
        const std::size_t n = gs.size();
        if (n % 2 != 0) {
            check.verdict = BlockVerdict::Fail;
            check.reason = "odd gate count " + std::to_string(n);
        }
        for (std::size_t i = 0; check.verdict == BlockVerdict::Pass && i < n / 2; ++i) {
            const Gate &fwd = *gs[i];
            const Gate &inv = *gs[n - 1 - i];
            if (inv.label != inverse_label(fwd.label) || inv.operands != fwd.operands) {
                check.verdict = BlockVerdict::Fail;
                check.reason = "gate " + std::to_string(inv.id) + " does not mirror gate " +
                               std::to_string(fwd.id);
            }
        }
        if (check.verdict == BlockVerdict::Pass) {
            const GateId last = gs.back()->id;
            std::set<QubitId> aux;
            for (const Gate *g : gs) {
                for (QubitId q : g->operands) {
                    if (c.qubits()[q].role == QubitRole::Auxiliary) {
                        aux.insert(q);
                    }
                }
            }
            for (QubitId q : aux) {
                if (!resets.contains({q, last})) {
                    check.verdict = BlockVerdict::Fail;
                    check.reason = "auxiliary " + std::to_string(q) +
                                   " has no reset candidate after gate " + std::to_string(last);
                    break;
                }
            }
        }
        out.push_back(std::move(check));
    }
    return out;
}

}  // namespace auxval
