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

#include "auxval/lightcone.hpp"

#include <string>

namespace auxval {

std::vector<GateId> Lightcone::gate_ids(const Circuit &c) const {
    std::vector<GateId> ids;
    ids.reserve(size());
    for (auto pos = gates.find_first(); pos != GateMask::npos; pos = gates.find_next(pos)) {
        ids.push_back(c.gates()[pos].id);
    }
    return ids;
}

std::vector<std::size_t> LightconeSet::sizes() const {
    std::vector<std::size_t> out;
    out.reserve(cones.size());
    for (const Lightcone &cone : cones) {
        out.push_back(cone.size());
    }
    return out;
}

Lightcone backward_lightcone(const Circuit &c, const MeasurementPoint &m) {
    if (m.qubit >= c.num_qubits()) {
        throw CircuitError("measurement on unknown qubit " + std::to_string(m.qubit));
    }
    const std::size_t end = c.gates_before(m);  // throws on unknown gate

    Lightcone cone{m, GateMask(c.num_gates())};
    std::vector<bool> live(c.num_qubits(), false);
    live[m.qubit] = true;
    // Walking backwards, a gate joins the cone iff it touches a qubit that some later
    // cone gate (or the measurement) depends on; its operands then become live.
    for (std::size_t pos = end; pos-- > 0;) {
        const Gate &g = c.gates()[pos];
        bool hit = false;
        for (QubitId q : g.operands) {
            if (live[q]) {
                hit = true;
                break;
            }
        }
        if (hit) {
            cone.gates.set(pos);
            for (QubitId q : g.operands) {
                live[q] = true;
            }
        }
    }
    return cone;
}

LightconeSet lightcone_set(const Circuit &c, const std::vector<MeasurementPoint> &points) {
    LightconeSet out;
    out.num_gates = c.num_gates();
    out.union_mask = GateMask(c.num_gates());
    out.cones.reserve(points.size());
    for (const MeasurementPoint &p : points) {
        out.cones.push_back(backward_lightcone(c, p));
        out.union_mask |= out.cones.back().gates;
    }
    const std::size_t k = out.cones.size();
    out.overlap.assign(k, std::vector<std::size_t>(k, 0));
    for (std::size_t i = 0; i < k; ++i) {
        out.overlap[i][i] = out.cones[i].size();
        for (std::size_t j = i + 1; j < k; ++j) {
            const std::size_t shared = (out.cones[i].gates & out.cones[j].gates).count();
            out.overlap[i][j] = shared;
            out.overlap[j][i] = shared;
        }
    }
    return out;
}

LightconeSet lightcone_set(const Circuit &c) { return lightcone_set(c, c.measurements()); }

}  // namespace auxval
