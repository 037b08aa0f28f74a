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

#ifndef AUXVAL_LIGHTCONE_HPP
#define AUXVAL_LIGHTCONE_HPP

#include <cstddef>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "auxval/circuit.hpp"

namespace auxval {

/// Set of gates, indexed by program-order position (not gate id).
using GateMask = boost::dynamic_bitset<>;

/// Backward lightcone of one measurement point.
struct Lightcone {
    MeasurementPoint point;
    GateMask gates;

    std::size_t size() const { return gates.count(); }
    /// Gate ids in program order.
    std::vector<GateId> gate_ids(const Circuit &c) const;
};

/// Lightcones of a list of measurement points plus pairwise overlap statistics.
struct LightconeSet {
    std::vector<Lightcone> cones;
    /// overlap[i][j] = |cone_i ∩ cone_j|; the diagonal holds the cone sizes.
    std::vector<std::vector<std::size_t>> overlap;
    GateMask union_mask;
    std::size_t num_gates = 0;

    std::size_t size() const { return cones.size(); }
    std::size_t union_size() const { return union_mask.count(); }
    double union_fraction() const {
        return num_gates == 0 ? 0.0 : static_cast<double>(union_size()) / static_cast<double>(num_gates);
    }
    /// Cone sizes G_i in measurement order.
    std::vector<std::size_t> sizes() const;
};

/// Gates that can causally reach `m`: backward closure over shared operands, starting
/// from m's qubit at m's position. Throws CircuitError if `m` does not refer to `c`.
Lightcone backward_lightcone(const Circuit &c, const MeasurementPoint &m);

/// Lightcones of `c.measurements()`.
LightconeSet lightcone_set(const Circuit &c);
/// Lightcones of an arbitrary list of points on `c` (e.g. its reset candidates).
LightconeSet lightcone_set(const Circuit &c, const std::vector<MeasurementPoint> &points);

}  // namespace auxval

#endif  // AUXVAL_LIGHTCONE_HPP
