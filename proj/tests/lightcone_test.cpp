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

#include <random>
#include <set>

#include "gtest/gtest.h"

#include "auxval/generator.hpp"
#include "test_util.hpp"

using namespace auxval;

namespace {

std::set<GateId> as_set(const Circuit &c, const Lightcone &cone) {
    const auto ids = cone.gate_ids(c);
    return {ids.begin(), ids.end()};
}

}  // namespace

TEST(lightcone, start_is_empty) {
    const Circuit c = parse_circuit(
        "qubits 2\nrole 1 aux\ngate 0 x 0 1\nreset_candidate 1 after start\nmeasure 1 1 after start kind mid\n");
    const LightconeSet lcs = lightcone_set(c);
    EXPECT_EQ(lcs.cones[0].size(), 0U);
    EXPECT_EQ(lcs.union_size(), 0U);
}

TEST(lightcone, single_qubit_chain) {
    const Circuit c = parse_circuit(
        "qubits 1\nrole 0 aux\n"
        "gate 1 x 0\ngate 2 x 0\ngate 3 x 0\ngate 4 x 0\ngate 5 x 0\n"
        "measure 1 0 after 5 kind final\n");
    EXPECT_EQ(backward_lightcone(c, c.measurements()[0]).size(), 5U);
}

TEST(lightcone, later_gates_and_mid_measurements) {
    // Gate 2 follows the measurement; gate 1 reaches qubit 2 only through qubit 0.
    const Circuit c = parse_circuit(
        "qubits 4\nrole 2 aux\nrole 3 aux\n"
        "gate 0 a 1\ngate 1 b 0 1\ngate 2 c 0 2\ngate 3 d 2 0\ngate 4 e 3\n"
        "reset_candidate 2 after 2\nreset_candidate 2 after 3\nreset_candidate 3 after 4\n"
        "measure 1 2 after 2 kind mid\nmeasure 2 2 after 3 kind mid\nmeasure 3 3 after 4 kind mid\n");
    const LightconeSet lcs = lightcone_set(c);
    EXPECT_EQ(as_set(c, lcs.cones[0]), (std::set<GateId>{0, 1, 2}));
    EXPECT_EQ(as_set(c, lcs.cones[1]), (std::set<GateId>{0, 1, 2, 3}));
    EXPECT_EQ(as_set(c, lcs.cones[2]), (std::set<GateId>{4}));
    EXPECT_EQ(lcs.overlap[0][2], 0U);
    EXPECT_EQ(lcs.overlap[0][1], 3U);
    EXPECT_EQ(lcs.overlap[1][1], 4U);
    EXPECT_EQ(lcs.union_size(), 5U);
    EXPECT_DOUBLE_EQ(lcs.union_fraction(), 1.0);
    EXPECT_EQ(lcs.sizes(), (std::vector<std::size_t>{3, 4, 1}));
}

TEST(lightcone, identical_points_have_full_overlap) {
    const Circuit c = generate(GeneratorConfig{});
    const MeasurementPoint p = c.candidate_resets().at(1);
    const LightconeSet lcs = lightcone_set(c, {p, p});
    EXPECT_EQ(lcs.overlap[0][1], lcs.cones[0].size());
    EXPECT_EQ(lcs.overlap[1][0], lcs.cones[1].size());
}

TEST(lightcone, matches_reachability_oracle_on_generated) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        GeneratorConfig cfg;
        cfg.n_blocks = 3;
        cfg.seed = seed;
        cfg.aux_reuse = seed % 2 ? AuxReuse::FreshPerBlock : AuxReuse::ReuseAcrossBlocks;
        cfg.aux_qubits = 3;
        const Circuit c = generate(cfg);
        const auto reach = testutil::reachability(c);
        const LightconeSet lcs = lightcone_set(c);
        std::set<GateId> oracle_union;
        for (const Lightcone &cone : lcs.cones) {
            const auto expect = testutil::oracle_cone(c, reach, cone.point);
            EXPECT_EQ(as_set(c, cone), expect);
            oracle_union.insert(expect.begin(), expect.end());
        }
        EXPECT_EQ(lcs.union_size(), oracle_union.size());
    }
}

TEST(lightcone, matches_reachability_oracle_on_random) {
    std::mt19937_64 gen(7);
    for (int trial = 0; trial < 60; ++trial) {
        testutil::RandomCircuitSpec spec;
        spec.data = 2 + trial % 5;
        spec.aux = 1 + trial % 4;
        spec.gates = 5 * trial;
        spec.measurements = 6;
        spec.max_arity = 1 + trial % 3;
        const Circuit c = testutil::random_circuit(gen, spec);
        const auto reach = testutil::reachability(c);
        for (const MeasurementPoint &m : c.measurements()) {
            EXPECT_EQ(as_set(c, backward_lightcone(c, m)), testutil::oracle_cone(c, reach, m)) << "trial " << trial;
        }
    }
}

TEST(lightcone, later_point_contains_earlier) {
    std::mt19937_64 gen(3);
    testutil::RandomCircuitSpec spec;
    spec.gates = 80;
    spec.measurements = 0;
    const Circuit c = testutil::random_circuit(gen, spec);
    for (QubitId q = static_cast<QubitId>(spec.data); q < c.num_qubits(); ++q) {
        GateMask prev(c.num_gates());
        MeasurementPoint p;
        p.qubit = q;
        for (const Gate &g : c.gates()) {
            p.after_gate = g.id;
            const Lightcone cone = backward_lightcone(c, p);
            EXPECT_TRUE(prev.is_subset_of(cone.gates));
            prev = cone.gates;
        }
    }
}

TEST(lightcone, foreign_point_is_rejected) {
    const Circuit c = generate(GeneratorConfig{});
    MeasurementPoint p;
    p.qubit = static_cast<QubitId>(c.num_qubits());
    p.after_gate = 0;
    EXPECT_THROW(backward_lightcone(c, p), CircuitError);
    p.qubit = static_cast<QubitId>(c.num_qubits() - 1);
    p.after_gate = 100000;
    EXPECT_THROW(backward_lightcone(c, p), CircuitError);
}
