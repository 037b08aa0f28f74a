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

#include <random>

#include "gtest/gtest.h"

#include "auxval/generator.hpp"
#include "test_util.hpp"

using namespace auxval;

namespace {

std::size_t parse_error_line(const std::string &text) {
    try {
        parse_circuit(text);
    } catch (const ParseError &e) {
        return e.line();
    }
    return 0;
}

}  // namespace

TEST(circuit_parse, minimal_file) {
    const Circuit c = parse_circuit(
        "qubits 2\n"
        "role 1 aux\n"
        "gate 0 cx 0 1\n"
        "measure 1 1 after 0 kind final\n");
    EXPECT_EQ(c.num_qubits(), 2U);
    EXPECT_EQ(c.num_gates(), 1U);
    ASSERT_EQ(c.measurements().size(), 1U);
    EXPECT_EQ(c.measurements()[0].kind, MeasureKind::Final);
    EXPECT_EQ(c.measurements()[0].after_gate, GateId{0});
    EXPECT_EQ(c.qubits()[0].role, QubitRole::Data);
    EXPECT_EQ(c.qubits()[1].role, QubitRole::Auxiliary);
}

TEST(circuit_parse, comments_blocks_and_candidates) {
    const Circuit c = parse_circuit(
        "# header\n"
        "qubits 3   # two data, one aux\n"
        "role 2 aux\n"
        "gate 4 a 2 0 block=0\n"
        "gate 9 a_inv 2 0 block=0\n"
        "reset_candidate 2 after 9\n"
        "reset_candidate 2 after start\n"
        "measure 7 2 after 9 kind mid\n");
    EXPECT_EQ(c.gates()[1].block, std::int64_t{0});
    EXPECT_EQ(c.gates()[1].operands, (std::vector<QubitId>{2, 0}));
    ASSERT_EQ(c.candidate_resets().size(), 2U);
    EXPECT_EQ(c.measurements()[0].id, 7U);
    EXPECT_EQ(c.position_of(9), 1U);
    EXPECT_EQ(c.gates_before(c.candidate_resets()[1]), 0U);
    EXPECT_EQ(c.gates_before(c.candidate_resets()[0]), 2U);
}

TEST(circuit_parse, data_qubit_measurement_is_rejected) {
    EXPECT_EQ(parse_error_line("qubits 2\nrole 1 aux\ngate 0 cx 0 1\nmeasure 1 0 after 0 kind final\n"), 4U);
}

TEST(circuit_parse, errors_carry_line_numbers) {
    EXPECT_EQ(parse_error_line("gate 0 x 0\n"), 1U);
    EXPECT_EQ(parse_error_line("qubits 2\n\nqubits 3\n"), 3U);
    EXPECT_EQ(parse_error_line("qubits 2\nrole 5 aux\n"), 2U);
    EXPECT_EQ(parse_error_line("qubits 2\nrole 1 ancilla\n"), 2U);
    EXPECT_EQ(parse_error_line("qubits 2\ngate 1 x 0\ngate 1 y 1\n"), 3U);
    EXPECT_EQ(parse_error_line("qubits 2\ngate 0 x 0 0\n"), 2U);
    EXPECT_EQ(parse_error_line("qubits 2\ngate 0 x 7\n"), 2U);
    EXPECT_EQ(parse_error_line("qubits 2\ngate 0 x\n"), 2U);
    EXPECT_EQ(parse_error_line("qubits 2\nrole 1 aux\ngate 0 x 1\nmeasure 1 1 after 3 kind mid\n"), 4U);
    EXPECT_EQ(parse_error_line("qubits 2\nrole 1 aux\nmeasure 1 1 after start kind sideways\n"), 3U);
    EXPECT_EQ(parse_error_line("qubits 2\nfrobnicate\n"), 2U);
    EXPECT_THROW(parse_circuit(""), ParseError);
}

TEST(circuit_parse, structural_errors) {
    // Mid-circuit measurement without a matching candidate.
    EXPECT_ANY_THROW(parse_circuit("qubits 2\nrole 1 aux\ngate 0 x 1\nmeasure 1 1 after 0 kind mid\n"));
    // Duplicate measurement ids.
    EXPECT_ANY_THROW(parse_circuit(
        "qubits 2\nrole 1 aux\ngate 0 x 1\ngate 1 x 1\n"
        "measure 1 1 after 0 kind final\nmeasure 1 1 after 1 kind final\n"));
}

TEST(circuit_serialize, empty_gate_list) {
    const Circuit c({{0, QubitRole::Data}}, {}, {}, {});
    const std::string text = serialize_circuit(c);
    EXPECT_EQ(parse_circuit(text), c);
    EXPECT_EQ(text, serialize_circuit(c));
}

TEST(circuit_serialize, round_trip_generated) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        GeneratorConfig cfg;
        cfg.n_blocks = 1 + seed % 4;
        cfg.aux_qubits = 2 + seed % 3;
        cfg.gates_per_block_half = 3 + seed;
        cfg.aux_reuse = seed % 2 ? AuxReuse::ReuseAcrossBlocks : AuxReuse::FreshPerBlock;
        cfg.aux_qubits = cfg.aux_reuse == AuxReuse::FreshPerBlock ? cfg.n_blocks * 2 : cfg.aux_qubits;
        cfg.seed = seed;
        const Circuit c = generate(cfg);
        const std::string text = serialize_circuit(c);
        const Circuit back = parse_circuit(text);
        EXPECT_EQ(back, c) << "seed " << seed;
        EXPECT_EQ(serialize_circuit(back), text);
    }
}

TEST(circuit_serialize, round_trip_random) {
    std::mt19937_64 gen(42);
    for (int trial = 0; trial < 200; ++trial) {
        testutil::RandomCircuitSpec spec;
        spec.gates = trial % 40;
        spec.measurements = trial % 5;
        const Circuit c = testutil::random_circuit(gen, spec);
        EXPECT_EQ(parse_circuit(serialize_circuit(c)), c);
    }
}

TEST(circuit, with_measurements_sorts_and_renumbers) {
    const Circuit c = generate(GeneratorConfig{});
    std::vector<MeasurementPoint> pts(c.candidate_resets().rbegin(), c.candidate_resets().rend());
    const Circuit w = c.with_measurements(pts);
    ASSERT_EQ(w.measurements().size(), pts.size());
    for (std::size_t i = 0; i < w.measurements().size(); ++i) {
        EXPECT_EQ(w.measurements()[i].id, i + 1);
        if (i > 0) {
            EXPECT_LE(w.gates_before(w.measurements()[i - 1]), w.gates_before(w.measurements()[i]));
        }
    }
}

TEST(uncomputation, palindrome_passes) {
    const Circuit c = parse_circuit(
        "qubits 2\nrole 1 aux\n"
        "gate 0 a 0 1 block=0\ngate 1 b 1 block=0\ngate 2 b_inv 1 block=0\ngate 3 a_inv 0 1 block=0\n"
        "reset_candidate 1 after 3\n");
    const auto checks = check_uncomputation_structure(c);
    ASSERT_EQ(checks.size(), 1U);
    EXPECT_EQ(checks[0].verdict, BlockVerdict::Pass);
    EXPECT_TRUE(checks[0].reason.empty());
}

TEST(uncomputation, failures) {
    const std::string head = "qubits 2\nrole 1 aux\n";
    auto verdict = [&](const std::string &body) {
        return check_uncomputation_structure(parse_circuit(head + body)).at(0).verdict;
    };
    EXPECT_EQ(verdict("gate 0 a 0 1 block=0\ngate 1 b 1 block=0\ngate 2 a_inv 0 1 block=0\n"
                      "reset_candidate 1 after 2\n"),
              BlockVerdict::Fail);
    EXPECT_EQ(verdict("gate 0 a 0 1 block=0\ngate 1 b 1 block=0\ngate 2 a_inv 1 block=0\ngate 3 b_inv 0 1 block=0\n"
                      "reset_candidate 1 after 3\n"),
              BlockVerdict::Fail);
    EXPECT_EQ(verdict("gate 0 a 0 1 block=0\ngate 1 a_inv 1 0 block=0\nreset_candidate 1 after 1\n"),
              BlockVerdict::Fail);
    EXPECT_EQ(verdict("gate 0 a 0 1 block=0\ngate 1 a_inv 0 1 block=0\n"), BlockVerdict::Fail);
    EXPECT_THROW(check_uncomputation_structure(parse_circuit(head + "gate 0 a 0 1\n")), CircuitError);
}

TEST(uncomputation, inverse_label) {
    EXPECT_EQ(inverse_label("cx"), "cx_inv");
    EXPECT_EQ(inverse_label("cx_inv"), "cx");
}

TEST(uncomputation, generated_circuits_pass) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        GeneratorConfig cfg;
        cfg.n_blocks = 1 + seed % 5;
        cfg.gates_per_block_half = 1 + seed % 7;
        cfg.aux_reuse = seed % 3 == 0 ? AuxReuse::FreshPerBlock : AuxReuse::ReuseAcrossBlocks;
        cfg.aux_qubits = cfg.aux_reuse == AuxReuse::FreshPerBlock ? cfg.n_blocks : 3;
        cfg.seed = seed;
        for (const BlockCheck &b : check_uncomputation_structure(generate(cfg))) {
            EXPECT_EQ(b.verdict, BlockVerdict::Pass) << "seed " << seed << " block " << b.block << ": " << b.reason;
        }
    }
}
