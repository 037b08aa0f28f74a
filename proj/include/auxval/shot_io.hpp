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

// Line-delimited JSON for shot batches and filter decisions.
//
// A shot file starts with one header object carrying everything a downstream filter
// needs (noise parameters, program-order gate ids, and each measurement's lightcone),
// followed by one object per ShotRecord:
//
//   {"record":"header","format":"auxval-shots/1","noise":{...},"seed":S,"n_shots":N,
//    "gate_ids":[...],"measurements":[{"id":1,"qubit":6,"after":39,"kind":"mid",
//    "cone":[...]}, ...]}
//   {"record":"shot","shot":0,"failed_gates":[],"m":"000","true_premeasure":"000",
//    "corrupted":false,"detectable":false,"final_output_flipped":false}
//
// A decision file has a header {"record":"header","format":"auxval-decisions/1",
// "strategy":"all","threshold":T} and one {"record":"decision","shot":j,
// "decision":"accept"|"reject","likelihood":x} per shot.

#ifndef AUXVAL_SHOT_IO_HPP
#define AUXVAL_SHOT_IO_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "auxval/circuit.hpp"
#include "auxval/lightcone.hpp"
#include "auxval/noise.hpp"
#include "auxval/postselect.hpp"

namespace auxval {

/// A shot batch detached from its circuit.
struct ShotFile {
    NoiseParams noise;
    std::uint64_t seed = 0;
    std::vector<GateId> gate_ids;  // program order
    LightconeSet lightcones;       // masks indexed by position in gate_ids
    std::vector<ShotRecord> shots;
};

struct DecisionFile {
    PostSelectPolicy policy;
    std::vector<Decision> decisions;
};

std::string bits_to_string(const BitVector &bits);
BitVector bits_from_string(const std::string &text);

void write_shot_file(std::ostream &out, const Circuit &c, const LightconeSet &lcs, const NoiseParams &np,
                     std::uint64_t seed, const std::vector<ShotRecord> &shots);
ShotFile read_shot_file(std::istream &in);

void write_decision_file(std::ostream &out, const PostSelectPolicy &policy, const std::vector<Decision> &decisions);
DecisionFile read_decision_file(std::istream &in);

/// Detectability of each shot against the visible cones of a detached batch.
std::vector<bool> detectable_flags(const ShotFile &file, const BitVector &visible);

}  // namespace auxval

#endif  // AUXVAL_SHOT_IO_HPP
