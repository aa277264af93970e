#pragma once

#include "qcore/circuit.hpp"

namespace qlab::ffward {

// 4-qubit trainable template: five layers of per-qubit R(x,y,z) = RX RY RZ
// interleaved with the fixed CZ pattern (0,1)(2,3) | (1,2) | (1,2) |
// (0,1)(2,3). 20 R gates, 60 parameters. Some internal rotations are
// redundant; the template is kept as-is.
constexpr int kBlockQubits = 4;
constexpr size_t kBlockParams = 60;

qlab::Circuit block_ansatz(const std::vector<double>& params);

}  // namespace qlab::ffward
