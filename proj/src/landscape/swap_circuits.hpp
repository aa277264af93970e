#pragma once

#include "qcore/circuit.hpp"

namespace qlab::landscape {

// target U_S = product over j in S of SWAP between the first and last qubit
// of block j (qubits 4j and 4j+3)
struct SwapTargetSpec {
    int n = 0;
    std::vector<int> blocks;  // subset of {0 .. floor(n/4)-1}

    int block_count() const { return n / 4; }  // trailing n mod 4 qubits are ignored
    void validate() const;
};

qlab::Circuit build_swap_target(const SwapTargetSpec& spec);

enum class AnsatzKind {
    ThetaSwapLayers,   // three layers of exp(i theta SWAP) on alternating pairs
    SwapPowBrickwork,  // two repetitions of [even-pair SWAP^p layer, odd-pair layer]
};

size_t theta_dim(AnsatzKind kind, int n);

// circuit whose unitary matches the defining product (up to the global phase
// an exp(i theta SWAP) factor carries)
qlab::Circuit ansatz_unitary(AnsatzKind kind, int n, const std::vector<double>& theta);

// Parameter indices owned by one 4-qubit block (the block-local ansatz keeps
// exactly these and zeroes the rest).
std::vector<size_t> block_param_indices(AnsatzKind kind, int n, int block);

// The explicit family of configurations indexed by x < 2^|S|: blocks whose
// bit is set get all five block angles at pi/2, everything else 0. The cost
// against U_S is |S| - popcount(x).
std::vector<double> enumerate_theta_x(const SwapTargetSpec& spec, uint64_t x);

}  // namespace qlab::landscape
