#pragma once

#include "idqnn/model.hpp"

namespace qlab::idqnn {

// 1D deep circuit in layered form: every round is a Hadamard layer on all
// qubits, a layer of independent Z-rotations, and a set of nearest-neighbor
// CZ gates on the line. An optional per-round Z-injection mask turns the
// single circuit into the random family the shallow model samples from.
struct LayeredDeepCircuit {
    struct Round {
        bool hadamard_layer = true;        // the exact mapping needs H everywhere
        std::vector<double> rz;            // one angle per qubit
        std::vector<std::pair<int, int>> cz;  // nearest neighbors on the line
    };
    int num_qubits = 0;
    std::vector<Round> rounds;

    void validate() const;
};

struct LayeredMapping {
    IdqnnModel model;              // 2D lattice, dims {rounds, qubits}
    std::vector<uint8_t> x_template;  // all-zero input for the sampling equivalence
};

// The shallow model whose all-zero-input sampling equals drawing the
// injection masks uniformly and running the injected deep circuit: the first
// (r-1)*m output bits are the masks, the last m bits are the X-basis readout
// of the injected circuit on |0^m>.
LayeredMapping build_idqnn_from_layered(const LayeredDeepCircuit& circuit);

// X-basis readout distribution of the injected circuit on |0^m>;
// injections[t] is the mask applied after round t (t = 0 .. rounds-2).
std::vector<double> layered_output_distribution(const LayeredDeepCircuit& circuit,
                                                const std::vector<uint64_t>& injections);

}  // namespace qlab::idqnn
