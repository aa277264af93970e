#pragma once

#include "ffward/block_ansatz.hpp"
#include "ffward/hamiltonian.hpp"
#include "landscape/optimize.hpp"
#include "shadow/dataset.hpp"

namespace qlab::ffward {

struct Mode1Config {
    int restarts = 8;
    landscape::OptimizerConfig optimizer;  // BGD defaults for the deterministic loss
    double residual_target = 1e-4;         // stop restarting below this per-block loss
    int window_limit = 12;

    Mode1Config() {
        optimizer.kind = landscape::OptimizerKind::Bgd;
        optimizer.learning_rate = 0.3;
    }
};

struct BlockInversion {
    int block = 0;                  // block index (qubits 4b .. 4b+3)
    std::vector<double> params;
    double residual = 0.0;          // summed per-qubit channel deviation at the optimum
    std::vector<double> per_qubit;  // deviation per block qubit
};

struct CompiledEvolution {
    int n = 0;                       // system size; the circuit acts on 2n qubits
    double t = 0.0;
    qlab::Circuit circuit;           // system on 0..n-1, ancillas on n..2n-1
    std::vector<BlockInversion> blocks;
    size_t gate_count = 0;
};

// Divide-and-conquer compilation: per 4-qubit block, train the template
// against the lightcone-truncated evolution (per-qubit reduced-channel
// deviation loss), then assemble the block inversions with one ancilla per
// system qubit into a constant-depth sewed circuit. Residuals above target
// are reported, not thrown.
CompiledEvolution mode1_learn(const HiddenHamiltonian& ham, double t, const Mode1Config& config,
                              qlab::Rng& rng);

// the same assembly with all-zero parameters: a structurally identical
// logical-identity circuit (error-mitigation reference)
qlab::Circuit faulty_identity_circuit(int n);

// Quantum-simulation data route: randomized measurement records collected
// from the exact evolution circuit as the target oracle.
shadow::MeasurementDataset mode2_dataset(const HiddenHamiltonian& ham, double t, size_t records,
                                         qlab::Rng& rng);

}  // namespace qlab::ffward
