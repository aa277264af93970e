#pragma once

#include "qcore/circuit.hpp"
#include "qcore/rng.hpp"

namespace qlab::ffward {

// H = U^dag (sum_j h_j Z_j) U with a constant-depth 1D scrambler U, so
// exp(-iHt) keeps a t-independent circuit depth.
struct HiddenHamiltonian {
    int n = 0;
    std::vector<double> h;     // uniform in [-1, 1]
    qlab::Circuit scrambler;   // PhasedXZ / CZ brickwork
    uint64_t seed = 0;

    static HiddenHamiltonian random(int n, uint64_t seed);
    qlab::Mat dense() const;   // 2^n x 2^n, small n
};

// 1D brickwork: a PhasedXZ layer on all qubits, CZ on even pairs, another
// PhasedXZ layer, then (when any odd pair exists) CZ on odd pairs and a
// final PhasedXZ layer. Exponents uniform in [0, 4). Deterministic per seed.
qlab::Circuit build_scrambler(int n, uint64_t seed);

// time-ordered [scrambler, RZ(2 h_j t) layer, inverse scrambler]; equals
// exp(-i H t) exactly
qlab::Circuit exact_evolution_circuit(const HiddenHamiltonian& ham, double t);

// evaluation grids: 3*pi/40 * k + 0.001 with k in [0, 40], and with k in
// [10^6, 10^6 + 40] for the fast-forwarding regime
std::vector<double> short_time_grid();
std::vector<double> long_time_grid();

}  // namespace qlab::ffward
