#pragma once

#include <vector>

#include "qcore/circuit.hpp"
#include "qcore/rng.hpp"

namespace qlab {

enum class Basis { X, Y, Z };

struct MeasureResult {
    int bit;
    double prob;  // Born probability of the recorded outcome
};

// Dense amplitude vector, little-endian (qubit 0 = least significant bit).
struct Statevector {
    int num_qubits = 0;
    std::vector<cx> amps;

    static Statevector zero_state(int n);
    // per-qubit computational-basis bits
    static Statevector basis_state(int n, const std::vector<uint8_t>& bits);

    void apply(const Gate& g);
    void apply(const Circuit& c);

    double norm() const;
    std::vector<double> probabilities() const;

    // Collapses to the eigenstate of the recorded outcome.
    MeasureResult measure(int qubit, Basis basis, Rng& rng);
    // Same collapse, but the outcome is dictated; prob may be 0 (caller's problem).
    MeasureResult measure_forced(int qubit, Basis basis, int bit);
    // Z-measure with discarded outcome, then flip to |0> if needed.
    void reset(int qubit, Rng& rng);

    double expectation_z(int qubit) const;
    // <psi| P |psi> for a Pauli given as per-qubit letters (0=I,1=X,2=Y,3=Z)
    double expectation_pauli(const std::vector<uint8_t>& letters) const;
    // 2x2 reduced density matrix of one qubit
    Mat reduced_density(int qubit) const;
    cx inner(const Statevector& other) const;
};

}  // namespace qlab
