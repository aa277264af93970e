#pragma once

#include "qcore/circuit.hpp"
#include "qcore/rng.hpp"

namespace qlab::ffward {

// Depolarizing noise after every gate plus readout bit flips. A deliberately
// simple stand-in for hardware noise, enough to exercise the mitigation
// transform.
struct NoiseModel {
    double p1 = 1e-3;       // per single-qubit gate
    double p2 = 5e-3;       // per two-qubit gate
    double readout = 1e-2;  // per measured bit

    void validate() const;
};

struct ObservableEstimate {
    std::vector<double> z;  // <Z_j> for the first `system` qubits
};

// Exact expectations from |0...0> (no noise).
ObservableEstimate predict_ideal(const qlab::Circuit& circuit, int system_qubits);

// Pauli-trajectory average: each trajectory injects random Paulis after
// gates, expectations are computed exactly on the trajectory state and the
// readout flip enters analytically as a (1 - 2p) factor. `shots` is split
// into at most `max_trajectories` error patterns (the no-error pattern is
// simulated once and reused).
ObservableEstimate predict_noisy(const qlab::Circuit& circuit, int system_qubits,
                                 const NoiseModel& noise, size_t shots, qlab::Rng& rng,
                                 size_t max_trajectories = 600);

// Mitigated observable in the {0,1} convention:
//   M(O) = (<O> - O_ref) / (1 - 2 O_ref),  O = (1 - <P>)/2.
// Throws when the reference is too noisy (|1 - 2 O_ref| < 1e-6).
double mitigate(double o_raw, double o_ref);

// the same transform expressed on Pauli expectations
double mitigate_z(double z_raw, double z_ref);

}  // namespace qlab::ffward
