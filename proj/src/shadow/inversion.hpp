#pragma once

#include "landscape/optimize.hpp"
#include "qcore/pauli.hpp"
#include "shadow/estimator.hpp"

namespace qlab::shadow {

// Small unitary V on a window of qubits that restores the Pauli frame of one
// output qubit: sum_P ||V^dag O_{i,P} V - P_i||_inf <= epsilon.
struct LocalInversion {
    int target_qubit = 0;            // global index
    std::vector<int> window;         // global qubit indices, sorted
    qlab::Circuit ansatz;            // circuit over window-local qubits
    std::vector<double> params;
    qlab::Mat matrix;                // cached unitary of the trained ansatz
    double epsilon = 0.0;            // certified infinity-norm objective
};

struct InversionConfig {
    int restarts = 20;
    landscape::OptimizerConfig optimizer;  // ADAM defaults
    double good_enough = 1e-9;             // stop restarting below this surrogate
};

// layered rotation/CZ ansatz over w window qubits, parameter count returned
qlab::Circuit inversion_ansatz(int window_qubits, const std::vector<double>& params);
size_t inversion_param_count(int window_qubits);

// Trains V against the three learned observables on the window (smooth
// squared-Frobenius surrogate), then certifies the best restart in the
// infinity norm. The reported epsilon is the certified value even when it
// misses the target.
LocalInversion train_local_inversion(const qlab::PauliObservable& ox,
                                     const qlab::PauliObservable& oy,
                                     const qlab::PauliObservable& oz, int target_qubit,
                                     std::vector<int> window, const InversionConfig& config,
                                     qlab::Rng& rng);

}  // namespace qlab::shadow
