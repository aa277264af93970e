#pragma once

#include <Eigen/Dense>
#include <vector>

#include "qcore/matrix.hpp"

namespace qlab {

// Pauli-transfer representation of a unitary channel, normalized so the
// identity channel maps to the identity matrix.

// Full 4^k x 4^k transfer matrix R_ij = Tr(P_i U P_j U^dag) / 2^k.
Eigen::MatrixXd superoperator_matrix(const Mat& u);

// 4x4 transfer matrix of the channel reduced to one window qubit:
// rho_k -> Tr_{rest}[ W (rho_k x I/2^{w-1}) W^dag ].
Eigen::Matrix4d reduced_ptm(const Mat& w, int target, int window_qubits);

// Sum over targets of || reduced_ptm - I_4 ||_F^2; zero exactly when the
// window acts as the identity channel on every target.
double window_channel_deviation(const Mat& w, const std::vector<int>& targets, int window_qubits);

}  // namespace qlab
