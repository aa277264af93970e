#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace qlab {

using cx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

Mat kron(const Mat& a, const Mat& b);

// Embed an operator acting on `qubits` (little-endian order within `op`,
// qubits[0] = least significant) into an n-qubit identity background.
Mat embed(const Mat& op, const std::vector<int>& qubits, int num_qubits);

// Trace out every qubit not listed in `keep` (little-endian everywhere).
Mat partial_trace(const Mat& m, const std::vector<int>& keep, int num_qubits);

// Largest singular value. Full decomposition for dim <= 256, shifted power
// iteration on M^dag M above that; throws after the restart budget if the
// iteration has not settled to 1e-8.
double operator_norm(const Mat& m);

// Nearest unitary in Frobenius norm: V W^dag from the SVD M = V S W^dag.
Mat project_unitary(const Mat& m);

// exp(i * scale * H) for Hermitian H, via eigendecomposition.
Mat expm_hermitian(const Mat& h, double scale);

bool is_unitary(const Mat& m, double tol);

}  // namespace qlab
