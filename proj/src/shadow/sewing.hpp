#pragma once

#include "shadow/inversion.hpp"

namespace qlab::shadow {

// 2n-qubit composition of per-qubit pieces with ancilla-assisted swaps.
// Register layout by construction kind:
//   LocalInversion:  qubits 0..n-1 system, n..2n-1 ancilla |0^n>, trace out
//                    the ancillas; the sewed unitary approximates U x U^dag.
//   DirectHeisenberg: qubits 0..n-1 ancilla |0^n>, n..2n-1 system, trace out
//                    the ancillas; the sewed unitary approximates U^dag x U.
struct SewedCircuit {
    enum class Kind { DirectHeisenberg, LocalInversion };

    int n = 0;  // system size, circuit acts on 2n qubits
    Kind kind = Kind::LocalInversion;
    std::vector<double> eps;  // per-qubit error budget

    struct Block {
        std::vector<int> qubits;  // global 2n indexing
        qlab::Mat matrix;
    };
    std::vector<Block> blocks;  // applied in order

    size_t block_count() const { return blocks.size(); }
    qlab::Mat to_matrix() const;  // 2n <= 12

    // learned channel on a pure system input; returns the output density
    // matrix on the system register
    qlab::Mat channel_apply(const qlab::Vec& psi) const;
};

// U_sew = S * prod_i (V_i x I) S_i (V_i^dag x I)
SewedCircuit sew_local_inversions(const std::vector<LocalInversion>& inversions, int n);

// U_sew = S * prod_i Proj_U( 1/2 I x I + 1/2 sum_P P_i x O_{i,P} ),
// P_i on the ancilla register, the learned observable on the system register.
SewedCircuit direct_heisenberg_sew(const std::map<ObsKey, qlab::PauliObservable>& coeffs, int n,
                                   const std::vector<double>& eps);

// spectral distances the sewing theorems bound
double sew_distance_inversion(const SewedCircuit& sewed, const qlab::Mat& u);   // vs U x U^dag
double sew_distance_heisenberg(const SewedCircuit& sewed, const qlab::Mat& u);  // vs U^dag x U

}  // namespace qlab::shadow
