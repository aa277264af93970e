#pragma once

#include <unordered_map>

#include "qcore/circuit.hpp"
#include "qcore/rng.hpp"

namespace qlab::landscape {

// Local cost against the target: average over random single-qubit stabilizer
// product inputs of the per-qubit return probability deficit,
//   C = sum_i (2/3) (1 - ||Tr_i(W)||_F^2 / 2^{n+1}),  W = U(theta)^dag U_S.
// Zero exactly when the two act identically on every qubit marginal.
double local_cost(const qlab::Circuit& target, const qlab::Circuit& ansatz);

struct MonteCarloCost {
    double value;
    double std_err;
};
// the defining stabilizer-input average, estimated by sampling (fallback for
// sizes where the dense trace formula is out of reach)
MonteCarloCost local_cost_mc(const qlab::Circuit& target, const qlab::Circuit& ansatz,
                             int samples, qlab::Rng& rng);

// Fast per-qubit channel-deviation loss via sparse Pauli propagation.
// For W = U_S * A^dag it evaluates sum_{k in targets} ||R^(k)(W) - I_4||_F^2
// where R^(k) is the 4x4 transfer matrix of the channel reduced to qubit k.
// Propagation cost scales with the lightcone, not the system size.
class PauliPropagationCost {
  public:
    PauliPropagationCost(const qlab::Circuit& target, std::vector<int> eval_qubits);

    // rebuilds the ansatz conjugation tables, then evaluates
    double evaluate(const qlab::Circuit& ansatz) const;
    // deviation of a single qubit's reduced transfer matrix (for success tests)
    double qubit_deviation(const qlab::Circuit& ansatz, int qubit) const;

  private:
    struct ConjGate {
        std::vector<int> targets;
        // conjugation table: local Pauli code -> list of (code, coefficient)
        std::vector<std::vector<std::pair<uint8_t, double>>> table;
    };
    static ConjGate make_conj(const qlab::Gate& g, bool left);  // left: X -> G X G^dag

    std::vector<const qlab::Gate*> target_gates_;
    int n_;
    std::vector<int> eval_qubits_;

    using Terms = std::unordered_map<uint64_t, double>;
    static void apply_conj(const ConjGate& cg, Terms& terms, int n);
    double deviation_for(const std::vector<ConjGate>& ops, int qubit) const;
    std::vector<ConjGate> build_ops(const qlab::Circuit& ansatz) const;
};

}  // namespace qlab::landscape
