#pragma once

#include <set>

#include "qcore/pauli.hpp"

namespace qlab {

// All qubits connected to `targets` through the reversed gate dag. Contains
// the input set and is idempotent on its own output.
std::set<int> backward_lightcone(const Circuit& arch, const std::set<int>& targets);

// Exact Pauli decomposition of U^dag P U, computed by dense conjugation on
// the backward-lightcone window. Throws if the window exceeds dense_limit.
PauliObservable heisenberg_evolve(const Circuit& u, const PauliString& p, int dense_limit = 12);

}  // namespace qlab
