#pragma once

#include "idqnn/model.hpp"
#include "qcore/stabilizer.hpp"
#include "qcore/statevector.hpp"

namespace qlab::idqnn {

struct Sample {
    std::vector<uint8_t> y;
    double log2_prob;  // exact log2 of the probability of this y under the model
};

// Shallow form: prepare every site (0 -> |+>, 1 -> |0>), rotate, CZ all
// edges, measure everything in X. Brute-force statevector over all sites.
Sample sample_shallow(const IdqnnModel& model, const std::vector<uint8_t>& x, qlab::Rng& rng);

// Full Born distribution over y (indexed little-endian by site), sites <= 16.
std::vector<double> exact_distribution(const IdqnnModel& model, const std::vector<uint8_t>& x);

// Deep form: simulates only one slice register across the slices via the
// teleportation identity. Cross-slice CZ with a fresh |+> plus X readout
// maps the register qubit through H Z^m with a fair coin m, so the register
// update for a 0 input bit is: draw m, apply Z^m then H. A 1 input bit is a
// real X measurement followed by reset to |0>. Output distribution is
// identical to the shallow form.
Sample sample_deep(const IdqnnModel& model, const std::vector<uint8_t>& x, qlab::Rng& rng);

// Exact output distribution of the deep procedure by enumerating every
// internal branch (small instances; this is the equivalence oracle's mate).
std::vector<double> deep_exact_distribution(const IdqnnModel& model,
                                            const std::vector<uint8_t>& x);

// Deep form on a stabilizer register; every beta must be a multiple of pi/2.
// Supports hundreds of register qubits.
Sample sample_clifford(const IdqnnModel& model, const std::vector<uint8_t>& x, qlab::Rng& rng);

// log2 probability of a given y under the Clifford deep model (replay with
// forced outcomes); -infinity when y is not in the support.
double clifford_log2_prob(const IdqnnModel& model, const std::vector<uint8_t>& x,
                          const std::vector<uint8_t>& y);

}  // namespace qlab::idqnn
