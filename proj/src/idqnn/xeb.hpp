#pragma once

#include <cstdint>
#include <vector>

namespace qlab::idqnn {

// Linear cross-entropy fidelity. Probabilities are passed as log2 p(s) so
// instances with hundreds of sites stay representable.
//
// Normalized form:
//   F = (<p(s)>_samples - <p>_uniform) / (<p(s)>_model - <p>_uniform)
// where <p>_uniform = 2^-n and <p(s)>_model is the model's own second moment
// (exact when the distribution is available, otherwise estimated from an
// independent batch of model samples).
// Simplified large-n form: F = < 2^n p(s) - 1 >_samples.

double xeb_normalized(const std::vector<double>& log2p_samples,
                      const std::vector<double>& log2p_model_batch, int num_bits);

// exact second moment supplied directly (sum_y p(y)^2)
double xeb_normalized_exact(const std::vector<double>& log2p_samples, double model_second_moment,
                            int num_bits);

double xeb_simple(const std::vector<double>& log2p_samples, int num_bits);

// convenience for dense oracles
double log2_prob_of(const std::vector<double>& dist, uint64_t index);

}  // namespace qlab::idqnn
