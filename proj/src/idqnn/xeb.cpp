#include "idqnn/xeb.hpp"

#include <cmath>
#include <stdexcept>

namespace qlab::idqnn {

namespace {

double mean_exp2(const std::vector<double>& log2p) {
    if (log2p.empty()) throw std::invalid_argument("xeb: empty sample list");
    double acc = 0;
    for (double lp : log2p) acc += std::exp2(lp);
    return acc / static_cast<double>(log2p.size());
}

}  // namespace

double xeb_normalized(const std::vector<double>& log2p_samples,
                      const std::vector<double>& log2p_model_batch, int num_bits) {
    double u = std::exp2(static_cast<double>(-num_bits));
    double num = mean_exp2(log2p_samples) - u;
    double den = mean_exp2(log2p_model_batch) - u;
    return num / den;
}

double xeb_normalized_exact(const std::vector<double>& log2p_samples, double model_second_moment,
                            int num_bits) {
    double u = std::exp2(static_cast<double>(-num_bits));
    double num = mean_exp2(log2p_samples) - u;
    return num / (model_second_moment - u);
}

double xeb_simple(const std::vector<double>& log2p_samples, int num_bits) {
    if (log2p_samples.empty()) throw std::invalid_argument("xeb: empty sample list");
    double acc = 0;
    for (double lp : log2p_samples) acc += std::exp2(lp + num_bits) - 1.0;
    return acc / static_cast<double>(log2p_samples.size());
}

double log2_prob_of(const std::vector<double>& dist, uint64_t index) {
    double p = dist[index];
    return p > 0 ? std::log2(p) : -1e300;
}

}  // namespace qlab::idqnn
