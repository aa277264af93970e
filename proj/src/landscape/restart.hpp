#pragma once

#include "landscape/cost.hpp"
#include "landscape/optimize.hpp"
#include "landscape/swap_circuits.hpp"

namespace qlab::landscape {

struct WilsonInterval {
    double rate;
    double lo;
    double hi;
};
WilsonInterval wilson(int successes, int trials, double z = 1.96);

struct RestartConfig {
    AnsatzKind ansatz = AnsatzKind::SwapPowBrickwork;
    OptimizerConfig optimizer;        // ADAM defaults, 150 iterations
    double success_threshold = 1e-2;  // per-qubit channel deviation
    int block_size = 4;               // 0 = whole circuit as a single block
    int threads = 0;                  // 0 = hardware concurrency
};

struct RestartResult {
    // per-restart success probability: min over blocks, with the Wilson
    // interval of the weakest block
    WilsonInterval success;
    std::vector<WilsonInterval> per_block;
    int trials = 0;
};

// Per trial: initialize the (block or whole) parameters uniformly in [0,1),
// minimize the summed per-qubit channel deviation, count the trial a success
// when every qubit in the block ends below the threshold. The quoted rate is
// the minimum over blocks.
RestartResult restart_success_probability(const SwapTargetSpec& spec, const RestartConfig& config,
                                          int trials, qlab::Rng& rng);

// success-threshold check for one trained parameter vector (whole circuit)
double max_qubit_deviation(const SwapTargetSpec& spec, AnsatzKind kind,
                           const std::vector<double>& theta);

}  // namespace qlab::landscape
