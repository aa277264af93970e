#pragma once

#include <functional>
#include <vector>

#include "qcore/rng.hpp"

namespace qlab::landscape {

using CostFn = std::function<double(const std::vector<double>&)>;
using GradFn = std::function<std::vector<double>(const std::vector<double>&)>;

enum class OptimizerKind { Adam, Bgd };

struct OptimizerConfig {
    OptimizerKind kind = OptimizerKind::Adam;
    int iterations = 150;
    double learning_rate = 0.3;  // step size, meaningful range [0.1, 0.5]
    // ADAM
    double beta1 = 0.85;
    double beta2 = 0.9995;
    double eps_num = 1e-8;
    // backtracking line search
    double bgd_alpha = 0.5;   // sufficient-decrease threshold
    double bgd_beta = 0.8;    // geometric shrink factor
    int bgd_max_shrinks = 40;
    // finite differences
    double fd_step = 1e-5;
};

struct OptimizeResult {
    std::vector<double> best_theta;
    double best_cost = 0.0;
    std::vector<double> trajectory;  // cost per iteration
};

std::vector<double> finite_difference_gradient(const CostFn& cost, const std::vector<double>& theta,
                                               double step);

// Minimizes `cost` from theta0. Gradients come from central finite
// differences unless an analytic gradient is registered.
OptimizeResult optimize(const CostFn& cost, const std::vector<double>& theta0,
                        const OptimizerConfig& config, const GradFn* analytic_grad = nullptr);

}  // namespace qlab::landscape
