#include "landscape/optimize.hpp"

#include <cmath>
#include <stdexcept>

namespace qlab::landscape {

std::vector<double> finite_difference_gradient(const CostFn& cost, const std::vector<double>& theta,
                                               double step) {
    std::vector<double> g(theta.size());
    std::vector<double> t = theta;
    for (size_t i = 0; i < theta.size(); ++i) {
        t[i] = theta[i] + step;
        double up = cost(t);
        t[i] = theta[i] - step;
        double dn = cost(t);
        t[i] = theta[i];
        g[i] = (up - dn) / (2 * step);
    }
    return g;
}

namespace {

void check_finite(double c) {
    if (!std::isfinite(c)) throw std::runtime_error("optimize: non-finite cost");
}

OptimizeResult run_adam(const CostFn& cost, std::vector<double> theta, const OptimizerConfig& cfg,
                        const GradFn* grad_fn) {
    OptimizeResult res;
    std::vector<double> m(theta.size(), 0.0), v(theta.size(), 0.0);
    double c = cost(theta);
    check_finite(c);
    res.best_theta = theta;
    res.best_cost = c;
    for (int it = 1; it <= cfg.iterations; ++it) {
        res.trajectory.push_back(c);
        std::vector<double> g =
            grad_fn ? (*grad_fn)(theta) : finite_difference_gradient(cost, theta, cfg.fd_step);
        for (size_t i = 0; i < theta.size(); ++i) {
            m[i] = cfg.beta1 * m[i] + (1 - cfg.beta1) * g[i];
            v[i] = cfg.beta2 * v[i] + (1 - cfg.beta2) * g[i] * g[i];
            double mh = m[i] / (1 - std::pow(cfg.beta1, it));
            double vh = v[i] / (1 - std::pow(cfg.beta2, it));
            theta[i] -= cfg.learning_rate * mh / (std::sqrt(vh) + cfg.eps_num);
        }
        c = cost(theta);
        check_finite(c);
        if (c < res.best_cost) {
            res.best_cost = c;
            res.best_theta = theta;
        }
    }
    res.trajectory.push_back(c);
    return res;
}

OptimizeResult run_bgd(const CostFn& cost, std::vector<double> theta, const OptimizerConfig& cfg,
                       const GradFn* grad_fn) {
    OptimizeResult res;
    double c = cost(theta);
    check_finite(c);
    res.best_theta = theta;
    res.best_cost = c;
    for (int it = 0; it < cfg.iterations; ++it) {
        res.trajectory.push_back(c);
        std::vector<double> g =
            grad_fn ? (*grad_fn)(theta) : finite_difference_gradient(cost, theta, cfg.fd_step);
        double gnorm2 = 0;
        for (double gi : g) gnorm2 += gi * gi;
        if (gnorm2 < 1e-24) break;
        double step = cfg.learning_rate;
        std::vector<double> trial(theta.size());
        int shrinks = 0;
        for (;;) {
            for (size_t i = 0; i < theta.size(); ++i) trial[i] = theta[i] - step * g[i];
            double ct = cost(trial);
            check_finite(ct);
            if (ct <= c - cfg.bgd_alpha * step * gnorm2 || shrinks >= cfg.bgd_max_shrinks) {
                theta = trial;
                c = ct;
                break;
            }
            step *= cfg.bgd_beta;
            ++shrinks;
        }
        if (c < res.best_cost) {
            res.best_cost = c;
            res.best_theta = theta;
        }
    }
    res.trajectory.push_back(c);
    return res;
}

}  // namespace

OptimizeResult optimize(const CostFn& cost, const std::vector<double>& theta0,
                        const OptimizerConfig& config, const GradFn* analytic_grad) {
    for (double t : theta0)
        if (!std::isfinite(t)) throw std::invalid_argument("optimize: non-finite start");
    if (config.kind == OptimizerKind::Adam) return run_adam(cost, theta0, config, analytic_grad);
    return run_bgd(cost, theta0, config, analytic_grad);
}

}  // namespace qlab::landscape
