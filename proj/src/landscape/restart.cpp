#include "landscape/restart.hpp"

#include <atomic>
#include <cmath>
#include <future>
#include <thread>

namespace qlab::landscape {

WilsonInterval wilson(int successes, int trials, double z) {
    double n = trials;
    double p = successes / n;
    double z2 = z * z;
    double denom = 1 + z2 / n;
    double center = (p + z2 / (2 * n)) / denom;
    double half = (z / denom) * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n));
    return {p, std::max(0.0, center - half), std::min(1.0, center + half)};
}

namespace {

// trains the parameters listed in `param_idx` (rest pinned at 0) against the
// deviation summed over `qubits`; returns the trained full parameter vector
std::vector<double> train_subset(const SwapTargetSpec& spec, const RestartConfig& config,
                                 const PauliPropagationCost& cost_fn,
                                 const std::vector<size_t>& param_idx, qlab::Rng& rng) {
    size_t full_dim = theta_dim(config.ansatz, spec.n);
    std::vector<double> full(full_dim, 0.0);
    auto assemble = [&](const std::vector<double>& sub) {
        std::vector<double> t = full;
        for (size_t i = 0; i < param_idx.size(); ++i) t[param_idx[i]] = sub[i];
        return t;
    };
    CostFn cost = [&](const std::vector<double>& sub) {
        return cost_fn.evaluate(ansatz_unitary(config.ansatz, spec.n, assemble(sub)));
    };
    std::vector<double> sub0(param_idx.size());
    for (double& v : sub0) v = rng.next_double();  // uniform [0, 1)
    OptimizeResult res = optimize(cost, sub0, config.optimizer);
    return assemble(res.best_theta);
}

}  // namespace

double max_qubit_deviation(const SwapTargetSpec& spec, AnsatzKind kind,
                           const std::vector<double>& theta) {
    qlab::Circuit target = build_swap_target(spec);
    qlab::Circuit ansatz = ansatz_unitary(kind, spec.n, theta);
    double worst = 0;
    for (int q = 0; q < spec.n; ++q) {
        PauliPropagationCost c(target, {q});
        worst = std::max(worst, c.qubit_deviation(ansatz, q));
    }
    return worst;
}

RestartResult restart_success_probability(const SwapTargetSpec& spec, const RestartConfig& config,
                                          int trials, qlab::Rng& rng) {
    if (trials < 30) throw std::invalid_argument("restart: need at least 30 trials");
    spec.validate();
    qlab::Circuit target = build_swap_target(spec);

    int nblocks;
    std::vector<std::vector<size_t>> block_params;
    std::vector<std::vector<int>> block_qubits;
    if (config.block_size == 0) {
        nblocks = 1;
        std::vector<size_t> all(theta_dim(config.ansatz, spec.n));
        for (size_t i = 0; i < all.size(); ++i) all[i] = i;
        block_params.push_back(all);
        std::vector<int> qs(spec.n);
        for (int q = 0; q < spec.n; ++q) qs[q] = q;
        block_qubits.push_back(qs);
    } else if (config.block_size == 4) {
        nblocks = spec.block_count();
        for (int b = 0; b < nblocks; ++b) {
            block_params.push_back(block_param_indices(config.ansatz, spec.n, b));
            block_qubits.push_back({4 * b, 4 * b + 1, 4 * b + 2, 4 * b + 3});
        }
    } else {
        throw std::invalid_argument("restart: block size must be 4 or 0 (whole)");
    }

    unsigned hw = config.threads > 0 ? config.threads : std::thread::hardware_concurrency();
    if (hw == 0) hw = 4;

    // trial t, block b -> success flag
    std::vector<std::vector<uint8_t>> success(nblocks, std::vector<uint8_t>(trials, 0));
    std::atomic<int> next{0};
    auto worker = [&]() {
        for (;;) {
            int t = next.fetch_add(1);
            if (t >= trials) return;
            qlab::Rng trial_rng = rng.stream(static_cast<uint64_t>(t) + 17);
            for (int b = 0; b < nblocks; ++b) {
                qlab::Rng block_rng = trial_rng.stream(b);
                PauliPropagationCost cost_fn(target, block_qubits[b]);
                std::vector<double> theta =
                    train_subset(spec, config, cost_fn, block_params[b], block_rng);
                qlab::Circuit ansatz = ansatz_unitary(config.ansatz, spec.n, theta);
                double worst = 0;
                for (int q : block_qubits[b])
                    worst = std::max(worst, cost_fn.qubit_deviation(ansatz, q));
                success[b][t] = worst <= config.success_threshold ? 1 : 0;
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < hw; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    RestartResult res;
    res.trials = trials;
    int min_succ = trials + 1;
    for (int b = 0; b < nblocks; ++b) {
        int s = 0;
        for (int t = 0; t < trials; ++t) s += success[b][t];
        res.per_block.push_back(wilson(s, trials));
        min_succ = std::min(min_succ, s);
    }
    res.success = wilson(min_succ, trials);
    return res;
}

}  // namespace qlab::landscape
