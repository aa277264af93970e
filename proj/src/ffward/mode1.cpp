#include "ffward/mode1.hpp"

#include <Eigen/Dense>
#include <array>
#include <limits>
#include <set>
#include <stdexcept>

#include "qcore/heisenberg.hpp"
#include "qcore/pauli.hpp"

namespace qlab::ffward {

namespace {

qlab::Circuit remap(const qlab::Circuit& local, const std::vector<int>& to_global, int n_total) {
    qlab::Circuit out(n_total);
    for (const auto& m : local.moments) {
        std::vector<qlab::Gate> moment;
        for (qlab::Gate g : m) {
            for (int& q : g.targets) q = to_global[q];
            moment.push_back(std::move(g));
        }
        out.append_moment(moment);
    }
    return out;
}

// single-qubit Pauli embedded at `pos` of a w-qubit window, as a dense matrix
qlab::Mat pauli_at(int pos, uint8_t letter, int w) {
    qlab::PauliString p(w);
    p.letters[pos] = letter;
    return p.matrix();
}

struct BlockProblem {
    // A~[i][k_local]: 16x16 partial trace over window-minus-block of
    // U_win^dag P_i^(k) U_win; the loss needs only Tr[A~ . V^dag P_j V]
    std::array<std::array<qlab::Mat, 4>, 3> atilde;
    double inv_window_dim = 0;

    double deviation(const qlab::Mat& v, int k_local) const {
        double dev = 0;
        for (int j = 1; j <= 3; ++j) {
            qlab::Mat b = v.adjoint() * pauli_at(k_local, static_cast<uint8_t>(j), 4) * v;
            for (int i = 1; i <= 3; ++i) {
                double r = ((atilde[i - 1][k_local] * b).trace() * inv_window_dim).real();
                double want = i == j ? 1.0 : 0.0;
                dev += (r - want) * (r - want);
            }
        }
        return dev;
    }
};

BlockProblem build_block_problem(const qlab::Circuit& evolution, int block, int window_limit) {
    std::set<int> targets = {4 * block, 4 * block + 1, 4 * block + 2, 4 * block + 3};
    std::set<int> cone = qlab::backward_lightcone(evolution, targets);
    // the forward cone matters equally for the channel reduction; use the
    // union so truncation never clips a gate that touches the block
    std::set<int> fwd = qlab::backward_lightcone(evolution.inverse(), targets);
    cone.insert(fwd.begin(), fwd.end());
    std::vector<int> window(cone.begin(), cone.end());
    if (static_cast<int>(window.size()) > window_limit)
        throw std::invalid_argument("mode1: lightcone window exceeds the dense limit");

    qlab::Mat u = evolution.restricted_to(window).to_matrix_on_window(window);
    int w = static_cast<int>(window.size());

    std::vector<int> pos(evolution.num_qubits, -1);
    for (int i = 0; i < w; ++i) pos[window[i]] = i;
    std::vector<int> keep;  // window positions of the block qubits, in block order
    for (int k = 0; k < 4; ++k) keep.push_back(pos[4 * block + k]);

    BlockProblem prob;
    prob.inv_window_dim = 1.0 / static_cast<double>(size_t{1} << w);
    for (int i = 1; i <= 3; ++i)
        for (int k = 0; k < 4; ++k) {
            qlab::Mat a = u.adjoint() * pauli_at(keep[k], static_cast<uint8_t>(i), w) * u;
            // partial trace over window positions outside the block, with the
            // block qubits reordered to local positions 0..3
            prob.atilde[i - 1][k] = qlab::partial_trace(a, keep, w);
        }
    return prob;
}

}  // namespace

CompiledEvolution mode1_learn(const HiddenHamiltonian& ham, double t, const Mode1Config& config,
                              qlab::Rng& rng) {
    if (ham.n % 4 != 0) throw std::invalid_argument("mode1: qubit count must be a multiple of 4");
    int n = ham.n;
    int nblocks = n / 4;
    qlab::Circuit evolution = exact_evolution_circuit(ham, t);

    CompiledEvolution result;
    result.n = n;
    result.t = t;
    result.circuit = qlab::Circuit(2 * n);

    std::vector<qlab::Circuit> trained(nblocks);
    for (int b = 0; b < nblocks; ++b) {
        BlockProblem prob = build_block_problem(evolution, b, config.window_limit);
        auto loss = [&](const std::vector<double>& params) {
            qlab::Mat v = block_ansatz(params).to_matrix();
            double total = 0;
            for (int k = 0; k < 4; ++k) total += prob.deviation(v, k);
            return total;
        };
        landscape::OptimizeResult best;
        best.best_cost = std::numeric_limits<double>::infinity();
        qlab::Rng block_rng = rng.stream(b);
        for (int r = 0; r < config.restarts; ++r) {
            std::vector<double> theta0(kBlockParams, 0.0);
            if (r > 0) {
                qlab::Rng stream = block_rng.stream(r);
                for (double& v : theta0) v = stream.next_double();
            }
            auto res = landscape::optimize(loss, theta0, config.optimizer);
            if (res.best_cost < best.best_cost) best = res;
            if (best.best_cost <= config.residual_target) break;
        }
        BlockInversion inv;
        inv.block = b;
        inv.params = best.best_theta;
        inv.residual = best.best_cost;
        qlab::Mat v = block_ansatz(best.best_theta).to_matrix();
        for (int k = 0; k < 4; ++k) inv.per_qubit.push_back(prob.deviation(v, k));
        result.blocks.push_back(inv);
        trained[b] = block_ansatz(best.best_theta);
    }

    // assembly: V_b^dag on the system block, swap the block with its
    // ancillas, V_b back; finally the global register swap
    for (int b = 0; b < nblocks; ++b) {
        std::vector<int> sys = {4 * b, 4 * b + 1, 4 * b + 2, 4 * b + 3};
        result.circuit.extend(remap(trained[b].inverse(), sys, 2 * n));
        for (int k = 0; k < 4; ++k) result.circuit.append(qlab::Gate::swap(4 * b + k, n + 4 * b + k));
        result.circuit.extend(remap(trained[b], sys, 2 * n));
    }
    for (int q = 0; q < n; ++q) result.circuit.append(qlab::Gate::swap(q, n + q));
    result.gate_count = result.circuit.gate_count();
    return result;
}

qlab::Circuit faulty_identity_circuit(int n) {
    if (n % 4 != 0) throw std::invalid_argument("faulty identity: qubit count must be a multiple of 4");
    qlab::Circuit c(2 * n);
    std::vector<double> zeros(kBlockParams, 0.0);
    qlab::Circuit v = block_ansatz(zeros);
    for (int b = 0; b < n / 4; ++b) {
        std::vector<int> sys = {4 * b, 4 * b + 1, 4 * b + 2, 4 * b + 3};
        c.extend(remap(v.inverse(), sys, 2 * n));
        for (int k = 0; k < 4; ++k) c.append(qlab::Gate::swap(4 * b + k, n + 4 * b + k));
        c.extend(remap(v, sys, 2 * n));
    }
    for (int q = 0; q < n; ++q) c.append(qlab::Gate::swap(q, n + q));
    return c;
}

shadow::MeasurementDataset mode2_dataset(const HiddenHamiltonian& ham, double t, size_t records,
                                         qlab::Rng& rng) {
    qlab::Circuit evolution = exact_evolution_circuit(ham, t);
    return shadow::collect_dataset(evolution, records, rng);
}

}  // namespace qlab::ffward
