#include "shadow/inversion.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qlab::shadow {

namespace {

int rotation_layers(int w) { return w == 1 ? 1 : (w == 2 ? 4 : 5); }

}  // namespace

size_t inversion_param_count(int window_qubits) {
    return 3 * static_cast<size_t>(window_qubits) * rotation_layers(window_qubits);
}

qlab::Circuit inversion_ansatz(int w, const std::vector<double>& params) {
    using qlab::Gate;
    if (params.size() != inversion_param_count(w))
        throw std::invalid_argument("inversion ansatz: parameter count mismatch");
    qlab::Circuit c(w);
    int layers = rotation_layers(w);
    size_t p = 0;
    for (int l = 0; l < layers; ++l) {
        for (int q = 0; q < w; ++q) {
            c.append(Gate::rx(q, params[p++]));
            c.append(Gate::ry(q, params[p++]));
            c.append(Gate::rz(q, params[p++]));
        }
        if (l + 1 == layers) break;
        if (w == 2) {
            c.append(Gate::cz(0, 1));
        } else {
            int offset = l % 2;
            for (int q = offset; q + 1 < w; q += 2) c.append(Gate::cz(q, q + 1));
        }
    }
    return c;
}

LocalInversion train_local_inversion(const qlab::PauliObservable& ox,
                                     const qlab::PauliObservable& oy,
                                     const qlab::PauliObservable& oz, int target_qubit,
                                     std::vector<int> window, const InversionConfig& config,
                                     qlab::Rng& rng) {
    std::sort(window.begin(), window.end());
    int w = static_cast<int>(window.size());
    if (w > 8) throw std::invalid_argument("train_local_inversion: window above 8 qubits");
    int local_target = -1;
    for (int i = 0; i < w; ++i)
        if (window[i] == target_qubit) local_target = i;
    if (local_target < 0) throw std::invalid_argument("target qubit not in window");

    std::array<qlab::Mat, 3> targets;  // local P_i for P = X, Y, Z
    std::array<qlab::Mat, 3> learned;
    const qlab::PauliObservable* obs[3] = {&ox, &oy, &oz};
    for (int p = 0; p < 3; ++p) {
        learned[p] = obs[p]->matrix_on_window(window);
        qlab::PauliString ps(w);
        ps.letters[local_target] = static_cast<uint8_t>(p + 1);
        targets[p] = ps.matrix();
    }

    auto surrogate = [&](const std::vector<double>& params) {
        qlab::Mat v = inversion_ansatz(w, params).to_matrix();
        double total = 0;
        for (int p = 0; p < 3; ++p) {
            qlab::Mat d = v.adjoint() * learned[p] * v - targets[p];
            total += d.squaredNorm();
        }
        return total;
    };

    size_t np = inversion_param_count(w);
    landscape::OptimizeResult best;
    best.best_cost = std::numeric_limits<double>::infinity();
    for (int r = 0; r < config.restarts; ++r) {
        std::vector<double> theta0(np);
        qlab::Rng stream = rng.stream(r);
        for (double& t : theta0) t = stream.next_double();  // uniform [0, 1)
        auto res = landscape::optimize(surrogate, theta0, config.optimizer);
        if (res.best_cost < best.best_cost) best = res;
        if (best.best_cost < config.good_enough) break;
    }

    LocalInversion inv;
    inv.target_qubit = target_qubit;
    inv.window = window;
    inv.params = best.best_theta;
    inv.ansatz = inversion_ansatz(w, best.best_theta);
    inv.matrix = inv.ansatz.to_matrix();
    double eps = 0;
    for (int p = 0; p < 3; ++p) {
        qlab::Mat d = inv.matrix.adjoint() * learned[p] * inv.matrix - targets[p];
        Eigen::SelfAdjointEigenSolver<qlab::Mat> es((d + qlab::Mat(d.adjoint())) * 0.5);
        // learned observables are Hermitian so d is Hermitian up to fp noise
        eps += es.eigenvalues().cwiseAbs().maxCoeff();
    }
    inv.epsilon = eps;
    return inv;
}

}  // namespace qlab::shadow
