#include "ffward/hamiltonian.hpp"

#include <stdexcept>

namespace qlab::ffward {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

qlab::Circuit build_scrambler(int n, uint64_t seed) {
    if (n < 2) throw std::invalid_argument("scrambler: need at least 2 qubits");
    qlab::Rng rng(seed);
    qlab::Circuit c(n);
    auto ph_layer = [&](const std::vector<int>& qubits) {
        std::vector<qlab::Gate> layer;
        for (int q : qubits)
            layer.push_back(qlab::Gate::phased_xz(q, rng.uniform(0, 4), rng.uniform(0, 4),
                                                  rng.uniform(0, 4)));
        c.append_moment(layer);
    };
    std::vector<int> all(n);
    for (int q = 0; q < n; ++q) all[q] = q;

    ph_layer(all);
    std::vector<qlab::Gate> even;
    for (int q = 0; q + 1 < n; q += 2) even.push_back(qlab::Gate::cz(q, q + 1));
    c.append_moment(even);
    ph_layer(all);
    if (n > 2) {
        std::vector<qlab::Gate> odd;
        for (int q = 1; q + 1 < n; q += 2) odd.push_back(qlab::Gate::cz(q, q + 1));
        c.append_moment(odd);
        ph_layer(all);
    }
    return c;
}

HiddenHamiltonian HiddenHamiltonian::random(int n, uint64_t seed) {
    HiddenHamiltonian ham;
    ham.n = n;
    ham.seed = seed;
    qlab::Rng rng(seed);
    qlab::Rng hs = rng.stream(1);
    ham.h.resize(n);
    for (double& v : ham.h) v = hs.uniform(-1.0, 1.0);
    ham.scrambler = build_scrambler(n, qlab::Rng(seed).stream(2).next_u64());
    return ham;
}

qlab::Mat HiddenHamiltonian::dense() const {
    if (n > 12) throw std::invalid_argument("hamiltonian: dense form capped at 12 qubits");
    size_t dim = size_t{1} << n;
    qlab::Mat u = scrambler.to_matrix();
    qlab::Mat diag = qlab::Mat::Zero(dim, dim);
    for (size_t b = 0; b < dim; ++b) {
        double e = 0;
        for (int q = 0; q < n; ++q) e += ((b >> q) & 1) ? -h[q] : h[q];
        diag(b, b) = e;
    }
    return u.adjoint() * diag * u;
}

qlab::Circuit exact_evolution_circuit(const HiddenHamiltonian& ham, double t) {
    qlab::Circuit c(ham.n);
    c.extend(ham.scrambler);
    std::vector<qlab::Gate> layer;
    for (int q = 0; q < ham.n; ++q) layer.push_back(qlab::Gate::rz(q, 2.0 * ham.h[q] * t));
    c.append_moment(layer);
    c.extend(ham.scrambler.inverse());
    return c;
}

std::vector<double> short_time_grid() {
    std::vector<double> ts;
    for (int k = 0; k <= 40; ++k) ts.push_back(3.0 * kPi / 40.0 * k + 0.001);
    return ts;
}

std::vector<double> long_time_grid() {
    std::vector<double> ts;
    for (int k = 0; k <= 40; ++k) ts.push_back(3.0 * kPi / 40.0 * (1e6 + k) + 0.001);
    return ts;
}

}  // namespace qlab::ffward
