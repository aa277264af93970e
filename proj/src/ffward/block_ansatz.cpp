#include "ffward/block_ansatz.hpp"

#include <stdexcept>

namespace qlab::ffward {

qlab::Circuit block_ansatz(const std::vector<double>& params) {
    using qlab::Gate;
    if (params.size() != kBlockParams)
        throw std::invalid_argument("block ansatz: 60 parameters required");
    qlab::Circuit c(kBlockQubits);
    size_t p = 0;
    auto r_layer = [&]() {
        for (int q = 0; q < kBlockQubits; ++q) {
            c.append(Gate::rx(q, params[p++]));
            c.append(Gate::ry(q, params[p++]));
            c.append(Gate::rz(q, params[p++]));
        }
    };
    r_layer();
    c.append(Gate::cz(0, 1));
    c.append(Gate::cz(2, 3));
    r_layer();
    c.append(Gate::cz(1, 2));
    r_layer();
    c.append(Gate::cz(1, 2));
    r_layer();
    c.append(Gate::cz(0, 1));
    c.append(Gate::cz(2, 3));
    r_layer();
    return c;
}

}  // namespace qlab::ffward
