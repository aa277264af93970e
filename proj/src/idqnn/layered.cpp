#include "idqnn/layered.hpp"

#include <stdexcept>

#include "qcore/statevector.hpp"

namespace qlab::idqnn {

void LayeredDeepCircuit::validate() const {
    if (num_qubits < 1 || rounds.empty()) throw std::invalid_argument("layered circuit is empty");
    for (const auto& r : rounds) {
        if (!r.hadamard_layer)
            throw std::invalid_argument("layered circuit: mapping requires full Hadamard layers");
        if (static_cast<int>(r.rz.size()) != num_qubits)
            throw std::invalid_argument("layered circuit: one angle per qubit required");
        for (const auto& [a, b] : r.cz)
            if (a < 0 || b != a + 1 || b >= num_qubits)
                throw std::invalid_argument("layered circuit: CZ must be nearest-neighbor");
    }
}

LayeredMapping build_idqnn_from_layered(const LayeredDeepCircuit& circuit) {
    circuit.validate();
    int m = circuit.num_qubits;
    int r = static_cast<int>(circuit.rounds.size());

    LayeredMapping out;
    out.model.graph.dims = {r, m};
    // cross-slice edges everywhere, within-slice edges mirror each round's CZ set
    for (int t = 0; t + 1 < r; ++t)
        for (int q = 0; q < m; ++q)
            out.model.graph.edges.insert({t * m + q, (t + 1) * m + q});
    for (int t = 0; t < r; ++t)
        for (const auto& [a, b] : circuit.rounds[t].cz)
            out.model.graph.edges.insert({t * m + a, t * m + b});
    // the model's site rotation carries relative phase 2*beta; the round
    // angle theta is a plain relative phase, so beta = theta / 2
    out.model.beta.resize(r * m);
    for (int t = 0; t < r; ++t)
        for (int q = 0; q < m; ++q) out.model.beta[t * m + q] = circuit.rounds[t].rz[q] / 2.0;
    out.model.validate();
    out.x_template.assign(r * m, 0);
    return out;
}

std::vector<double> layered_output_distribution(const LayeredDeepCircuit& circuit,
                                                const std::vector<uint64_t>& injections) {
    circuit.validate();
    int m = circuit.num_qubits;
    int r = static_cast<int>(circuit.rounds.size());
    if (static_cast<int>(injections.size()) != r - 1)
        throw std::invalid_argument("one injection mask per round boundary required");

    Statevector s = Statevector::zero_state(m);
    for (int t = 0; t < r; ++t) {
        for (int q = 0; q < m; ++q) s.apply(Gate::h(q));
        for (int q = 0; q < m; ++q) s.apply(Gate::rz(q, circuit.rounds[t].rz[q]));
        for (const auto& [a, b] : circuit.rounds[t].cz) s.apply(Gate::cz(a, b));
        if (t + 1 < r)
            for (int q = 0; q < m; ++q)
                if ((injections[t] >> q) & 1) s.apply(Gate::z(q));
    }
    for (int q = 0; q < m; ++q) s.apply(Gate::h(q));
    return s.probabilities();
}

}  // namespace qlab::idqnn
