#include "landscape/cost.hpp"

#include <cmath>
#include <stdexcept>

#include "qcore/pauli.hpp"
#include "qcore/statevector.hpp"

namespace qlab::landscape {

double local_cost(const qlab::Circuit& target, const qlab::Circuit& ansatz) {
    if (target.num_qubits != ansatz.num_qubits)
        throw std::invalid_argument("local_cost: qubit count mismatch");
    int n = target.num_qubits;
    if (n > 12) throw std::invalid_argument("local_cost: dense path capped at 12 qubits");
    qlab::Mat w = ansatz.to_matrix().adjoint() * target.to_matrix();
    double scale = std::exp2(static_cast<double>(n + 1));
    double cost = 0;
    for (int i = 0; i < n; ++i) {
        std::vector<int> keep;
        for (int q = 0; q < n; ++q)
            if (q != i) keep.push_back(q);
        qlab::Mat tri = qlab::partial_trace(w, keep, n);
        cost += (2.0 / 3.0) * (1.0 - tri.squaredNorm() / scale);
    }
    return cost;
}

MonteCarloCost local_cost_mc(const qlab::Circuit& target, const qlab::Circuit& ansatz,
                             int samples, qlab::Rng& rng) {
    int n = target.num_qubits;
    qlab::Circuit inv = ansatz.inverse();
    // the six single-qubit stabilizer states as 2-vectors
    const double s2 = 1.0 / std::sqrt(2.0);
    const qlab::cx states[6][2] = {
        {1, 0}, {0, 1}, {s2, s2}, {s2, -s2}, {s2, qlab::cx(0, s2)}, {s2, qlab::cx(0, -s2)}};
    double sum = 0, sumsq = 0;
    for (int s = 0; s < samples; ++s) {
        qlab::Rng stream = rng.stream(s);
        std::vector<int> label(n);
        qlab::Statevector psi = qlab::Statevector::zero_state(n);
        for (int q = 0; q < n; ++q) {
            label[q] = static_cast<int>(stream.next_below(6));
            switch (label[q]) {
                case 0: break;
                case 1: psi.apply(qlab::Gate::x(q)); break;
                case 2: psi.apply(qlab::Gate::h(q)); break;
                case 3:
                    psi.apply(qlab::Gate::x(q));
                    psi.apply(qlab::Gate::h(q));
                    break;
                case 4:
                    psi.apply(qlab::Gate::h(q));
                    psi.apply(qlab::Gate::rz(q, 3.14159265358979323846 / 2));
                    break;
                case 5:
                    psi.apply(qlab::Gate::h(q));
                    psi.apply(qlab::Gate::rz(q, -3.14159265358979323846 / 2));
                    break;
            }
        }
        psi.apply(target);
        psi.apply(inv);
        double term = 0;
        for (int q = 0; q < n; ++q) {
            qlab::Mat rho = psi.reduced_density(q);
            const qlab::cx* v = states[label[q]];
            qlab::cx f = std::conj(v[0]) * (rho(0, 0) * v[0] + rho(0, 1) * v[1]) +
                         std::conj(v[1]) * (rho(1, 0) * v[0] + rho(1, 1) * v[1]);
            term += 1.0 - f.real();
        }
        sum += term;
        sumsq += term * term;
    }
    double mean = sum / samples;
    double var = std::max(0.0, sumsq / samples - mean * mean);
    return {mean, std::sqrt(var / samples)};
}

PauliPropagationCost::PauliPropagationCost(const qlab::Circuit& target,
                                           std::vector<int> eval_qubits)
    : n_(target.num_qubits), eval_qubits_(std::move(eval_qubits)) {
    if (n_ > 30) throw std::invalid_argument("propagation cost: more than 30 qubits");
    for (const auto& m : target.moments)
        for (const qlab::Gate& g : m) target_gates_.push_back(&g);
}

PauliPropagationCost::ConjGate PauliPropagationCost::make_conj(const qlab::Gate& g, bool left) {
    ConjGate cg;
    cg.targets = g.targets;
    int k = g.arity();
    size_t codes = size_t{1} << (2 * k);
    cg.table.resize(codes);
    qlab::Mat gm = g.matrix();
    for (size_t code = 0; code < codes; ++code) {
        qlab::PauliString p(k);
        for (int q = 0; q < k; ++q) p.letters[q] = (code >> (2 * q)) & 3;
        qlab::Mat pm = p.matrix();
        qlab::Mat conj = left ? qlab::Mat(gm * pm * gm.adjoint()) : qlab::Mat(gm.adjoint() * pm * gm);
        auto dec = qlab::pauli_decompose_complex(conj);
        for (const auto& [letters, c] : dec) {
            if (std::abs(c.imag()) > 1e-10)
                throw std::logic_error("conjugation table: non-real coefficient");
            uint8_t out = 0;
            for (int q = 0; q < k; ++q) out |= letters[q] << (2 * q);
            cg.table[code].push_back({out, c.real()});
        }
    }
    return cg;
}

void PauliPropagationCost::apply_conj(const ConjGate& cg, Terms& terms, int n) {
    (void)n;
    Terms next;
    next.reserve(terms.size() * 2);
    int k = static_cast<int>(cg.targets.size());
    for (const auto& [code, coeff] : terms) {
        uint64_t local = 0;
        for (int q = 0; q < k; ++q) local |= ((code >> (2 * cg.targets[q])) & 3) << (2 * q);
        if (local == 0) {
            next[code] += coeff;
            continue;
        }
        uint64_t cleared = code;
        for (int q = 0; q < k; ++q) cleared &= ~(uint64_t{3} << (2 * cg.targets[q]));
        for (const auto& [out, c] : cg.table[local]) {
            uint64_t ncode = cleared;
            for (int q = 0; q < k; ++q)
                ncode |= static_cast<uint64_t>((out >> (2 * q)) & 3) << (2 * cg.targets[q]);
            next[ncode] += coeff * c;
        }
    }
    terms = std::move(next);
}

std::vector<PauliPropagationCost::ConjGate> PauliPropagationCost::build_ops(
    const qlab::Circuit& ansatz) const {
    std::vector<ConjGate> ops;
    // W = U_target * A^dag, so W P W^dag = U (A^dag P A) U^dag:
    // first conjugate by the ansatz gates in reverse order with G^dag P G,
    // then by the target gates forward with G P G^dag.
    std::vector<const qlab::Gate*> agates;
    for (const auto& m : ansatz.moments)
        for (const qlab::Gate& g : m) agates.push_back(&g);
    for (auto it = agates.rbegin(); it != agates.rend(); ++it)
        ops.push_back(make_conj(**it, false));
    for (const qlab::Gate* g : target_gates_) ops.push_back(make_conj(*g, true));
    return ops;
}

double PauliPropagationCost::deviation_for(const std::vector<ConjGate>& ops, int qubit) const {
    double dev = 0;
    for (uint64_t j = 1; j <= 3; ++j) {
        Terms terms;
        terms[j << (2 * qubit)] = 1.0;
        for (const ConjGate& op : ops) apply_conj(op, terms, n_);
        for (uint64_t i = 1; i <= 3; ++i) {
            auto it = terms.find(i << (2 * qubit));
            double r = it == terms.end() ? 0.0 : it->second;
            double want = i == j ? 1.0 : 0.0;
            dev += (r - want) * (r - want);
        }
    }
    return dev;
}

double PauliPropagationCost::evaluate(const qlab::Circuit& ansatz) const {
    auto ops = build_ops(ansatz);
    double total = 0;
    for (int q : eval_qubits_) total += deviation_for(ops, q);
    return total;
}

double PauliPropagationCost::qubit_deviation(const qlab::Circuit& ansatz, int qubit) const {
    auto ops = build_ops(ansatz);
    return deviation_for(ops, qubit);
}

}  // namespace qlab::landscape
