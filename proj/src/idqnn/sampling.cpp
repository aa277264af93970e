#include "idqnn/sampling.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace qlab::idqnn {

namespace {

constexpr int kDenseSiteCeiling = 16;

void check_input(const IdqnnModel& model, const std::vector<uint8_t>& x) {
    if (static_cast<int>(x.size()) != model.num_sites())
        throw std::invalid_argument("input bitstring length mismatch");
}

// statevector over all sites after preparation, rotations and CZ layer
Statevector shallow_state(const IdqnnModel& model, const std::vector<uint8_t>& x) {
    int n = model.num_sites();
    if (n > kDenseSiteCeiling) throw std::invalid_argument("too many sites for dense simulation");
    Statevector s = Statevector::zero_state(n);
    for (int q = 0; q < n; ++q)
        if (x[q] == 0) s.apply(Gate::h(q));
    for (int q = 0; q < n; ++q) s.apply(Gate::rz(q, 2.0 * model.beta[q]));
    for (const auto& [a, b] : model.graph.edges) s.apply(Gate::cz(a, b));
    return s;
}

}  // namespace

Sample sample_shallow(const IdqnnModel& model, const std::vector<uint8_t>& x, qlab::Rng& rng) {
    check_input(model, x);
    Statevector s = shallow_state(model, x);
    int n = model.num_sites();
    Sample out;
    out.y.resize(n);
    out.log2_prob = 0;
    for (int q = 0; q < n; ++q) {
        MeasureResult m = s.measure(q, Basis::X, rng);
        out.y[q] = static_cast<uint8_t>(m.bit);
        out.log2_prob += std::log2(m.prob);
    }
    return out;
}

std::vector<double> exact_distribution(const IdqnnModel& model, const std::vector<uint8_t>& x) {
    check_input(model, x);
    Statevector s = shallow_state(model, x);
    // X-basis readout of every site = H everywhere, then computational probabilities
    for (int q = 0; q < model.num_sites(); ++q) s.apply(Gate::h(q));
    return s.probabilities();
}

Sample sample_deep(const IdqnnModel& model, const std::vector<uint8_t>& x, qlab::Rng& rng) {
    check_input(model, x);
    const LatticeGraph& g = model.graph;
    int slices = g.num_slices();
    int reg = g.slice_size();
    if (reg > kDenseSiteCeiling) throw std::invalid_argument("slice register too large");

    Sample out;
    out.y.assign(g.num_sites(), 0);
    out.log2_prob = 0;

    Statevector phi = Statevector::zero_state(reg);
    for (int r = 0; r < reg; ++r)
        if (x[r] == 0) phi.apply(Gate::h(r));

    for (int t = 0; t < slices; ++t) {
        for (int r = 0; r < reg; ++r)
            phi.apply(Gate::rz(r, 2.0 * model.beta[t * reg + r]));
        for (const auto& [a, b] : g.slice_edges(t)) phi.apply(Gate::cz(a, b));
        if (t + 1 < slices) {
            for (int r = 0; r < reg; ++r) {
                int site = t * reg + r;
                if (x[(t + 1) * reg + r] == 0) {
                    int m = rng.next_bit();
                    out.y[site] = static_cast<uint8_t>(m);
                    out.log2_prob -= 1.0;
                    if (m) phi.apply(Gate::z(r));
                    phi.apply(Gate::h(r));
                } else {
                    MeasureResult mr = phi.measure(r, Basis::X, rng);
                    out.y[site] = static_cast<uint8_t>(mr.bit);
                    out.log2_prob += std::log2(mr.prob);
                    // measured qubit sits in |+/-> unentangled; send it to |0>
                    phi.apply(Gate::h(r));
                    if (mr.bit) phi.apply(Gate::x(r));
                }
            }
        } else {
            for (int r = 0; r < reg; ++r) {
                MeasureResult mr = phi.measure(r, Basis::X, rng);
                out.y[t * reg + r] = static_cast<uint8_t>(mr.bit);
                out.log2_prob += std::log2(mr.prob);
            }
        }
    }
    return out;
}

namespace {

struct DeepEnum {
    const IdqnnModel& model;
    const std::vector<uint8_t>& x;
    std::vector<double>& table;
    int slices, reg;

    void slice_gates(Statevector& phi, int t) const {
        for (int r = 0; r < reg; ++r)
            phi.apply(Gate::rz(r, 2.0 * model.beta[t * reg + r]));
        for (const auto& [a, b] : model.graph.slice_edges(t)) phi.apply(Gate::cz(a, b));
    }

    void leaf(const Statevector& phi, int t, uint64_t ybits, double p) {
        // final slice X readout: H everywhere, enumerate outcomes
        Statevector h = phi;
        for (int r = 0; r < reg; ++r) h.apply(Gate::h(r));
        const auto probs = h.probabilities();
        for (size_t o = 0; o < probs.size(); ++o) {
            if (probs[o] < 1e-18) continue;
            uint64_t full = ybits;
            for (int r = 0; r < reg; ++r)
                if ((o >> r) & 1) full |= uint64_t{1} << (t * reg + r);
            table[full] += p * probs[o];
        }
    }

    void transfer(Statevector phi, int t, int r, uint64_t ybits, double p) {
        if (r == reg) {
            recurse(std::move(phi), t + 1, ybits, p);
            return;
        }
        int site = t * reg + r;
        if (x[(t + 1) * reg + r] == 0) {
            for (int m = 0; m < 2; ++m) {
                Statevector branch = phi;
                if (m) branch.apply(Gate::z(r));
                branch.apply(Gate::h(r));
                uint64_t yb = ybits | (static_cast<uint64_t>(m) << site);
                transfer(std::move(branch), t, r + 1, yb, p * 0.5);
            }
        } else {
            for (int bit = 0; bit < 2; ++bit) {
                Statevector branch = phi;
                MeasureResult mr = branch.measure_forced(r, Basis::X, bit);
                if (mr.prob < 1e-15) continue;
                branch.apply(Gate::h(r));
                if (bit) branch.apply(Gate::x(r));
                uint64_t yb = ybits | (static_cast<uint64_t>(bit) << site);
                transfer(std::move(branch), t, r + 1, yb, p * mr.prob);
            }
        }
    }

    void recurse(Statevector phi, int t, uint64_t ybits, double p) {
        slice_gates(phi, t);
        if (t + 1 < slices)
            transfer(std::move(phi), t, 0, ybits, p);
        else
            leaf(phi, t, ybits, p);
    }
};

}  // namespace

std::vector<double> deep_exact_distribution(const IdqnnModel& model,
                                            const std::vector<uint8_t>& x) {
    check_input(model, x);
    int n = model.num_sites();
    if (n > kDenseSiteCeiling) throw std::invalid_argument("too many sites to enumerate");
    std::vector<double> table(size_t{1} << n, 0.0);
    int reg = model.graph.slice_size();
    Statevector phi = Statevector::zero_state(reg);
    for (int r = 0; r < reg; ++r)
        if (x[r] == 0) phi.apply(Gate::h(r));
    DeepEnum e{model, x, table, model.graph.num_slices(), reg};
    e.recurse(std::move(phi), 0, 0, 1.0);
    return table;
}

namespace {

// shared deep walk over a stabilizer register; forced_y == nullptr samples
double clifford_deep(const IdqnnModel& model, const std::vector<uint8_t>& x,
                     std::vector<uint8_t>& y, const std::vector<uint8_t>* forced_y,
                     qlab::Rng* rng) {
    const LatticeGraph& g = model.graph;
    int slices = g.num_slices();
    int reg = g.slice_size();
    double log2p = 0;

    StabilizerTableau tab(reg);
    for (int r = 0; r < reg; ++r)
        if (x[r] == 0) tab.apply_h(r);

    auto measure_x = [&](int r, int site) -> double {
        MeasureResult mr;
        if (forced_y) {
            mr = tab.measure_x_forced(r, (*forced_y)[site]);
            if (mr.prob == 0.0) return -std::numeric_limits<double>::infinity();
        } else {
            mr = tab.measure_x(r, *rng);
        }
        y[site] = static_cast<uint8_t>(mr.bit);
        return std::log2(mr.prob);
    };

    for (int t = 0; t < slices; ++t) {
        for (int r = 0; r < reg; ++r) {
            double beta = model.beta[t * reg + r];
            tab.apply_gate(Gate::rz(r, 2.0 * beta));
        }
        for (const auto& [a, b] : g.slice_edges(t)) tab.apply_cz(a, b);
        for (int r = 0; r < reg; ++r) {
            int site = t * reg + r;
            if (t + 1 < slices) {
                if (x[(t + 1) * reg + r] == 0) {
                    int m = forced_y ? (*forced_y)[site] : rng->next_bit();
                    y[site] = static_cast<uint8_t>(m);
                    log2p -= 1.0;
                    if (m) tab.apply_z(r);
                    tab.apply_h(r);
                } else {
                    double lp = measure_x(r, site);
                    if (std::isinf(lp)) return lp;
                    log2p += lp;
                    tab.apply_h(r);
                    if (y[site]) tab.apply_x(r);
                }
            } else {
                double lp = measure_x(r, site);
                if (std::isinf(lp)) return lp;
                log2p += lp;
            }
        }
    }
    return log2p;
}

}  // namespace

Sample sample_clifford(const IdqnnModel& model, const std::vector<uint8_t>& x, qlab::Rng& rng) {
    check_input(model, x);
    Sample out;
    out.y.assign(model.num_sites(), 0);
    out.log2_prob = clifford_deep(model, x, out.y, nullptr, &rng);
    return out;
}

double clifford_log2_prob(const IdqnnModel& model, const std::vector<uint8_t>& x,
                          const std::vector<uint8_t>& y) {
    check_input(model, x);
    std::vector<uint8_t> scratch(model.num_sites(), 0);
    return clifford_deep(model, x, scratch, &y, nullptr);
}

}  // namespace qlab::idqnn
