#include <doctest.h>

#include "qcore/stabilizer.hpp"

using namespace qlab;

namespace {

// random Clifford circuit as a gate list applicable to both simulators
std::vector<Gate> random_clifford_gates(int n, int count, Rng& rng) {
    std::vector<Gate> gates;
    for (int g = 0; g < count; ++g) {
        switch (rng.next_below(5)) {
            case 0: gates.push_back(Gate::h(static_cast<int>(rng.next_below(n)))); break;
            case 1:
                gates.push_back(
                    Gate::rz(static_cast<int>(rng.next_below(n)),
                             1.5707963267948966 * static_cast<double>(1 + rng.next_below(3))));
                break;
            case 2: gates.push_back(Gate::x(static_cast<int>(rng.next_below(n)))); break;
            case 3: {
                int a = static_cast<int>(rng.next_below(n));
                int b = (a + 1 + static_cast<int>(rng.next_below(n - 1))) % n;
                gates.push_back(Gate::cz(a, b));
                break;
            }
            default: gates.push_back(Gate::y(static_cast<int>(rng.next_below(n)))); break;
        }
    }
    return gates;
}

}  // namespace

TEST_CASE("fresh tableau measures deterministically") {
    StabilizerTableau tab(3);
    Rng rng(1);
    auto m = tab.measure_z(1, rng);
    CHECK(m.bit == 0);
    CHECK(m.prob == 1.0);
}

TEST_CASE("hadamard makes the z outcome a fair coin") {
    Rng rng(2);
    int ones = 0;
    for (int rep = 0; rep < 2000; ++rep) {
        StabilizerTableau tab(1);
        tab.apply_h(0);
        Rng r = rng.stream(rep);
        auto m = tab.measure_z(0, r);
        CHECK(m.prob == 0.5);
        ones += m.bit;
        // repeated measurement is now deterministic
        auto again = tab.measure_z(0, r);
        CHECK(again.prob == 1.0);
        CHECK(again.bit == m.bit);
    }
    CHECK(std::abs(ones / 2000.0 - 0.5) < 0.04);
}

TEST_CASE("x measurement and reset") {
    StabilizerTableau tab(2);
    Rng rng(3);
    tab.apply_h(0);
    auto m = tab.measure_x(0, rng);
    CHECK(m.bit == 0);
    CHECK(m.prob == 1.0);

    tab.apply_x(1);
    tab.reset(1, rng);
    auto z = tab.measure_z(1, rng);
    CHECK(z.bit == 0);
    CHECK(z.prob == 1.0);
}

TEST_CASE("non-clifford gates are rejected") {
    StabilizerTableau tab(2);
    CHECK_THROWS(tab.apply_gate(Gate::rz(0, 0.3)));
    CHECK_THROWS(tab.apply_gate(Gate::swap_pow(0, 1, 0.5)));
    CHECK_NOTHROW(tab.apply_gate(Gate::rz(0, 1.5707963267948966)));
    CHECK_NOTHROW(tab.apply_gate(Gate::swap_pow(0, 1, 1.0)));
}

TEST_CASE("per-bitstring probabilities agree exactly with the statevector") {
    Rng rng(17);
    for (int rep = 0; rep < 12; ++rep) {
        int n = 2 + static_cast<int>(rng.next_below(5));  // up to 6 qubits
        Rng crng = rng.stream(rep);
        auto gates = random_clifford_gates(n, 10 * n, crng);

        StabilizerTableau tab(n);
        Statevector sv = Statevector::zero_state(n);
        for (const Gate& g : gates) {
            tab.apply_gate(g);
            sv.apply(g);
        }
        auto probs = sv.probabilities();
        for (size_t y = 0; y < probs.size(); ++y) {
            StabilizerTableau replay = tab;
            double p = 1.0;
            for (int q = 0; q < n; ++q) {
                auto m = replay.measure_z_forced(q, (y >> q) & 1);
                p *= m.prob;
                if (p == 0) break;
            }
            CHECK(std::abs(p - probs[y]) < 1e-10);  // stabilizer probabilities are dyadic
        }
    }
}

TEST_CASE("sampled distribution matches the statevector oracle") {
    Rng rng(23);
    int n = 5;
    auto gates = random_clifford_gates(n, 40, rng);
    StabilizerTableau base(n);
    Statevector sv = Statevector::zero_state(n);
    for (const Gate& g : gates) {
        base.apply_gate(g);
        sv.apply(g);
    }
    auto probs = sv.probabilities();
    std::vector<double> hist(probs.size(), 0.0);
    const int shots = 100000;
    for (int s = 0; s < shots; ++s) {
        StabilizerTableau tab = base;
        Rng r = rng.stream(s);
        size_t y = 0;
        for (int q = 0; q < n; ++q) y |= static_cast<size_t>(tab.measure_z(q, r).bit) << q;
        hist[y] += 1.0 / shots;
    }
    double tvd = 0;
    for (size_t i = 0; i < probs.size(); ++i) tvd += std::abs(hist[i] - probs[i]);
    CHECK(tvd / 2 < 0.02);
}

TEST_CASE("tableau to statevector round trip") {
    Rng rng(29);
    auto gates = random_clifford_gates(3, 15, rng);
    StabilizerTableau tab(3);
    Statevector sv = Statevector::zero_state(3);
    for (const Gate& g : gates) {
        tab.apply_gate(g);
        sv.apply(g);
    }
    Statevector got = tab.to_statevector();
    // states match up to a global phase
    cx overlap = got.inner(sv);
    CHECK(std::abs(std::abs(overlap) - 1.0) < 1e-9);
}
