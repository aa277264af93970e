#include <doctest.h>

#include "qcore/statevector.hpp"

using namespace qlab;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("single hadamard on |0>") {
    Statevector s = Statevector::zero_state(1);
    s.apply(Gate::h(0));
    CHECK(std::abs(s.amps[0] - cx(1 / std::sqrt(2.0), 0)) < 1e-12);
    CHECK(std::abs(s.amps[1] - cx(1 / std::sqrt(2.0), 0)) < 1e-12);
}

TEST_CASE("cz acts trivially on |00>") {
    Statevector s = Statevector::zero_state(2);
    s.apply(Gate::h(0));
    s.apply(Gate::cz(0, 1));
    s.apply(Gate::h(0));
    CHECK(std::abs(s.amps[0] - cx(1, 0)) < 1e-12);
}

TEST_CASE("norm preserved by every gate kind") {
    Rng rng(9);
    for (int rep = 0; rep < 20; ++rep) {
        Statevector s = Statevector::zero_state(3);
        // random-ish state
        for (int q = 0; q < 3; ++q) {
            s.apply(Gate::h(q));
            s.apply(Gate::rz(q, rng.uniform(0, 6.28)));
            s.apply(Gate::ry(q, rng.uniform(0, 6.28)));
        }
        s.apply(Gate::cz(0, 1));
        s.apply(Gate::swap_pow(1, 2, rng.uniform(-2, 2)));
        s.apply(Gate::phased_xz(0, rng.uniform(0, 4), rng.uniform(0, 4), rng.uniform(0, 4)));
        CHECK(std::abs(s.norm() - 1.0) < 1e-10);
    }
}

TEST_CASE("x measurement of eigenstates and superpositions") {
    Rng rng(1);
    // |+> in X reads 0 with certainty
    Statevector plus = Statevector::zero_state(1);
    plus.apply(Gate::h(0));
    auto m = plus.measure(0, Basis::X, rng);
    CHECK(m.bit == 0);
    CHECK(m.prob == doctest::Approx(1.0));

    // |0> in X is a fair coin
    int ones = 0;
    for (int rep = 0; rep < 4000; ++rep) {
        Statevector z = Statevector::zero_state(1);
        Rng r = rng.stream(rep);
        ones += z.measure(0, Basis::X, r).bit;
    }
    CHECK(std::abs(ones / 4000.0 - 0.5) < 0.03);
}

TEST_CASE("rz then x measurement statistics") {
    // relative phase pi/3 gives Pr[1] = (1 - cos(pi/3))/2 = 0.25
    double p1 = 0;
    Statevector s = Statevector::zero_state(1);
    s.apply(Gate::h(0));
    s.apply(Gate::rz(0, kPi / 3));
    Statevector probe = s;
    auto forced = probe.measure_forced(0, Basis::X, 1);
    p1 = forced.prob;
    CHECK(p1 == doctest::Approx(0.25).epsilon(1e-10));
    // post-measurement state is the |-> eigenstate
    probe.apply(Gate::h(0));
    CHECK(std::abs(probe.amps[1] - cx(1, 0)) < 1e-9);
}

TEST_CASE("y measurement eigenstate") {
    Statevector s = Statevector::zero_state(1);
    s.apply(Gate::h(0));
    s.apply(Gate::rz(0, kPi / 2));  // |y+>
    Rng rng(4);
    auto m = s.measure(0, Basis::Y, rng);
    CHECK(m.bit == 0);
    CHECK(m.prob == doctest::Approx(1.0));
}

TEST_CASE("reset examples") {
    Rng rng(2);
    Statevector s = Statevector::zero_state(2);
    s.apply(Gate::x(0));
    s.apply(Gate::h(1));
    s.reset(0, rng);
    CHECK(std::abs(s.amps[0] - cx(1 / std::sqrt(2.0), 0)) < 1e-12);  // |0> x |+>
    CHECK(std::abs(s.amps[1]) < 1e-12);

    Statevector plus = Statevector::zero_state(1);
    plus.apply(Gate::h(0));
    plus.reset(0, rng);
    CHECK(std::abs(std::abs(plus.amps[0]) - 1.0) < 1e-12);

    // entangled pair: after resetting one qubit the partner's marginal is the
    // post-measurement mixture (here maximally mixed for a Bell pair)
    int ones = 0;
    for (int rep = 0; rep < 2000; ++rep) {
        Statevector bell = Statevector::zero_state(2);
        bell.apply(Gate::h(0));
        bell.apply(Gate::h(1));
        bell.apply(Gate::cz(0, 1));
        bell.apply(Gate::h(1));  // CNOT(0,1) built from H and CZ
        Rng r = rng.stream(rep);
        bell.reset(0, r);
        Mat rho = bell.reduced_density(1);
        ones += rho(1, 1).real() > 0.5 ? 1 : 0;
        CHECK(std::abs(rho(0, 1)) < 1e-9);  // partner collapsed to a Z eigenstate
    }
    CHECK(std::abs(ones / 2000.0 - 0.5) < 0.05);
}

TEST_CASE("pauli expectations") {
    Statevector s = Statevector::zero_state(2);
    s.apply(Gate::h(0));
    CHECK(s.expectation_pauli({1, 0}) == doctest::Approx(1.0));   // X on qubit 0
    CHECK(s.expectation_pauli({0, 3}) == doctest::Approx(1.0));   // Z on qubit 1
    CHECK(s.expectation_pauli({3, 0}) == doctest::Approx(0.0));
    CHECK(s.expectation_z(1) == doctest::Approx(1.0));
    s.apply(Gate::x(1));
    CHECK(s.expectation_z(1) == doctest::Approx(-1.0));
}

TEST_CASE("vanishing branch is rejected") {
    Statevector s = Statevector::zero_state(1);
    auto m = s.measure_forced(0, Basis::Z, 1);
    CHECK(m.prob == 0.0);
}
