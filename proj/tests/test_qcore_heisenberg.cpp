#include <doctest.h>

#include "expcli/corpus.hpp"
#include "qcore/heisenberg.hpp"

using namespace qlab;

TEST_CASE("backward lightcone basics") {
    Circuit empty(5);
    CHECK(backward_lightcone(empty, {3}) == std::set<int>{3});

    // 1D brickwork of depth 2 spreads two sites each way
    Circuit brick(6);
    brick.append_moment({Gate::cz(0, 1), Gate::cz(2, 3), Gate::cz(4, 5)});
    brick.append_moment({Gate::cz(1, 2), Gate::cz(3, 4)});
    CHECK(backward_lightcone(brick, {2}) == std::set<int>{0, 1, 2, 3, 4});
    CHECK(backward_lightcone(brick, {0}) == std::set<int>{0, 1, 2});

    // disjoint single-qubit gates never grow the cone
    Circuit singles(4);
    for (int q = 0; q < 4; ++q) singles.append(Gate::h(q));
    CHECK(backward_lightcone(singles, {2}) == std::set<int>{2});
}

TEST_CASE("lightcone is monotone and idempotent") {
    Rng rng(31);
    cli::random_brickwork(6, 2, rng);  // warm the stream, then use a fresh circuit
    Circuit c = cli::random_brickwork(6, 3, rng.stream(1));
    auto cone1 = backward_lightcone(c, {2});
    CHECK(cone1.count(2) == 1);
    CHECK(backward_lightcone(c, cone1) == cone1);
    auto cone2 = backward_lightcone(c, {2, 4});
    for (int q : cone1) CHECK(cone2.count(q) == 1);
}

TEST_CASE("heisenberg evolution basics") {
    Circuit id(3);
    PauliObservable z1 = heisenberg_evolve(id, PauliString::single(3, 1, 3));
    CHECK(z1.coeff({0, 3, 0}) == doctest::Approx(1.0));
    CHECK(z1.terms.size() == 1);

    Circuit h(3);
    h.append(Gate::h(1));
    PauliObservable hx = heisenberg_evolve(h, PauliString::single(3, 1, 3));
    CHECK(hx.coeff({0, 1, 0}) == doctest::Approx(1.0));  // HZH = X
    CHECK(hx.terms.size() == 1);

    CHECK_THROWS(heisenberg_evolve(id, PauliString(3)));  // weight-0 input
}

TEST_CASE("heisenberg evolution matches the dense oracle") {
    Rng rng(8);
    for (int rep = 0; rep < 6; ++rep) {
        Circuit c = cli::random_brickwork(4, 2, rng.stream(rep));
        Mat u = c.to_matrix();
        PauliString p = PauliString::single(4, 2, 3);
        PauliObservable got = heisenberg_evolve(c, p);
        Mat want = u.adjoint() * p.matrix() * u;
        CHECK((got.matrix() - want).cwiseAbs().maxCoeff() < 1e-9);
        CHECK(got.sum_sq_coeffs() == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("window limit is enforced") {
    Rng rng(4);
    Circuit c = cli::random_brickwork(6, 4, rng);
    CHECK_THROWS(heisenberg_evolve(c, PauliString::single(6, 3, 3), 3));
}
