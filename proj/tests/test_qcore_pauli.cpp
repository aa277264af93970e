#include <doctest.h>

#include "qcore/pauli.hpp"
#include "qcore/rng.hpp"

using namespace qlab;

TEST_CASE("pauli product composes phases") {
    PauliString x = PauliString::from_text("X");
    PauliString y = PauliString::from_text("Y");
    PauliString z = PauliString::from_text("Z");
    PauliString xy = x * y;  // XY = iZ
    CHECK(xy.letters == z.letters);
    CHECK(xy.phase_pow == 1);
    PauliString yx = y * x;  // YX = -iZ
    CHECK(yx.phase_pow == 3);
    // group law against dense matrices
    Rng rng(12);
    for (int rep = 0; rep < 40; ++rep) {
        PauliString a(3), b(3);
        for (int q = 0; q < 3; ++q) {
            a.letters[q] = static_cast<uint8_t>(rng.next_below(4));
            b.letters[q] = static_cast<uint8_t>(rng.next_below(4));
        }
        Mat want = a.matrix() * b.matrix();
        CHECK((want - (a * b).matrix()).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("weight and support") {
    PauliString p = PauliString::from_text("IXIZ");
    CHECK(p.weight() == 2);
    CHECK(p.support() == std::vector<int>{1, 3});
}

TEST_CASE("commutation") {
    CHECK(PauliString::from_text("XX").commutes(PauliString::from_text("ZZ")));
    CHECK(!PauliString::from_text("XI").commutes(PauliString::from_text("ZI")));
}

TEST_CASE("pauli decompose basics") {
    // identity
    PauliObservable id = pauli_decompose(Mat::Identity(2, 2));
    CHECK(id.coeff({0}) == doctest::Approx(1.0));
    CHECK(id.terms.size() == 1);
    // Z x Z: remember qubit 0 is the least significant factor
    PauliObservable zz = pauli_decompose(PauliString::from_text("ZZ").matrix());
    CHECK(zz.coeff({3, 3}) == doctest::Approx(1.0));
    CHECK(zz.terms.size() == 1);
    // the swap decomposes into (II + XX + YY + ZZ)/2
    PauliObservable sw = pauli_decompose(Gate::swap(0, 1).matrix());
    CHECK(sw.coeff({0, 0}) == doctest::Approx(0.5));
    CHECK(sw.coeff({1, 1}) == doctest::Approx(0.5));
    CHECK(sw.coeff({2, 2}) == doctest::Approx(0.5));
    CHECK(sw.coeff({3, 3}) == doctest::Approx(0.5));
    // dimension must be a power of two
    CHECK_THROWS(pauli_decompose(Mat::Identity(3, 3)));
}

TEST_CASE("decompose round trip on random hermitian matrices") {
    Rng rng(77);
    for (int k = 1; k <= 4; ++k) {
        size_t dim = size_t{1} << k;
        Mat m(dim, dim);
        for (size_t i = 0; i < dim; ++i)
            for (size_t j = 0; j < dim; ++j) m(i, j) = cx(rng.uniform(-1, 1), rng.uniform(-1, 1));
        m = (m + Mat(m.adjoint())).eval();
        PauliObservable obs = pauli_decompose(m);
        CHECK((obs.matrix() - m).cwiseAbs().maxCoeff() < 1e-9);
    }
}

TEST_CASE("observable algebra") {
    PauliObservable a(2);
    a.add({1, 0}, 0.5);
    a.add({0, 3}, -0.25);
    a.add({1, 0}, 0.5);
    CHECK(a.coeff({1, 0}) == doctest::Approx(1.0));
    CHECK(a.support() == std::vector<int>{0, 1});
    CHECK(a.sum_sq_coeffs() == doctest::Approx(1.0 + 0.0625));
    // infinity norm of X + c I style combinations
    PauliObservable b(1);
    b.add({1}, 1.0);
    b.add({0}, 0.5);
    CHECK(b.infinity_norm() == doctest::Approx(1.5));
}

TEST_CASE("conjugation through a circuit matches dense") {
    Rng rng(5);
    for (int rep = 0; rep < 10; ++rep) {
        Circuit c(3);
        c.append(Gate::h(0));
        c.append(Gate::rz(1, rng.uniform(0, 6.28)));
        c.append(Gate::cz(0, 1));
        c.append(Gate::swap_pow(1, 2, rng.uniform(-1, 1)));
        c.append(Gate::ry(2, rng.uniform(0, 6.28)));
        c.append(Gate::cz(1, 2));

        PauliObservable obs(3);
        obs.add({3, 0, 0}, 0.8);
        obs.add({0, 1, 2}, -0.3);

        Mat u = c.to_matrix();
        Mat m = obs.matrix();
        CHECK((obs.conjugated(c, false).matrix() - u.adjoint() * m * u).cwiseAbs().maxCoeff() <
              1e-9);
        CHECK((obs.conjugated(c, true).matrix() - u * m * u.adjoint()).cwiseAbs().maxCoeff() <
              1e-9);
    }
}
