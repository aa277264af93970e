#include <doctest.h>

#include "qcore/circuit.hpp"
#include "qcore/rng.hpp"

using namespace qlab;

namespace {
constexpr double kPi = 3.14159265358979323846;

Circuit random_circuit(int n, int gates, Rng& rng) {
    Circuit c(n);
    for (int g = 0; g < gates; ++g) {
        switch (rng.next_below(6)) {
            case 0: c.append(Gate::h(static_cast<int>(rng.next_below(n)))); break;
            case 1: c.append(Gate::rz(static_cast<int>(rng.next_below(n)), rng.uniform(0, 6.28))); break;
            case 2: c.append(Gate::rx(static_cast<int>(rng.next_below(n)), rng.uniform(0, 6.28))); break;
            case 3: {
                int a = static_cast<int>(rng.next_below(n));
                int b = (a + 1 + static_cast<int>(rng.next_below(n - 1))) % n;
                c.append(Gate::cz(a, b));
                break;
            }
            case 4: {
                int a = static_cast<int>(rng.next_below(n));
                int b = (a + 1 + static_cast<int>(rng.next_below(n - 1))) % n;
                c.append(Gate::swap_pow(a, b, rng.uniform(-2, 2)));
                break;
            }
            default:
                c.append(Gate::phased_xz(static_cast<int>(rng.next_below(n)), rng.uniform(0, 4),
                                         rng.uniform(0, 4), rng.uniform(0, 4)));
        }
    }
    return c;
}

}  // namespace

TEST_CASE("every gate matrix is unitary") {
    Rng rng(11);
    for (int rep = 0; rep < 30; ++rep) {
        Circuit c = random_circuit(3, 8, rng);
        for (const auto& m : c.moments)
            for (const Gate& g : m) CHECK(is_unitary(g.matrix(), 1e-10));
    }
}

TEST_CASE("swap power closed form") {
    // p = 1 is the swap itself
    Mat s = Gate::swap(0, 1).matrix();
    CHECK(std::abs(s(1, 2) - cx(1, 0)) < 1e-12);
    CHECK(std::abs(s(1, 1)) < 1e-12);
    CHECK(std::abs(s(0, 0) - cx(1, 0)) < 1e-12);

    // entries match e^{i pi p/2} cos(pi p/2) and -i e^{i pi p/2} sin(pi p/2)
    double p = 0.37;
    Mat m = Gate::swap_pow(0, 1, p).matrix();
    cx ph = std::exp(cx(0, kPi * p / 2));
    CHECK(std::abs(m(1, 1) - ph * std::cos(kPi * p / 2)) < 1e-12);
    CHECK(std::abs(m(1, 2) - ph * cx(0, -std::sin(kPi * p / 2))) < 1e-12);

    // halves compose: SWAP^{1/2} squared = SWAP
    Mat h = Gate::swap_pow(0, 1, 0.5).matrix();
    CHECK((h * h - s).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("phased xz equals its defining composition") {
    double x = 1.3, z = 0.45, a = 2.7;
    Mat m = Gate::phased_xz(0, x, z, a).matrix();
    Mat want = pauli_power_z(z) * pauli_power_z(a) * pauli_power_x(x) * pauli_power_z(-a);
    CHECK((m - want).cwiseAbs().maxCoeff() < 1e-12);
    // exponent 0 everywhere is the identity
    Mat id = Gate::phased_xz(0, 0, 0, 0).matrix();
    CHECK((id - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("dense gate validates unitarity") {
    Mat bad(2, 2);
    bad << 1, 0, 0, 2;
    CHECK_THROWS(Gate::make_dense({0}, bad));
    Mat ok(2, 2);
    ok << 0, 1, 1, 0;
    CHECK_NOTHROW(Gate::make_dense({0}, ok));
}

TEST_CASE("circuit then formal inverse is the identity") {
    Rng rng(42);
    for (int rep = 0; rep < 10; ++rep) {
        Circuit c = random_circuit(4, 12, rng);
        Mat u = c.to_matrix();
        Mat v = c.inverse().to_matrix();
        CHECK((v * u - Mat::Identity(16, 16)).cwiseAbs().maxCoeff() < 1e-8);
    }
}

TEST_CASE("moments never share targets") {
    Circuit c(3);
    CHECK_THROWS(c.append_moment({Gate::h(0), Gate::rz(0, 1.0)}));
    c.append(Gate::h(0));
    c.append(Gate::h(1));  // packs into the same moment
    CHECK(c.depth() == 1);
    c.append(Gate::cz(0, 2));
    CHECK(c.depth() == 2);
    CHECK_THROWS(c.append(Gate::h(5)));
    CHECK_THROWS(c.append(Gate::cz(1, 1)));
}

TEST_CASE("circuit json round trip is exact and deterministic") {
    Rng rng(7);
    Circuit c = random_circuit(3, 10, rng);
    std::string j1 = c.to_json();
    Circuit c2 = Circuit::from_json(j1);
    CHECK(c2.to_json() == j1);
    CHECK((c.to_matrix() - c2.to_matrix()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("operator norm") {
    CHECK(operator_norm(Mat::Identity(8, 8)) == doctest::Approx(1.0));
    CHECK(operator_norm(2.0 * Mat::Identity(32, 32)) == doctest::Approx(2.0));
    // random 4x4 unitary minus identity vs the dense decomposition
    Rng rng(3);
    Circuit c = random_circuit(2, 6, rng);
    Mat m = c.to_matrix() - Mat::Identity(4, 4);
    Eigen::JacobiSVD<Mat> svd(m);
    CHECK(operator_norm(m) == doctest::Approx(svd.singularValues()(0)).epsilon(1e-8));
    // iterative path above dim 256 agrees with the dense path
    Mat big = Mat::Zero(512, 512);
    for (int i = 0; i < 512; ++i) big(i, i) = 0.1 + 0.9 * std::sin(i * 0.57);
    big(0, 1) = 3.3;
    double got = operator_norm(big);
    Eigen::JacobiSVD<Mat> svd2(big);
    CHECK(got == doctest::Approx(svd2.singularValues()(0)).epsilon(1e-6));
}

TEST_CASE("unitary projection lands on the nearest unitary") {
    Rng rng(5);
    Circuit c = random_circuit(2, 6, rng);
    Mat u = c.to_matrix();
    Mat noisy = u;
    noisy(0, 0) += 0.05;
    noisy(2, 3) -= cx(0.02, 0.03);
    Mat proj = project_unitary(noisy);
    CHECK(is_unitary(proj, 1e-9));
    // projection of a unitary is itself
    CHECK((project_unitary(u) - u).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("hermitian exponential") {
    Mat h(2, 2);
    h << 1.0, cx(0, -0.5), cx(0, 0.5), -1.0;
    Mat e = expm_hermitian(h, -0.7);
    CHECK(is_unitary(e, 1e-10));
    // derivative check: e^{-i e H} ~ I - i e H for small e
    Mat small = expm_hermitian(h, -1e-6);
    Mat approx = Mat::Identity(2, 2) - cx(0, 1e-6) * h;
    CHECK((small - approx).cwiseAbs().maxCoeff() < 1e-11);
}
