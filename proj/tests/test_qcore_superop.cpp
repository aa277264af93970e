#include <doctest.h>

#include "expcli/corpus.hpp"
#include "qcore/superop.hpp"

using namespace qlab;

TEST_CASE("identity channel has identity transfer matrix") {
    Eigen::MatrixXd r = superoperator_matrix(Mat::Identity(4, 4));
    CHECK((r - Eigen::MatrixXd::Identity(16, 16)).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(window_channel_deviation(Mat::Identity(8, 8), {0, 1, 2}, 3) == doctest::Approx(0.0));
}

TEST_CASE("x conjugation flips the y and z rows") {
    Mat x(2, 2);
    x << 0, 1, 1, 0;
    Eigen::Matrix4d r = reduced_ptm(x, 0, 1);
    Eigen::Vector4d diag = r.diagonal();
    CHECK(diag(0) == doctest::Approx(1.0));
    CHECK(diag(1) == doctest::Approx(1.0));
    CHECK(diag(2) == doctest::Approx(-1.0));
    CHECK(diag(3) == doctest::Approx(-1.0));
    CHECK(window_channel_deviation(x, {0}, 1) == doctest::Approx(8.0));
}

TEST_CASE("swap with an ancilla deviates and matches the dense oracle") {
    // swap the target qubit with an ancilla prepared by an arbitrary unitary
    Rng rng(6);
    Circuit prep = cli::random_brickwork(2, 1, rng);
    Circuit c(2);
    c.extend(prep);
    c.append(Gate::swap(0, 1));
    Mat w = c.to_matrix();
    double dev = window_channel_deviation(w, {0}, 2);
    CHECK(dev > 0.1);
    // oracle: build the reduced map column by column from dense algebra
    Eigen::Matrix4d r = reduced_ptm(w, 0, 2);
    Eigen::Matrix4d want;
    const char* letters = "IXYZ";
    (void)letters;
    for (int j = 0; j < 4; ++j) {
        PauliString pj(2);
        pj.letters[0] = static_cast<uint8_t>(j);
        Mat in = pj.matrix() * 0.5;  // P_j x I / 2 on the full window, traced later
        Mat out = w * in * w.adjoint();
        for (int i = 0; i < 4; ++i) {
            PauliString pi(2);
            pi.letters[0] = static_cast<uint8_t>(i);
            want(i, j) = (pi.matrix() * out).trace().real() / 2.0;
        }
    }
    CHECK((r - want).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(dev == doctest::Approx((want - Eigen::Matrix4d::Identity()).squaredNorm()));
}

TEST_CASE("window size limits") {
    CHECK_THROWS(superoperator_matrix(Mat::Identity(1 << 7, 1 << 7)));
}
