#include "qcore/matrix.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <stdexcept>

namespace qlab {

Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Mat embed(const Mat& op, const std::vector<int>& qubits, int num_qubits) {
    int k = static_cast<int>(qubits.size());
    if (op.rows() != (1 << k)) throw std::invalid_argument("embed: operator size mismatch");
    size_t dim = size_t{1} << num_qubits;
    Mat out = Mat::Zero(dim, dim);
    int rest = num_qubits - k;
    size_t rest_dim = size_t{1} << rest;
    std::vector<int> rest_qubits;
    for (int q = 0; q < num_qubits; ++q) {
        bool in = false;
        for (int t : qubits)
            if (t == q) in = true;
        if (!in) rest_qubits.push_back(q);
    }
    auto compose = [&](size_t sub, size_t r) {
        size_t idx = 0;
        for (int b = 0; b < k; ++b) idx |= ((sub >> b) & 1) << qubits[b];
        for (int b = 0; b < rest; ++b) idx |= ((r >> b) & 1) << rest_qubits[b];
        return idx;
    };
    for (size_t r = 0; r < rest_dim; ++r)
        for (size_t i = 0; i < (size_t{1} << k); ++i)
            for (size_t j = 0; j < (size_t{1} << k); ++j)
                out(compose(i, r), compose(j, r)) = op(i, j);
    return out;
}

Mat partial_trace(const Mat& m, const std::vector<int>& keep, int num_qubits) {
    int k = static_cast<int>(keep.size());
    std::vector<int> rest;
    for (int q = 0; q < num_qubits; ++q) {
        bool in = false;
        for (int t : keep)
            if (t == q) in = true;
        if (!in) rest.push_back(q);
    }
    int r = static_cast<int>(rest.size());
    Mat out = Mat::Zero(1 << k, 1 << k);
    auto compose = [&](size_t sub, size_t rr) {
        size_t idx = 0;
        for (int b = 0; b < k; ++b) idx |= ((sub >> b) & 1) << keep[b];
        for (int b = 0; b < r; ++b) idx |= ((rr >> b) & 1) << rest[b];
        return idx;
    };
    for (size_t i = 0; i < (size_t{1} << k); ++i)
        for (size_t j = 0; j < (size_t{1} << k); ++j) {
            cx acc = 0;
            for (size_t rr = 0; rr < (size_t{1} << r); ++rr) acc += m(compose(i, rr), compose(j, rr));
            out(i, j) = acc;
        }
    return out;
}

double operator_norm(const Mat& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("operator_norm: square matrix required");
    if (m.rows() > (1 << 12)) throw std::invalid_argument("operator_norm: dimension above 2^12");
    if (m.rows() <= 256) {
        Eigen::JacobiSVD<Mat> svd(m);
        return svd.singularValues()(0);
    }
    // power iteration on M^dag M with restarts
    Eigen::Index n = m.rows();
    double best = 0.0;
    for (int restart = 0; restart < 5; ++restart) {
        Vec v = Vec::Zero(n);
        // deterministic pseudo-random start, different per restart
        for (Eigen::Index i = 0; i < n; ++i) {
            double a = std::sin(0.7548776662 * static_cast<double>(i + 1) * (restart + 1));
            double b = std::cos(0.5698402909 * static_cast<double>(i + 2) * (restart + 1));
            v(i) = cx(a, b);
        }
        v.normalize();
        double prev = 0.0;
        for (int it = 0; it < 500; ++it) {
            Vec w = m.adjoint() * (m * v);
            double lam = std::sqrt(w.norm());
            if (w.norm() < 1e-300) break;
            v = w / w.norm();
            if (std::abs(lam - prev) < 1e-9 * std::max(1.0, lam)) {
                if (lam > best) best = lam;
                break;
            }
            prev = lam;
            if (it == 499) throw std::runtime_error("operator_norm: power iteration did not converge");
        }
        if (prev > best) best = prev;
    }
    return best;
}

Mat project_unitary(const Mat& m) {
    Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return svd.matrixU() * svd.matrixV().adjoint();
}

Mat expm_hermitian(const Mat& h, double scale) {
    Eigen::SelfAdjointEigenSolver<Mat> es(h);
    Vec phases(h.rows());
    for (Eigen::Index i = 0; i < h.rows(); ++i)
        phases(i) = std::exp(cx(0.0, scale * es.eigenvalues()(i)));
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

bool is_unitary(const Mat& m, double tol) {
    if (m.rows() != m.cols()) return false;
    Mat d = m.adjoint() * m - Mat::Identity(m.rows(), m.cols());
    return d.cwiseAbs().maxCoeff() < tol;
}

}  // namespace qlab
