#include "qcore/superop.hpp"

#include <stdexcept>

namespace qlab {

namespace {

// P|b> = phase * |b ^ flip> for a single-qubit letter at bit `pos`
inline void letter_action(uint8_t letter, int pos, size_t b, size_t& out, cx& phase) {
    size_t mask = size_t{1} << pos;
    switch (letter) {
        case 0: out = b; phase = 1; return;
        case 1: out = b ^ mask; phase = 1; return;
        case 2: out = b ^ mask; phase = (b & mask) ? cx(0, -1) : cx(0, 1); return;
        case 3: out = b; phase = (b & mask) ? -1.0 : 1.0; return;
    }
    throw std::invalid_argument("bad letter");
}

// multi-qubit string given as base-4 code, qubit 0 = least significant pair
inline void string_action(size_t code, int k, size_t b, size_t& out, cx& phase) {
    out = b;
    phase = 1;
    for (int q = 0; q < k; ++q) {
        uint8_t l = (code >> (2 * q)) & 3;
        if (!l) continue;
        size_t o;
        cx ph;
        letter_action(l, q, out, o, ph);
        out = o;
        phase *= ph;
    }
}

}  // namespace

Eigen::MatrixXd superoperator_matrix(const Mat& u) {
    size_t dim = u.rows();
    int k = 0;
    while ((size_t{1} << k) < dim) ++k;
    if ((size_t{1} << k) != dim) throw std::invalid_argument("superoperator: dim not a power of 2");
    if (k > 6) throw std::invalid_argument("superoperator: dense form capped at 6 qubits");
    size_t np = size_t{1} << (2 * k);
    Eigen::MatrixXd r(np, np);
    // Tr[P_i U P_j U^dag] = sum_{b,d} phi_i(b) phi_j(d) U(b, sigma_j(d)) conj(U(sigma_i(b), d))
    for (size_t i = 0; i < np; ++i)
        for (size_t j = 0; j < np; ++j) {
            cx acc = 0;
            for (size_t b = 0; b < dim; ++b) {
                size_t si;
                cx phi;
                string_action(i, k, b, si, phi);
                for (size_t d = 0; d < dim; ++d) {
                    size_t sj;
                    cx phj;
                    string_action(j, k, d, sj, phj);
                    acc += phi * phj * u(b, sj) * std::conj(u(si, d));
                }
            }
            r(i, j) = (acc / static_cast<double>(dim)).real();
        }
    return r;
}

Eigen::Matrix4d reduced_ptm(const Mat& w, int target, int window_qubits) {
    size_t dim = w.rows();
    if (dim != (size_t{1} << window_qubits))
        throw std::invalid_argument("reduced_ptm: size mismatch");
    Eigen::Matrix4d r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            cx acc = 0;
            for (size_t b = 0; b < dim; ++b) {
                size_t si;
                cx phi;
                letter_action(static_cast<uint8_t>(i), target, b, si, phi);
                for (size_t d = 0; d < dim; ++d) {
                    size_t sj;
                    cx phj;
                    letter_action(static_cast<uint8_t>(j), target, d, sj, phj);
                    acc += phi * phj * w(b, sj) * std::conj(w(si, d));
                }
            }
            r(i, j) = (acc / static_cast<double>(dim)).real();
        }
    return r;
}

double window_channel_deviation(const Mat& w, const std::vector<int>& targets, int window_qubits) {
    if (window_qubits > 12) throw std::invalid_argument("window_channel_deviation: window too large");
    double total = 0;
    for (int k : targets) {
        Eigen::Matrix4d r = reduced_ptm(w, k, window_qubits);
        total += (r - Eigen::Matrix4d::Identity()).squaredNorm();
    }
    return total;
}

}  // namespace qlab
