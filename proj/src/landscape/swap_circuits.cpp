#include "landscape/swap_circuits.hpp"

#include <cmath>
#include <stdexcept>

namespace qlab::landscape {

namespace {
constexpr double kPi = 3.14159265358979323846;

// exp(i theta SWAP) = cos(theta) I + i sin(theta) SWAP
qlab::Gate exp_swap(int a, int b, double theta) {
    qlab::Mat m = qlab::Mat::Zero(4, 4);
    qlab::cx c = std::cos(theta), is = qlab::cx(0, std::sin(theta));
    m(0, 0) = c + is;
    m(3, 3) = c + is;
    m(1, 1) = c;
    m(2, 2) = c;
    m(1, 2) = is;
    m(2, 1) = is;
    return qlab::Gate::make_dense({a, b}, m);
}

}  // namespace

void SwapTargetSpec::validate() const {
    if (n < 4) throw std::invalid_argument("swap target: need at least 4 qubits");
    for (int j : blocks)
        if (j < 0 || j >= block_count()) throw std::invalid_argument("swap target: block out of range");
}

qlab::Circuit build_swap_target(const SwapTargetSpec& spec) {
    spec.validate();
    qlab::Circuit c(spec.n);
    for (int j : spec.blocks) c.append(qlab::Gate::swap(4 * j, 4 * j + 3));
    return c;
}

size_t theta_dim(AnsatzKind kind, int n) {
    size_t even_pairs = n / 2;           // (0,1), (2,3), ...
    size_t odd_pairs = (n - 1) / 2;      // (1,2), (3,4), ...
    if (kind == AnsatzKind::ThetaSwapLayers) return 2 * even_pairs + odd_pairs;
    return 2 * (even_pairs + odd_pairs);
}

qlab::Circuit ansatz_unitary(AnsatzKind kind, int n, const std::vector<double>& theta) {
    if (theta.size() != theta_dim(kind, n))
        throw std::invalid_argument("ansatz: parameter dimension mismatch");
    qlab::Circuit c(n);
    size_t even_pairs = n / 2;
    size_t odd_pairs = (n - 1) / 2;
    if (kind == AnsatzKind::ThetaSwapLayers) {
        // theta layout: [layer1 even pairs][layer2 odd pairs][layer3 even pairs];
        // layer 3 is applied first in time
        size_t l1 = 0, l2 = even_pairs, l3 = even_pairs + odd_pairs;
        for (size_t m = 0; m < even_pairs; ++m)
            c.append(exp_swap(2 * m, 2 * m + 1, theta[l3 + m]));
        for (size_t m = 0; m < odd_pairs; ++m)
            c.append(exp_swap(2 * m + 1, 2 * m + 2, theta[l2 + m]));
        for (size_t m = 0; m < even_pairs; ++m)
            c.append(exp_swap(2 * m, 2 * m + 1, theta[l1 + m]));
    } else {
        // two repetitions of [even-pair layer, odd-pair layer]
        size_t p = 0;
        for (int rep = 0; rep < 2; ++rep) {
            for (size_t m = 0; m < even_pairs; ++m)
                c.append(qlab::Gate::swap_pow(2 * m, 2 * m + 1, theta[p++]));
            for (size_t m = 0; m < odd_pairs; ++m)
                c.append(qlab::Gate::swap_pow(2 * m + 1, 2 * m + 2, theta[p++]));
        }
    }
    return c;
}

std::vector<size_t> block_param_indices(AnsatzKind kind, int n, int block) {
    size_t even_pairs = n / 2;
    size_t odd_pairs = (n - 1) / 2;
    std::vector<size_t> out;
    // block qubits 4j .. 4j+3 own even pairs (4j,4j+1), (4j+2,4j+3) and the
    // odd pair (4j+1, 4j+2)
    size_t e0 = 2 * block;      // even-pair index of (4j, 4j+1)
    size_t e1 = 2 * block + 1;  // even-pair index of (4j+2, 4j+3)
    size_t o = 2 * block;       // odd-pair index of (4j+1, 4j+2)
    if (kind == AnsatzKind::ThetaSwapLayers) {
        size_t l2 = even_pairs, l3 = even_pairs + odd_pairs;
        out = {e0, e1, l2 + o, l3 + e0, l3 + e1};
    } else {
        size_t rep = even_pairs + odd_pairs;
        out = {e0, e1, even_pairs + o, rep + e0, rep + e1, rep + even_pairs + o};
    }
    return out;
}

std::vector<double> enumerate_theta_x(const SwapTargetSpec& spec, uint64_t x) {
    spec.validate();
    size_t s = spec.blocks.size();
    if (x >= (uint64_t{1} << s)) throw std::out_of_range("theta_x: x out of range");
    std::vector<double> theta(theta_dim(AnsatzKind::ThetaSwapLayers, spec.n), 0.0);
    // blocks sorted ascending; bit id(j) of x controls block j
    for (size_t id = 0; id < s; ++id) {
        if (!((x >> id) & 1)) continue;
        for (size_t idx : block_param_indices(AnsatzKind::ThetaSwapLayers, spec.n, spec.blocks[id]))
            theta[idx] = kPi / 2;
    }
    return theta;
}

}  // namespace qlab::landscape
