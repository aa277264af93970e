#include "qcore/stabilizer.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "qcore/pauli.hpp"

namespace qlab {

StabilizerTableau::StabilizerTableau(int num_qubits) : n_(num_qubits) {
    words_ = (n_ + 63) / 64;
    // 2n generator rows plus one scratch row for deterministic measurements
    size_t rows = 2 * static_cast<size_t>(n_) + 1;
    xs_.assign(rows * words_, 0);
    zs_.assign(rows * words_, 0);
    r_.assign(rows, 0);
    for (int i = 0; i < n_; ++i) {
        toggle(xs_, i, i);        // destabilizer X_i
        toggle(zs_, n_ + i, i);   // stabilizer Z_i
    }
}

void StabilizerTableau::row_clear(int row) {
    for (int w = 0; w < words_; ++w) {
        xs_[static_cast<size_t>(row) * words_ + w] = 0;
        zs_[static_cast<size_t>(row) * words_ + w] = 0;
    }
    r_[row] = 0;
}

void StabilizerTableau::row_copy(int dst, int src) {
    for (int w = 0; w < words_; ++w) {
        xs_[static_cast<size_t>(dst) * words_ + w] = xs_[static_cast<size_t>(src) * words_ + w];
        zs_[static_cast<size_t>(dst) * words_ + w] = zs_[static_cast<size_t>(src) * words_ + w];
    }
    r_[dst] = r_[src];
}

void StabilizerTableau::rowsum(int h, int i) {
    // phase exponent of the product, mod 4, accumulated bit-parallel
    int acc = 2 * (r_[h] + r_[i]);
    for (int w = 0; w < words_; ++w) {
        uint64_t x2 = xs_[static_cast<size_t>(i) * words_ + w];
        uint64_t z2 = zs_[static_cast<size_t>(i) * words_ + w];
        uint64_t x1 = xs_[static_cast<size_t>(h) * words_ + w];
        uint64_t z1 = zs_[static_cast<size_t>(h) * words_ + w];
        uint64_t plus = (x2 & z2 & z1 & ~x1) | (x2 & ~z2 & x1 & z1) | (~x2 & z2 & x1 & ~z1);
        uint64_t minus = (x2 & z2 & x1 & ~z1) | (x2 & ~z2 & ~x1 & z1) | (~x2 & z2 & x1 & z1);
        acc += std::popcount(plus) - std::popcount(minus);
        xs_[static_cast<size_t>(h) * words_ + w] = x1 ^ x2;
        zs_[static_cast<size_t>(h) * words_ + w] = z1 ^ z2;
    }
    acc &= 3;
    if (acc & 1) throw std::logic_error("rowsum: odd phase, tableau corrupted");
    r_[h] = static_cast<uint8_t>(acc >> 1);
}

void StabilizerTableau::apply_h(int q) {
    for (int row = 0; row < 2 * n_; ++row) {
        bool x = get(xs_, row, q), z = get(zs_, row, q);
        if (x && z) r_[row] ^= 1;
        if (x != z) {
            toggle(xs_, row, q);
            toggle(zs_, row, q);
        }
    }
}

void StabilizerTableau::apply_s(int q) {
    for (int row = 0; row < 2 * n_; ++row) {
        bool x = get(xs_, row, q), z = get(zs_, row, q);
        if (x && z) r_[row] ^= 1;
        if (x) toggle(zs_, row, q);
    }
}

void StabilizerTableau::apply_sdg(int q) {
    for (int row = 0; row < 2 * n_; ++row) {
        bool x = get(xs_, row, q), z = get(zs_, row, q);
        if (x && !z) r_[row] ^= 1;
        if (x) toggle(zs_, row, q);
    }
}

void StabilizerTableau::apply_x(int q) {
    for (int row = 0; row < 2 * n_; ++row)
        if (get(zs_, row, q)) r_[row] ^= 1;
}

void StabilizerTableau::apply_y(int q) {
    for (int row = 0; row < 2 * n_; ++row)
        if (get(zs_, row, q) != get(xs_, row, q)) r_[row] ^= 1;
}

void StabilizerTableau::apply_z(int q) {
    for (int row = 0; row < 2 * n_; ++row)
        if (get(xs_, row, q)) r_[row] ^= 1;
}

void StabilizerTableau::apply_cnot(int c, int t) {
    for (int row = 0; row < 2 * n_; ++row) {
        bool xc = get(xs_, row, c), zc = get(zs_, row, c);
        bool xt = get(xs_, row, t), zt = get(zs_, row, t);
        if (xc && zt && (xt == zc)) r_[row] ^= 1;
        if (xc) toggle(xs_, row, t);
        if (zt) toggle(zs_, row, c);
    }
}

void StabilizerTableau::apply_cz(int a, int b) {
    apply_h(b);
    apply_cnot(a, b);
    apply_h(b);
}

void StabilizerTableau::apply_swap(int a, int b) {
    apply_cnot(a, b);
    apply_cnot(b, a);
    apply_cnot(a, b);
}

void StabilizerTableau::apply_gate(const Gate& g) {
    switch (g.kind) {
        case GateKind::H: apply_h(g.targets[0]); return;
        case GateKind::X: apply_x(g.targets[0]); return;
        case GateKind::Y: apply_y(g.targets[0]); return;
        case GateKind::Z: apply_z(g.targets[0]); return;
        case GateKind::CZ: apply_cz(g.targets[0], g.targets[1]); return;
        case GateKind::RZ: {
            double k = g.params[0] / (3.14159265358979323846 / 2);
            long ki = std::lround(k);
            if (std::abs(k - ki) > 1e-9)
                throw std::invalid_argument("stabilizer: RZ angle is not Clifford");
            int m = ((ki % 4) + 4) % 4;  // RZ(k*pi/2) ~ S^k up to phase
            if (m == 1) apply_s(g.targets[0]);
            else if (m == 2) apply_z(g.targets[0]);
            else if (m == 3) apply_sdg(g.targets[0]);
            return;
        }
        case GateKind::SwapPow: {
            double p = g.params[0];
            long pi_ = std::lround(p);
            if (std::abs(p - pi_) > 1e-9 || (pi_ % 2 + 2) % 2 != 1)
                throw std::invalid_argument("stabilizer: SwapPow exponent is not an odd integer");
            apply_swap(g.targets[0], g.targets[1]);
            return;
        }
        default:
            throw std::invalid_argument("stabilizer: non-Clifford gate " + g.kind_name());
    }
}

int StabilizerTableau::measure_core(int q, int forced_bit, Rng* rng, double* prob) {
    int p = -1;
    for (int row = n_; row < 2 * n_; ++row)
        if (get(xs_, row, q)) {
            p = row;
            break;
        }
    if (p >= 0) {
        // outcome is a fair coin
        for (int row = 0; row < 2 * n_; ++row)
            if (row != p && get(xs_, row, q)) rowsum(row, p);
        row_copy(p - n_, p);
        row_clear(p);
        toggle(zs_, p, q);
        int bit = forced_bit >= 0 ? forced_bit : rng->next_bit();
        r_[p] = static_cast<uint8_t>(bit);
        *prob = 0.5;
        return bit;
    }
    // deterministic: accumulate stabilizer partners of hitting destabilizers
    int scratch = 2 * n_;
    row_clear(scratch);
    for (int i = 0; i < n_; ++i)
        if (get(xs_, i, q)) rowsum(scratch, i + n_);
    int bit = r_[scratch];
    if (forced_bit >= 0 && forced_bit != bit) {
        *prob = 0.0;
        return forced_bit;
    }
    *prob = 1.0;
    return bit;
}

MeasureResult StabilizerTableau::measure_z(int q, Rng& rng) {
    double p;
    int bit = measure_core(q, -1, &rng, &p);
    return {bit, p};
}

MeasureResult StabilizerTableau::measure_x(int q, Rng& rng) {
    apply_h(q);
    MeasureResult r = measure_z(q, rng);
    apply_h(q);
    return r;
}

MeasureResult StabilizerTableau::measure_z_forced(int q, int bit) {
    double p;
    measure_core(q, bit, nullptr, &p);
    return {bit, p};
}

MeasureResult StabilizerTableau::measure_x_forced(int q, int bit) {
    apply_h(q);
    MeasureResult r = measure_z_forced(q, bit);
    apply_h(q);
    return r;
}

void StabilizerTableau::reset(int q, Rng& rng) {
    MeasureResult r = measure_z(q, rng);
    if (r.bit) apply_x(q);
}

void StabilizerTableau::reset_forced(int q) {
    MeasureResult r = measure_z_forced(q, 0);
    if (r.prob == 0.0) apply_x(q);  // was deterministically |1>
}

Statevector StabilizerTableau::to_statevector() const {
    if (n_ > 12) throw std::invalid_argument("to_statevector: too many qubits");
    size_t dim = size_t{1} << n_;
    Mat proj = Mat::Identity(dim, dim);
    for (int row = n_; row < 2 * n_; ++row) {
        PauliString ps(n_);
        for (int q = 0; q < n_; ++q) {
            bool x = get(xs_, row, q), z = get(zs_, row, q);
            ps.letters[q] = x ? (z ? 2 : 1) : (z ? 3 : 0);
        }
        ps.phase_pow = r_[row] ? 2 : 0;
        proj = proj * (Mat::Identity(dim, dim) + ps.matrix()) * 0.5;
    }
    // any nonzero column of the rank-1 projector is the state
    for (size_t c = 0; c < dim; ++c) {
        double colnorm = proj.col(c).norm();
        if (colnorm > 1e-9) {
            Statevector s;
            s.num_qubits = n_;
            s.amps.resize(dim);
            for (size_t i = 0; i < dim; ++i) s.amps[i] = proj(i, c) / colnorm;
            return s;
        }
    }
    throw std::logic_error("to_statevector: projector is zero");
}

}  // namespace qlab
