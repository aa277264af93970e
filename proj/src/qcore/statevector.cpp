#include "qcore/statevector.hpp"

#include <cmath>
#include <stdexcept>

namespace qlab {

Statevector Statevector::zero_state(int n) {
    Statevector s;
    s.num_qubits = n;
    s.amps.assign(size_t{1} << n, cx(0, 0));
    s.amps[0] = 1;
    return s;
}

Statevector Statevector::basis_state(int n, const std::vector<uint8_t>& bits) {
    Statevector s;
    s.num_qubits = n;
    s.amps.assign(size_t{1} << n, cx(0, 0));
    size_t idx = 0;
    for (int q = 0; q < n; ++q)
        if (bits[q]) idx |= size_t{1} << q;
    s.amps[idx] = 1;
    return s;
}

namespace {

void apply1(std::vector<cx>& a, int q, const Mat& u) {
    size_t mask = size_t{1} << q;
    size_t dim = a.size();
    cx u00 = u(0, 0), u01 = u(0, 1), u10 = u(1, 0), u11 = u(1, 1);
    for (size_t i = 0; i < dim; ++i) {
        if (i & mask) continue;
        cx lo = a[i], hi = a[i | mask];
        a[i] = u00 * lo + u01 * hi;
        a[i | mask] = u10 * lo + u11 * hi;
    }
}

void apply2(std::vector<cx>& a, int q0, int q1, const Mat& u) {
    size_t m0 = size_t{1} << q0;
    size_t m1 = size_t{1} << q1;
    size_t dim = a.size();
    for (size_t i = 0; i < dim; ++i) {
        if ((i & m0) || (i & m1)) continue;
        cx a00 = a[i], a01 = a[i | m0], a10 = a[i | m1], a11 = a[i | m0 | m1];
        a[i] = u(0, 0) * a00 + u(0, 1) * a01 + u(0, 2) * a10 + u(0, 3) * a11;
        a[i | m0] = u(1, 0) * a00 + u(1, 1) * a01 + u(1, 2) * a10 + u(1, 3) * a11;
        a[i | m1] = u(2, 0) * a00 + u(2, 1) * a01 + u(2, 2) * a10 + u(2, 3) * a11;
        a[i | m0 | m1] = u(3, 0) * a00 + u(3, 1) * a01 + u(3, 2) * a10 + u(3, 3) * a11;
    }
}

}  // namespace

void Statevector::apply(const Gate& g) {
    check_targets(g, num_qubits);
    if (g.kind == GateKind::CZ) {
        size_t m0 = size_t{1} << g.targets[0];
        size_t m1 = size_t{1} << g.targets[1];
        for (size_t i = 0; i < amps.size(); ++i)
            if ((i & m0) && (i & m1)) amps[i] = -amps[i];
        return;
    }
    if (g.arity() == 1)
        apply1(amps, g.targets[0], g.matrix());
    else
        apply2(amps, g.targets[0], g.targets[1], g.matrix());
}

void Statevector::apply(const Circuit& c) {
    if (c.num_qubits != num_qubits) throw std::invalid_argument("apply: qubit count mismatch");
    for (const auto& m : c.moments)
        for (const Gate& g : m) apply(g);
}

double Statevector::norm() const {
    double s = 0;
    for (const cx& a : amps) s += std::norm(a);
    return std::sqrt(s);
}

std::vector<double> Statevector::probabilities() const {
    std::vector<double> p(amps.size());
    for (size_t i = 0; i < amps.size(); ++i) p[i] = std::norm(amps[i]);
    return p;
}

namespace {

// rotate basis B to the computational frame: U_B |b> = (b-th eigenstate of B)
Mat basis_frame(Basis b) {
    Mat h(2, 2);
    double s = 1.0 / std::sqrt(2.0);
    h << s, s, s, -s;
    switch (b) {
        case Basis::Z: return Mat::Identity(2, 2);
        case Basis::X: return h;
        case Basis::Y: {
            Mat sgate(2, 2);
            sgate << 1, 0, 0, cx(0, 1);
            return sgate * h;
        }
    }
    throw std::logic_error("unreachable");
}

}  // namespace

MeasureResult Statevector::measure(int qubit, Basis basis, Rng& rng) {
    Mat u = basis_frame(basis);
    apply1(amps, qubit, u.adjoint());
    size_t mask = size_t{1} << qubit;
    double p1 = 0;
    for (size_t i = 0; i < amps.size(); ++i)
        if (i & mask) p1 += std::norm(amps[i]);
    int bit = rng.next_double() < p1 ? 1 : 0;
    double p = bit ? p1 : 1.0 - p1;
    if (p < 1e-14) throw std::runtime_error("measure: selected branch has vanishing norm");
    double inv = 1.0 / std::sqrt(p);
    for (size_t i = 0; i < amps.size(); ++i) {
        if (((i & mask) != 0) != (bit != 0))
            amps[i] = 0;
        else
            amps[i] *= inv;
    }
    apply1(amps, qubit, u);
    return {bit, p};
}

MeasureResult Statevector::measure_forced(int qubit, Basis basis, int bit) {
    Mat u = basis_frame(basis);
    apply1(amps, qubit, u.adjoint());
    size_t mask = size_t{1} << qubit;
    double p1 = 0;
    for (size_t i = 0; i < amps.size(); ++i)
        if (i & mask) p1 += std::norm(amps[i]);
    double p = bit ? p1 : 1.0 - p1;
    if (p < 1e-14) {
        // dead branch: zero the state so callers can detect it
        for (auto& a : amps) a = 0;
        return {bit, 0.0};
    }
    double inv = 1.0 / std::sqrt(p);
    for (size_t i = 0; i < amps.size(); ++i) {
        if (((i & mask) != 0) != (bit != 0))
            amps[i] = 0;
        else
            amps[i] *= inv;
    }
    apply1(amps, qubit, u);
    return {bit, p};
}

void Statevector::reset(int qubit, Rng& rng) {
    MeasureResult r = measure(qubit, Basis::Z, rng);
    if (r.bit) apply(Gate::x(qubit));
}

double Statevector::expectation_z(int qubit) const {
    size_t mask = size_t{1} << qubit;
    double e = 0;
    for (size_t i = 0; i < amps.size(); ++i) e += (i & mask) ? -std::norm(amps[i]) : std::norm(amps[i]);
    return e;
}

double Statevector::expectation_pauli(const std::vector<uint8_t>& letters) const {
    size_t flip = 0;
    for (int q = 0; q < num_qubits; ++q)
        if (letters[q] == 1 || letters[q] == 2) flip |= size_t{1} << q;
    cx acc = 0;
    for (size_t i = 0; i < amps.size(); ++i) {
        size_t j = i ^ flip;
        cx ph(1, 0);
        for (int q = 0; q < num_qubits; ++q) {
            uint8_t l = letters[q];
            if (l == 2) ph *= ((i >> q) & 1) ? cx(0, -1) : cx(0, 1);  // <j|Y|i>
            else if (l == 3 && ((i >> q) & 1)) ph = -ph;
        }
        acc += std::conj(amps[j]) * ph * amps[i];
    }
    return acc.real();
}

Mat Statevector::reduced_density(int qubit) const {
    size_t mask = size_t{1} << qubit;
    Mat rho = Mat::Zero(2, 2);
    for (size_t i = 0; i < amps.size(); ++i) {
        int b = (i & mask) ? 1 : 0;
        rho(b, b) += std::norm(amps[i]);
        if (!b) rho(0, 1) += amps[i] * std::conj(amps[i | mask]);
    }
    rho(1, 0) = std::conj(rho(0, 1));
    return rho;
}

cx Statevector::inner(const Statevector& other) const {
    cx acc = 0;
    for (size_t i = 0; i < amps.size(); ++i) acc += std::conj(amps[i]) * other.amps[i];
    return acc;
}

}  // namespace qlab
