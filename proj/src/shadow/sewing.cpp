#include "shadow/sewing.hpp"

#include <set>
#include <stdexcept>

namespace qlab::shadow {

namespace {

qlab::Mat swap_matrix() {
    qlab::Mat s = qlab::Mat::Zero(4, 4);
    s(0, 0) = 1;
    s(1, 2) = 1;
    s(2, 1) = 1;
    s(3, 3) = 1;
    return s;
}

}  // namespace

qlab::Mat SewedCircuit::to_matrix() const {
    if (2 * n > 12) throw std::invalid_argument("sewed circuit: dense form capped at 12 qubits");
    size_t dim = size_t{1} << (2 * n);
    qlab::Mat u = qlab::Mat::Identity(dim, dim);
    for (const Block& b : blocks) u = qlab::embed(b.matrix, b.qubits, 2 * n) * u;
    return u;
}

qlab::Mat SewedCircuit::channel_apply(const qlab::Vec& psi) const {
    size_t sys_dim = size_t{1} << n;
    if (static_cast<size_t>(psi.size()) != sys_dim)
        throw std::invalid_argument("channel_apply: input dimension mismatch");
    qlab::Mat u = to_matrix();
    qlab::Vec full = qlab::Vec::Zero(sys_dim * sys_dim);
    // ancilla |0^n>: inversion form has system on the low qubits, Heisenberg
    // form has it on the high qubits
    if (kind == Kind::LocalInversion) {
        for (size_t i = 0; i < sys_dim; ++i) full(i) = psi(i);  // ancilla bits high, all 0
    } else {
        for (size_t i = 0; i < sys_dim; ++i) full(i * sys_dim) = psi(i);  // ancilla bits low
    }
    qlab::Vec out = u * full;
    // trace out the ancilla register
    qlab::Mat rho = qlab::Mat::Zero(sys_dim, sys_dim);
    if (kind == Kind::LocalInversion) {
        for (size_t a = 0; a < sys_dim; ++a)
            for (size_t i = 0; i < sys_dim; ++i)
                for (size_t j = 0; j < sys_dim; ++j)
                    rho(i, j) += out(a * sys_dim + i) * std::conj(out(a * sys_dim + j));
    } else {
        for (size_t a = 0; a < sys_dim; ++a)
            for (size_t i = 0; i < sys_dim; ++i)
                for (size_t j = 0; j < sys_dim; ++j)
                    rho(i, j) += out(i * sys_dim + a) * std::conj(out(j * sys_dim + a));
    }
    return rho;
}

SewedCircuit sew_local_inversions(const std::vector<LocalInversion>& inversions, int n) {
    if (static_cast<int>(inversions.size()) != n)
        throw std::invalid_argument("sew: one inversion per qubit required");
    SewedCircuit sew;
    sew.n = n;
    sew.kind = SewedCircuit::Kind::LocalInversion;
    qlab::Mat s = swap_matrix();
    for (int i = 0; i < n; ++i) {
        const LocalInversion& inv = inversions[i];
        if (inv.target_qubit != i) throw std::invalid_argument("sew: inversions out of order");
        sew.eps.push_back(inv.epsilon);
        // time order: V_i^dag on the system window, swap qubit i with its
        // ancilla, then V_i back
        sew.blocks.push_back({inv.window, inv.matrix.adjoint()});
        sew.blocks.push_back({{i, n + i}, s});
        sew.blocks.push_back({inv.window, inv.matrix});
    }
    for (int i = 0; i < n; ++i) sew.blocks.push_back({{i, n + i}, s});
    return sew;
}

SewedCircuit direct_heisenberg_sew(const std::map<ObsKey, qlab::PauliObservable>& coeffs, int n,
                                   const std::vector<double>& eps) {
    SewedCircuit sew;
    sew.n = n;
    sew.kind = SewedCircuit::Kind::DirectHeisenberg;
    sew.eps = eps;
    qlab::Mat s = swap_matrix();
    for (int i = 0; i < n; ++i) {
        // union of the three observables' supports on the system register
        std::set<int> suppset;
        for (uint8_t p = 1; p <= 3; ++p) {
            auto it = coeffs.find({i, p});
            if (it == coeffs.end()) throw std::invalid_argument("sew: missing coefficients");
            for (int q : it->second.support()) suppset.insert(q);
        }
        suppset.insert(i);
        std::vector<int> sys_support(suppset.begin(), suppset.end());
        int w = static_cast<int>(sys_support.size());
        if (w + 1 > 12) throw std::invalid_argument("sew: window too large");

        // local space: qubit 0 = ancilla-register qubit i, qubits 1..w = system window
        size_t dim = size_t{1} << (w + 1);
        qlab::Mat block = 0.5 * qlab::Mat::Identity(dim, dim);
        std::vector<int> pos(n, -1);
        for (int t = 0; t < w; ++t) pos[sys_support[t]] = t + 1;
        for (uint8_t p = 1; p <= 3; ++p) {
            const qlab::PauliObservable& obs = coeffs.at({i, p});
            qlab::Mat op = qlab::Mat::Zero(dim, dim);
            for (const auto& [letters, c] : obs.terms) {
                qlab::PauliString local(w + 1);
                local.letters[0] = p;
                for (int q = 0; q < n; ++q)
                    if (letters[q]) local.letters[pos[q]] = letters[q];
                op += c * local.matrix();
            }
            block += 0.5 * op;
        }
        qlab::Mat unitary = qlab::project_unitary(block);

        std::vector<int> qubits;
        qubits.push_back(i);  // ancilla register = low qubits for this form
        for (int q : sys_support) qubits.push_back(n + q);
        sew.blocks.push_back({qubits, unitary});
    }
    for (int i = 0; i < n; ++i) sew.blocks.push_back({{i, n + i}, s});
    return sew;
}

double sew_distance_inversion(const SewedCircuit& sewed, const qlab::Mat& u) {
    int n = sewed.n;
    std::vector<int> first(n), second(n);
    for (int i = 0; i < n; ++i) {
        first[i] = i;
        second[i] = n + i;
    }
    qlab::Mat target = qlab::embed(u, first, 2 * n) * qlab::embed(u.adjoint(), second, 2 * n);
    return qlab::operator_norm(sewed.to_matrix() - target);
}

double sew_distance_heisenberg(const SewedCircuit& sewed, const qlab::Mat& u) {
    int n = sewed.n;
    std::vector<int> first(n), second(n);
    for (int i = 0; i < n; ++i) {
        first[i] = i;
        second[i] = n + i;
    }
    qlab::Mat target = qlab::embed(u.adjoint(), first, 2 * n) * qlab::embed(u, second, 2 * n);
    return qlab::operator_norm(sewed.to_matrix() - target);
}

}  // namespace qlab::shadow
