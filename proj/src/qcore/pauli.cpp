#include "qcore/pauli.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

namespace qlab {

namespace {

// product of single letters: a*b = i^{ph} c
struct LetterProd {
    uint8_t letter;
    int phase_pow;
};

LetterProd letter_mul(uint8_t a, uint8_t b) {
    if (a == 0) return {b, 0};
    if (b == 0) return {a, 0};
    if (a == b) return {0, 0};
    // XY=iZ, YZ=iX, ZX=iY; reversed order gives -i
    static const uint8_t third[4][4] = {{0, 0, 0, 0}, {0, 0, 3, 2}, {0, 3, 0, 1}, {0, 2, 1, 0}};
    uint8_t c = third[a][b];
    bool forward = (a == 1 && b == 2) || (a == 2 && b == 3) || (a == 3 && b == 1);
    return {c, forward ? 1 : 3};
}

}  // namespace

PauliString PauliString::single(int n, int qubit, uint8_t letter) {
    PauliString p(n);
    p.letters[qubit] = letter;
    return p;
}

PauliString PauliString::from_text(const std::string& s) {
    PauliString p(static_cast<int>(s.size()));
    for (size_t i = 0; i < s.size(); ++i) {
        switch (s[i]) {
            case 'I': p.letters[i] = 0; break;
            case 'X': p.letters[i] = 1; break;
            case 'Y': p.letters[i] = 2; break;
            case 'Z': p.letters[i] = 3; break;
            default: throw std::invalid_argument("bad Pauli letter");
        }
    }
    return p;
}

int PauliString::weight() const {
    int w = 0;
    for (uint8_t l : letters)
        if (l) ++w;
    return w;
}

std::vector<int> PauliString::support() const {
    std::vector<int> s;
    for (int q = 0; q < num_qubits(); ++q)
        if (letters[q]) s.push_back(q);
    return s;
}

cx PauliString::phase() const {
    static const cx table[4] = {cx(1, 0), cx(0, 1), cx(-1, 0), cx(0, -1)};
    return table[phase_pow & 3];
}

std::string PauliString::text() const {
    static const char names[] = "IXYZ";
    std::string s;
    for (uint8_t l : letters) s.push_back(names[l]);
    return s;
}

bool PauliString::commutes(const PauliString& other) const {
    int anti = 0;
    for (int q = 0; q < num_qubits(); ++q) {
        uint8_t a = letters[q], b = other.letters[q];
        if (a && b && a != b) ++anti;
    }
    return (anti & 1) == 0;
}

Mat pauli_letter_matrix(uint8_t letter) {
    Mat m(2, 2);
    switch (letter) {
        case 0: m << 1, 0, 0, 1; break;
        case 1: m << 0, 1, 1, 0; break;
        case 2: m << 0, cx(0, -1), cx(0, 1), 0; break;
        case 3: m << 1, 0, 0, -1; break;
        default: throw std::invalid_argument("bad letter");
    }
    return m;
}

Mat PauliString::matrix() const {
    Mat m = Mat::Identity(1, 1);
    // little-endian: qubit 0 is the innermost factor
    for (int q = num_qubits() - 1; q >= 0; --q) m = kron(m, pauli_letter_matrix(letters[q]));
    return phase() * m;
}

PauliString operator*(const PauliString& a, const PauliString& b) {
    if (a.num_qubits() != b.num_qubits()) throw std::invalid_argument("pauli size mismatch");
    PauliString out(a.num_qubits());
    out.phase_pow = (a.phase_pow + b.phase_pow) & 3;
    for (int q = 0; q < a.num_qubits(); ++q) {
        LetterProd p = letter_mul(a.letters[q], b.letters[q]);
        out.letters[q] = p.letter;
        out.phase_pow = (out.phase_pow + p.phase_pow) & 3;
    }
    return out;
}

void PauliObservable::add(const std::vector<uint8_t>& letters, double coeff) {
    if (static_cast<int>(letters.size()) != num_qubits)
        throw std::invalid_argument("observable term size mismatch");
    auto it = terms.find(letters);
    if (it == terms.end()) {
        if (coeff != 0.0) terms[letters] = coeff;
    } else {
        it->second += coeff;
        if (std::abs(it->second) < 1e-15) terms.erase(it);
    }
}

void PauliObservable::add(const PauliString& p, double coeff) {
    cx full = p.phase() * coeff;
    if (std::abs(full.imag()) > 1e-9 * (1.0 + std::abs(full.real())))
        throw std::invalid_argument("observable term with non-real weight");
    add(p.letters, full.real());
}

double PauliObservable::coeff(const std::vector<uint8_t>& letters) const {
    auto it = terms.find(letters);
    return it == terms.end() ? 0.0 : it->second;
}

std::vector<int> PauliObservable::support() const {
    std::vector<bool> hit(num_qubits, false);
    for (const auto& [letters, c] : terms)
        for (int q = 0; q < num_qubits; ++q)
            if (letters[q]) hit[q] = true;
    std::vector<int> s;
    for (int q = 0; q < num_qubits; ++q)
        if (hit[q]) s.push_back(q);
    return s;
}

double PauliObservable::sum_sq_coeffs() const {
    double s = 0;
    for (const auto& [letters, c] : terms) s += c * c;
    return s;
}

Mat PauliObservable::matrix() const {
    std::vector<int> window(num_qubits);
    for (int q = 0; q < num_qubits; ++q) window[q] = q;
    return matrix_on_window(window);
}

Mat PauliObservable::matrix_on_window(const std::vector<int>& window) const {
    std::vector<int> pos(num_qubits, -1);
    for (size_t i = 0; i < window.size(); ++i) pos[window[i]] = static_cast<int>(i);
    size_t dim = size_t{1} << window.size();
    Mat m = Mat::Zero(dim, dim);
    for (const auto& [letters, c] : terms) {
        PauliString local(static_cast<int>(window.size()));
        for (int q = 0; q < num_qubits; ++q)
            if (letters[q]) {
                if (pos[q] < 0) throw std::invalid_argument("observable support outside window");
                local.letters[pos[q]] = letters[q];
            }
        m += c * local.matrix();
    }
    return m;
}

double PauliObservable::infinity_norm(int dense_limit) const {
    std::vector<int> supp = support();
    if (supp.empty()) {
        auto it = terms.find(std::vector<uint8_t>(num_qubits, 0));
        return it == terms.end() ? 0.0 : std::abs(it->second);
    }
    if (static_cast<int>(supp.size()) > dense_limit)
        throw std::invalid_argument("infinity_norm: support exceeds dense limit");
    Eigen::SelfAdjointEigenSolver<Mat> es(matrix_on_window(supp));
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

PauliObservable& PauliObservable::operator+=(const PauliObservable& o) {
    for (const auto& [letters, c] : o.terms) add(letters, c);
    return *this;
}

PauliObservable PauliObservable::scaled(double s) const {
    PauliObservable out(num_qubits);
    for (const auto& [letters, c] : terms) out.terms[letters] = c * s;
    return out;
}

std::map<std::vector<uint8_t>, cx> pauli_decompose_complex(const Mat& m) {
    size_t dim = m.rows();
    int k = 0;
    while ((size_t{1} << k) < dim) ++k;
    if ((size_t{1} << k) != dim) throw std::invalid_argument("pauli_decompose: dim not a power of 2");
    if (k > 8) throw std::invalid_argument("pauli_decompose: more than 8 qubits");

    std::map<std::vector<uint8_t>, cx> out;
    std::vector<uint8_t> letters(k, 0);
    // iterate all 4^k strings; Tr(Q^dag M) costs O(2^k) using Q's permutation form
    size_t total = size_t{1} << (2 * k);
    for (size_t code = 0; code < total; ++code) {
        size_t c = code;
        for (int q = 0; q < k; ++q) {
            letters[q] = c & 3;
            c >>= 2;
        }
        size_t flip = 0;
        for (int q = 0; q < k; ++q)
            if (letters[q] == 1 || letters[q] == 2) flip |= size_t{1} << q;
        cx acc = 0;
        for (size_t col = 0; col < dim; ++col) {
            size_t row = col ^ flip;
            // entry <row|Q|col>
            cx ph(1, 0);
            for (int q = 0; q < k; ++q) {
                uint8_t l = letters[q];
                if (l == 2) ph *= ((col >> q) & 1) ? cx(0, -1) : cx(0, 1);
                else if (l == 3 && ((col >> q) & 1)) ph = -ph;
            }
            // Tr(Q^dag M) = sum_col <col| Q^dag M |col> = sum conj(<row|Q|col>) M(row,col)
            acc += std::conj(ph) * m(row, col);
        }
        cx coeff = acc / static_cast<double>(dim);
        if (std::abs(coeff) > 1e-14) out[letters] = coeff;
    }
    return out;
}

PauliObservable pauli_decompose(const Mat& m, double tol) {
    auto cmap = pauli_decompose_complex(m);
    int k = 0;
    while ((size_t{1} << k) < static_cast<size_t>(m.rows())) ++k;
    PauliObservable out(k);
    for (const auto& [letters, c] : cmap) {
        if (std::abs(c.imag()) > tol)
            throw std::invalid_argument("pauli_decompose: non-Hermitian input");
        if (std::abs(c.real()) > 1e-14) out.terms[letters] = c.real();
    }
    return out;
}

PauliObservable PauliObservable::conjugated(const Circuit& u, bool u_on_left) const {
    if (u.num_qubits != num_qubits) throw std::invalid_argument("conjugated: size mismatch");
    // flatten gates in time order
    std::vector<const Gate*> gates;
    for (const auto& m : u.moments)
        for (const Gate& g : m) gates.push_back(&g);

    PauliObservable cur = *this;
    auto push_gate = [&](const Gate& g, bool adjoint_outside) {
        // adjoint_outside=false: O -> G^dag O G; true: O -> G O G^dag
        PauliObservable next(num_qubits);
        Mat gm = g.matrix();
        Mat gl = adjoint_outside ? gm : Mat(gm.adjoint());
        Mat gr = adjoint_outside ? Mat(gm.adjoint()) : gm;
        int k = g.arity();
        for (const auto& [letters, c] : cur.terms) {
            // local restriction on the gate's qubits
            Mat local = Mat::Identity(1, 1);
            for (int t = k - 1; t >= 0; --t)
                local = kron(local, pauli_letter_matrix(letters[g.targets[t]]));
            Mat conj = gl * local * gr;
            auto dec = pauli_decompose_complex(conj);
            for (const auto& [loc_letters, lc] : dec) {
                cx w = lc * c;
                if (std::abs(w.imag()) > 1e-10)
                    throw std::runtime_error("conjugated: lost Hermiticity");
                std::vector<uint8_t> full = letters;
                for (int t = 0; t < k; ++t) full[g.targets[t]] = loc_letters[t];
                next.add(full, w.real());
            }
        }
        cur = std::move(next);
    };

    if (u_on_left) {
        // U O U^dag = g_m (... (g_1 O g_1^dag) ...) g_m^dag
        for (const Gate* g : gates) push_gate(*g, true);
    } else {
        // U^dag O U: innermost conjugation is by the last gate
        for (auto it = gates.rbegin(); it != gates.rend(); ++it) push_gate(**it, false);
    }
    return cur;
}

}  // namespace qlab
