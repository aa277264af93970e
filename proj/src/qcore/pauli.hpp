#pragma once

#include <map>
#include <string>
#include <vector>

#include "qcore/circuit.hpp"

namespace qlab {

// letters: 0=I, 1=X, 2=Y, 3=Z; phase stored as a power of i.
struct PauliString {
    std::vector<uint8_t> letters;
    int phase_pow = 0;  // overall factor i^phase_pow, phase_pow in {0,1,2,3}

    PauliString() = default;
    explicit PauliString(int n) : letters(n, 0) {}
    static PauliString single(int n, int qubit, uint8_t letter);
    static PauliString from_text(const std::string& s);  // e.g. "IXYZ", qubit 0 first

    int num_qubits() const { return static_cast<int>(letters.size()); }
    int weight() const;
    std::vector<int> support() const;
    cx phase() const;
    std::string text() const;
    bool commutes(const PauliString& other) const;
    Mat matrix() const;  // includes the phase factor

    // group product with composed phase
    friend PauliString operator*(const PauliString& a, const PauliString& b);
    bool operator==(const PauliString& o) const {
        return letters == o.letters && phase_pow == o.phase_pow;
    }
};

// Hermitian observable: real coefficients over phase-free Pauli strings.
struct PauliObservable {
    int num_qubits = 0;
    std::map<std::vector<uint8_t>, double> terms;

    PauliObservable() = default;
    explicit PauliObservable(int n) : num_qubits(n) {}

    void add(const std::vector<uint8_t>& letters, double coeff);
    void add(const PauliString& p, double coeff);  // folds the string's phase in (must stay real)
    double coeff(const std::vector<uint8_t>& letters) const;
    std::vector<int> support() const;
    double sum_sq_coeffs() const;
    Mat matrix() const;                                  // full 2^n
    Mat matrix_on_window(const std::vector<int>& window) const;  // support must fit the window
    double infinity_norm(int dense_limit = 12) const;    // largest |eigenvalue|

    PauliObservable& operator+=(const PauliObservable& o);
    PauliObservable scaled(double s) const;

    // U^dag O U for adjoint=false, U O U^dag for adjoint=true;
    // exact term propagation through 1- and 2-qubit gates.
    PauliObservable conjugated(const Circuit& u, bool u_on_left) const;
};

// c_Q = Tr(Q^dag M) / 2^k over all 4^k strings; reconstruction equals M.
// Coefficients of a Hermitian input are real; the complex parts are returned
// so callers can assert that.
std::map<std::vector<uint8_t>, cx> pauli_decompose_complex(const Mat& m);
// Hermitian wrapper: throws if any coefficient has |imag| > tol.
PauliObservable pauli_decompose(const Mat& m, double tol = 1e-9);

Mat pauli_letter_matrix(uint8_t letter);

}  // namespace qlab
