#pragma once

#include <cstdint>
#include <vector>

#include "qcore/gate.hpp"
#include "qcore/rng.hpp"
#include "qcore/statevector.hpp"

namespace qlab {

// Binary-symplectic tableau with destabilizer rows 0..n-1 and stabilizer rows
// n..2n-1, bit-packed in 64-bit words. Measurement is O(n^2) worst case.
class StabilizerTableau {
  public:
    explicit StabilizerTableau(int num_qubits);

    int num_qubits() const { return n_; }

    void apply_h(int q);
    void apply_s(int q);
    void apply_sdg(int q);
    void apply_x(int q);
    void apply_y(int q);
    void apply_z(int q);
    void apply_cnot(int control, int target);
    void apply_cz(int a, int b);
    void apply_swap(int a, int b);

    // Clifford subset of the common gate set: H, X, Y, Z, CZ and RZ with an
    // angle that is a multiple of pi/2. Anything else is rejected.
    void apply_gate(const Gate& g);

    // Deterministic bit when the measured operator is in the stabilizer
    // group, fair coin otherwise.
    MeasureResult measure_z(int q, Rng& rng);
    MeasureResult measure_x(int q, Rng& rng);
    // Dictated outcome; prob is 1, 1/2 or 0 (0 leaves the tableau collapsed
    // onto the impossible branch's partner — callers must stop on p=0).
    MeasureResult measure_z_forced(int q, int bit);
    MeasureResult measure_x_forced(int q, int bit);

    void reset(int q, Rng& rng);
    void reset_forced(int q);  // collapse to |0> deterministically given prior forced outcome

    // dense statevector of the stabilized state (small n, test oracle use)
    Statevector to_statevector() const;

  private:
    int n_;
    int words_;
    // row r: x words, z words, sign bit
    std::vector<uint64_t> xs_, zs_;
    std::vector<uint8_t> r_;

    bool get(const std::vector<uint64_t>& v, int row, int q) const {
        return (v[static_cast<size_t>(row) * words_ + (q >> 6)] >> (q & 63)) & 1;
    }
    void toggle(std::vector<uint64_t>& v, int row, int q) {
        v[static_cast<size_t>(row) * words_ + (q >> 6)] ^= uint64_t{1} << (q & 63);
    }
    void rowsum(int h, int i);       // row h *= row i (phase-tracked product)
    void row_clear(int row);
    void row_copy(int dst, int src);
    int measure_core(int q, int forced_bit, Rng* rng, double* prob);
};

}  // namespace qlab
