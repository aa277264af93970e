#pragma once

#include <string>
#include <vector>

#include "qcore/gate.hpp"

namespace qlab {

// Gates are grouped into moments; gates within a moment act on disjoint
// qubits. append() packs into the last moment when possible.
struct Circuit {
    int num_qubits = 0;
    std::vector<std::vector<Gate>> moments;

    Circuit() = default;
    explicit Circuit(int n) : num_qubits(n) {}

    void append(const Gate& g);
    void append_moment(const std::vector<Gate>& gates);
    void extend(const Circuit& other);  // appends other's moments verbatim

    int depth() const { return static_cast<int>(moments.size()); }
    size_t gate_count() const;
    Circuit inverse() const;

    // full 2^n x 2^n unitary (n small)
    Mat to_matrix() const;
    // unitary on the given window qubits; every gate must act inside the window
    Mat to_matrix_on_window(const std::vector<int>& window) const;
    // keep only gates fully supported on `window`
    Circuit restricted_to(const std::vector<int>& window) const;

    std::string to_json() const;  // deterministic (sorted keys)
    static Circuit from_json(const std::string& text);
};

void check_targets(const Gate& g, int num_qubits);

}  // namespace qlab
