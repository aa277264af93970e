#pragma once

#include <string>
#include <vector>

#include "qcore/matrix.hpp"

namespace qlab {

enum class GateKind { H, X, Y, Z, RZ, RX, RY, CZ, SwapPow, PhasedXZ, Dense };

// Qubit ordering is little-endian throughout: qubit 0 is the least
// significant amplitude index. Rotations follow R_P(theta) = exp(-i P theta/2).
struct Gate {
    GateKind kind;
    std::vector<int> targets;
    std::vector<double> params;  // RZ/RX/RY: {theta}; SwapPow: {p}; PhasedXZ: {x,z,a}
    Mat dense;                   // Dense kind only

    static Gate h(int q) { return {GateKind::H, {q}, {}, {}}; }
    static Gate x(int q) { return {GateKind::X, {q}, {}, {}}; }
    static Gate y(int q) { return {GateKind::Y, {q}, {}, {}}; }
    static Gate z(int q) { return {GateKind::Z, {q}, {}, {}}; }
    static Gate rz(int q, double theta) { return {GateKind::RZ, {q}, {theta}, {}}; }
    static Gate rx(int q, double theta) { return {GateKind::RX, {q}, {theta}, {}}; }
    static Gate ry(int q, double theta) { return {GateKind::RY, {q}, {theta}, {}}; }
    static Gate cz(int a, int b) { return {GateKind::CZ, {a, b}, {}, {}}; }
    static Gate swap_pow(int a, int b, double p) { return {GateKind::SwapPow, {a, b}, {p}, {}}; }
    static Gate swap(int a, int b) { return swap_pow(a, b, 1.0); }
    // time order: Z^-a, X^x, Z^a, Z^z
    static Gate phased_xz(int q, double x, double z, double a) {
        return {GateKind::PhasedXZ, {q}, {x, z, a}, {}};
    }
    // validates unitarity to 1e-10, 1- or 2-qubit blocks only
    static Gate make_dense(std::vector<int> qubits, const Mat& m);

    int arity() const { return static_cast<int>(targets.size()); }
    Mat matrix() const;   // 2x2 or 4x4, little-endian within targets
    Gate inverse() const;
    std::string kind_name() const;
};

// Pauli power P^t = P_+ + e^{i pi t} P_- on the +/-1 eigenspaces.
Mat pauli_power_x(double t);
Mat pauli_power_z(double t);

}  // namespace qlab
