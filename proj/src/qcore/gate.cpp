#include "qcore/gate.hpp"

#include <cmath>
#include <stdexcept>

namespace qlab {

namespace {
constexpr double kPi = 3.14159265358979323846;

Mat mat2(cx a, cx b, cx c, cx d) {
    Mat m(2, 2);
    m << a, b, c, d;
    return m;
}
}  // namespace

Mat pauli_power_x(double t) {
    // X^t = e^{i pi t/2} (cos(pi t/2) I - i sin(pi t/2) X)
    cx ph = std::exp(cx(0, kPi * t / 2));
    double c = std::cos(kPi * t / 2), s = std::sin(kPi * t / 2);
    return mat2(ph * c, ph * cx(0, -s), ph * cx(0, -s), ph * c);
}

Mat pauli_power_z(double t) { return mat2(1, 0, 0, std::exp(cx(0, kPi * t))); }

Gate Gate::make_dense(std::vector<int> qubits, const Mat& m) {
    if (qubits.size() < 1 || qubits.size() > 2)
        throw std::invalid_argument("dense gate: 1 or 2 qubits only");
    if (m.rows() != (1 << qubits.size()) || m.cols() != m.rows())
        throw std::invalid_argument("dense gate: matrix size mismatch");
    if (!is_unitary(m, 1e-10)) throw std::invalid_argument("dense gate: matrix is not unitary");
    Gate g{GateKind::Dense, std::move(qubits), {}, m};
    return g;
}

Mat Gate::matrix() const {
    switch (kind) {
        case GateKind::H: {
            double s = 1.0 / std::sqrt(2.0);
            return mat2(s, s, s, -s);
        }
        case GateKind::X:
            return mat2(0, 1, 1, 0);
        case GateKind::Y:
            return mat2(0, cx(0, -1), cx(0, 1), 0);
        case GateKind::Z:
            return mat2(1, 0, 0, -1);
        case GateKind::RZ: {
            double t = params[0];
            return mat2(std::exp(cx(0, -t / 2)), 0, 0, std::exp(cx(0, t / 2)));
        }
        case GateKind::RX: {
            double c = std::cos(params[0] / 2), s = std::sin(params[0] / 2);
            return mat2(c, cx(0, -s), cx(0, -s), c);
        }
        case GateKind::RY: {
            double c = std::cos(params[0] / 2), s = std::sin(params[0] / 2);
            return mat2(c, -s, s, c);
        }
        case GateKind::CZ: {
            Mat m = Mat::Identity(4, 4);
            m(3, 3) = -1;
            return m;
        }
        case GateKind::SwapPow: {
            // closed form on the swap eigenspaces: diag entries
            // e^{i pi p/2} cos(pi p/2), off-diagonal -i e^{i pi p/2} sin(pi p/2)
            double p = params[0];
            cx ph = std::exp(cx(0, kPi * p / 2));
            cx d = ph * std::cos(kPi * p / 2);
            cx o = ph * cx(0, -std::sin(kPi * p / 2));
            Mat m = Mat::Zero(4, 4);
            m(0, 0) = 1;
            m(3, 3) = 1;
            m(1, 1) = d;
            m(2, 2) = d;
            m(1, 2) = o;
            m(2, 1) = o;
            return m;
        }
        case GateKind::PhasedXZ: {
            double x = params[0], z = params[1], a = params[2];
            return pauli_power_z(z) * pauli_power_z(a) * pauli_power_x(x) * pauli_power_z(-a);
        }
        case GateKind::Dense:
            return dense;
    }
    throw std::logic_error("unreachable");
}

Gate Gate::inverse() const {
    switch (kind) {
        case GateKind::H:
        case GateKind::X:
        case GateKind::Y:
        case GateKind::Z:
        case GateKind::CZ:
            return *this;
        case GateKind::RZ:
        case GateKind::RX:
        case GateKind::RY:
            return {kind, targets, {-params[0]}, {}};
        case GateKind::SwapPow:
            return {kind, targets, {-params[0]}, {}};
        case GateKind::PhasedXZ: {
            Gate g{GateKind::Dense, targets, {}, matrix().adjoint()};
            return g;
        }
        case GateKind::Dense: {
            Gate g{GateKind::Dense, targets, {}, dense.adjoint()};
            return g;
        }
    }
    throw std::logic_error("unreachable");
}

std::string Gate::kind_name() const {
    switch (kind) {
        case GateKind::H: return "H";
        case GateKind::X: return "X";
        case GateKind::Y: return "Y";
        case GateKind::Z: return "Z";
        case GateKind::RZ: return "RZ";
        case GateKind::RX: return "RX";
        case GateKind::RY: return "RY";
        case GateKind::CZ: return "CZ";
        case GateKind::SwapPow: return "SwapPow";
        case GateKind::PhasedXZ: return "PhasedXZ";
        case GateKind::Dense: return "Dense";
    }
    return "?";
}

}  // namespace qlab
