#include "ffward/noise.hpp"

#include <cmath>
#include <stdexcept>

#include "qcore/statevector.hpp"

namespace qlab::ffward {

void NoiseModel::validate() const {
    if (p1 < 0 || p1 > 1 || p2 < 0 || p2 > 1 || readout < 0 || readout > 1)
        throw std::invalid_argument("noise model: probabilities must be in [0, 1]");
}

ObservableEstimate predict_ideal(const qlab::Circuit& circuit, int system_qubits) {
    qlab::Statevector s = qlab::Statevector::zero_state(circuit.num_qubits);
    s.apply(circuit);
    ObservableEstimate est;
    for (int q = 0; q < system_qubits; ++q) est.z.push_back(s.expectation_z(q));
    return est;
}

namespace {

void inject_pauli(qlab::Statevector& s, int q, uint64_t which) {
    switch (which) {
        case 0: s.apply(qlab::Gate::x(q)); break;
        case 1: s.apply(qlab::Gate::y(q)); break;
        default: s.apply(qlab::Gate::z(q)); break;
    }
}

struct ErrorEvent {
    size_t gate_index;
    int qubit_a, pauli_a;  // pauli -1 = none
    int qubit_b, pauli_b;
};

// draw the error pattern for one trajectory without simulating anything
std::vector<ErrorEvent> draw_errors(const qlab::Circuit& circuit, const NoiseModel& noise,
                                    qlab::Rng& rng) {
    std::vector<ErrorEvent> events;
    size_t idx = 0;
    for (const auto& m : circuit.moments)
        for (const qlab::Gate& g : m) {
            double p = g.arity() == 1 ? noise.p1 : noise.p2;
            if (rng.next_double() < p) {
                ErrorEvent e{idx, -1, -1, -1, -1};
                if (g.arity() == 1) {
                    e.qubit_a = g.targets[0];
                    e.pauli_a = static_cast<int>(rng.next_below(3));
                } else {
                    // uniformly random non-identity Pauli pair on the gate's qubits
                    uint64_t which = rng.next_below(15) + 1;
                    if (which % 4 != 0) {
                        e.qubit_a = g.targets[0];
                        e.pauli_a = static_cast<int>(which % 4 - 1);
                    }
                    if (which / 4 != 0) {
                        e.qubit_b = g.targets[1];
                        e.pauli_b = static_cast<int>(which / 4 - 1);
                    }
                }
                events.push_back(e);
            }
            ++idx;
        }
    return events;
}

}  // namespace

ObservableEstimate predict_noisy(const qlab::Circuit& circuit, int system_qubits,
                                 const NoiseModel& noise, size_t shots, qlab::Rng& rng,
                                 size_t max_trajectories) {
    noise.validate();
    if (shots < 1) throw std::invalid_argument("predict_noisy: shots must be positive");
    size_t trajectories = std::min(shots, max_trajectories);

    // the error-free trajectory is shared by every shot without an error
    qlab::Statevector clean = qlab::Statevector::zero_state(circuit.num_qubits);
    clean.apply(circuit);
    std::vector<double> clean_z(system_qubits);
    for (int q = 0; q < system_qubits; ++q) clean_z[q] = clean.expectation_z(q);

    std::vector<double> acc(system_qubits, 0.0);
    for (size_t t = 0; t < trajectories; ++t) {
        qlab::Rng stream = rng.stream(t);
        auto events = draw_errors(circuit, noise, stream);
        if (events.empty()) {
            for (int q = 0; q < system_qubits; ++q) acc[q] += clean_z[q];
            continue;
        }
        qlab::Statevector s = qlab::Statevector::zero_state(circuit.num_qubits);
        size_t idx = 0, next_event = 0;
        for (const auto& m : circuit.moments)
            for (const qlab::Gate& g : m) {
                s.apply(g);
                while (next_event < events.size() && events[next_event].gate_index == idx) {
                    const ErrorEvent& e = events[next_event];
                    if (e.pauli_a >= 0) inject_pauli(s, e.qubit_a, e.pauli_a);
                    if (e.pauli_b >= 0) inject_pauli(s, e.qubit_b, e.pauli_b);
                    ++next_event;
                }
                ++idx;
            }
        for (int q = 0; q < system_qubits; ++q) acc[q] += s.expectation_z(q);
    }

    double flip = 1.0 - 2.0 * noise.readout;
    ObservableEstimate est;
    for (int q = 0; q < system_qubits; ++q)
        est.z.push_back(flip * acc[q] / static_cast<double>(trajectories));
    return est;
}

double mitigate(double o_raw, double o_ref) {
    double denom = 1.0 - 2.0 * o_ref;
    if (std::abs(denom) < 1e-6)
        throw std::invalid_argument("mitigate: reference too noisy, denominator underflow");
    return (o_raw - o_ref) / denom;
}

double mitigate_z(double z_raw, double z_ref) {
    double o_raw = (1.0 - z_raw) / 2.0;
    double o_ref = (1.0 - z_ref) / 2.0;
    return 1.0 - 2.0 * mitigate(o_raw, o_ref);
}

}  // namespace qlab::ffward
