#include "qcore/heisenberg.hpp"

#include <stdexcept>

namespace qlab {

std::set<int> backward_lightcone(const Circuit& arch, const std::set<int>& targets) {
    std::set<int> cone = targets;
    for (auto mit = arch.moments.rbegin(); mit != arch.moments.rend(); ++mit) {
        for (const Gate& g : *mit) {
            bool touches = false;
            for (int q : g.targets)
                if (cone.count(q)) touches = true;
            if (touches)
                for (int q : g.targets) cone.insert(q);
        }
    }
    return cone;
}

PauliObservable heisenberg_evolve(const Circuit& u, const PauliString& p, int dense_limit) {
    if (p.weight() < 1) throw std::invalid_argument("heisenberg_evolve: identity input");
    std::set<int> targets(p.support().begin(), p.support().end());
    std::set<int> cone = backward_lightcone(u, targets);
    if (static_cast<int>(cone.size()) > dense_limit)
        throw std::invalid_argument("heisenberg_evolve: lightcone exceeds dense limit");
    std::vector<int> window(cone.begin(), cone.end());

    Circuit local = u.restricted_to(window);
    Mat w = local.to_matrix_on_window(window);

    // P on the window
    std::vector<int> pos(u.num_qubits, -1);
    for (size_t i = 0; i < window.size(); ++i) pos[window[i]] = static_cast<int>(i);
    PauliString local_p(static_cast<int>(window.size()));
    local_p.phase_pow = p.phase_pow;
    for (int q : p.support()) local_p.letters[pos[q]] = p.letters[q];

    Mat evolved = w.adjoint() * local_p.matrix() * w;
    PauliObservable local_obs = pauli_decompose(evolved);

    PauliObservable out(u.num_qubits);
    for (const auto& [letters, c] : local_obs.terms) {
        std::vector<uint8_t> full(u.num_qubits, 0);
        for (size_t i = 0; i < window.size(); ++i) full[window[i]] = letters[i];
        out.terms[full] = c;
    }
    return out;
}

}  // namespace qlab
