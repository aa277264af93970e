#include "idqnn/input_dist.hpp"

#include <cmath>
#include <stdexcept>

namespace qlab::idqnn {

void InputDistribution::validate() const {
    double total = 0;
    for (const auto& c : components) {
        if (c.weight < 0) throw std::invalid_argument("negative mixture weight");
        if (!c.all_zero && (c.p_one < 0 || c.p_one > 1))
            throw std::invalid_argument("component probability out of range");
        total += c.weight;
    }
    if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("mixture weights must sum to 1");
}

std::vector<uint8_t> InputDistribution::sample(int num_sites, qlab::Rng& rng) const {
    double u = rng.next_double();
    const Component* pick = &components.back();
    double acc = 0;
    for (const auto& c : components) {
        acc += c.weight;
        if (u < acc) {
            pick = &c;
            break;
        }
    }
    std::vector<uint8_t> x(num_sites, 0);
    if (!pick->all_zero)
        for (int i = 0; i < num_sites; ++i) x[i] = rng.next_bool(pick->p_one) ? 1 : 0;
    return x;
}

bool InputDistribution::local_decoupling(const LatticeGraph& graph, double min_weight,
                                         double min_prob) const {
    int n = graph.num_sites();
    for (const auto& c : components) {
        if (c.weight < min_weight || c.all_zero) continue;
        double worst = 1.0;
        for (int site = 0; site < n; ++site) {
            int deg = static_cast<int>(graph.neighbors(site).size());
            double p = (1.0 - c.p_one) * std::pow(c.p_one, deg);
            worst = std::min(worst, p);
        }
        if (worst >= min_prob) return true;
    }
    return false;
}

InputDistribution InputDistribution::standard_mixture() {
    InputDistribution d;
    d.components.push_back({true, 0.0, 1.0 / 3.0});
    d.components.push_back({false, 0.4, 1.0 / 3.0});
    d.components.push_back({false, 0.8, 1.0 / 3.0});
    return d;
}

}  // namespace qlab::idqnn
