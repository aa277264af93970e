#pragma once

#include <vector>

#include "idqnn/lattice.hpp"

namespace qlab::idqnn {

// Mixture over input bitstrings. Components are either the all-zero string
// or i.i.d. bits with a fixed per-bit probability of 1.
struct InputDistribution {
    struct Component {
        bool all_zero = false;
        double p_one = 0.0;  // ignored for all_zero
        double weight = 0.0;
    };
    std::vector<Component> components;

    void validate() const;  // weights nonnegative, sum to 1 within 1e-12
    std::vector<uint8_t> sample(int num_sites, qlab::Rng& rng) const;

    // True iff some component with weight >= min_weight gives every site at
    // least min_prob probability of "this bit 0, all lattice neighbors 1".
    // That pattern isolates the site, which is what per-site estimation needs.
    bool local_decoupling(const LatticeGraph& graph, double min_weight = 1e-3,
                          double min_prob = 1e-3) const;

    // the 1/3 all-zero, 1/3 iid(0.4), 1/3 iid(0.8) mixture
    static InputDistribution standard_mixture();
};

}  // namespace qlab::idqnn
