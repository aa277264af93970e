#pragma once

#include <iosfwd>

#include "idqnn/lattice.hpp"

namespace qlab::idqnn {

struct BitstringSample {
    std::vector<uint8_t> x;
    std::vector<uint8_t> y;
};

struct SiteEstimate {
    double beta_hat = 0.0;   // in [0, pi/2]
    uint64_t count = 0;      // qualifying samples used
    bool learned = false;    // false -> no qualifying sample, beta_hat left at 0
};

// Per-site estimate from the samples where this site's input bit is 0 and
// every lattice neighbor's bit is 1: beta_hat = arccos(1 - 2*mean(y)) / 2,
// the mean clamped into [-1, 1] first. Unlearned sites are flagged, not
// thrown.
std::vector<SiteEstimate> learn_beta(const std::vector<BitstringSample>& dataset,
                                     const LatticeGraph& graph);

// JSON-lines: {"x":"0100...","y":"1101..."} per line
void write_samples_jsonl(std::ostream& os, const std::vector<BitstringSample>& samples);
std::vector<BitstringSample> read_samples_jsonl(std::istream& is);

}  // namespace qlab::idqnn
