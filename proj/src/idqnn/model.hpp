#pragma once

#include "idqnn/lattice.hpp"

namespace qlab::idqnn {

// Generative model: per-site |+>/|0> preparation from the input bit, a layer
// of Z-rotations, CZ on the lattice edges, X-basis readout.
//
// Convention: the site parameter beta in [0, pi) enters the circuit as a
// Z-rotation with relative phase 2*beta between |0> and |1>, so an isolated
// site prepared in |+> reads out 1 with probability (1 - cos(2 beta)) / 2.
struct IdqnnModel {
    LatticeGraph graph;
    std::vector<double> beta;  // one per site, radians in [0, pi)
    uint64_t seed = 0;         // provenance of the instance, carried in files

    int num_sites() const { return graph.num_sites(); }
    void validate() const;

    std::string to_json() const;
    static IdqnnModel from_json(const std::string& text);
};

// beta -> (pi/2) * round(2 beta / pi), ties rounded half-up. The rotations of
// the rounded model are Clifford.
IdqnnModel round_to_clifford(const IdqnnModel& model);

// fold an angle into [0, pi/2], the domain resolvable from X-basis statistics
double fold_beta(double beta);

}  // namespace qlab::idqnn
