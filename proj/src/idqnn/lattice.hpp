#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qcore/rng.hpp"

namespace qlab::idqnn {

// D-dimensional lattice; the first dimension indexes slices. Sites are
// flattened first-dimension-major: site = ((i1*n2 + i2)*n3 + i3)...
// Every cross-slice edge between L1-adjacent coordinates must be present;
// within-slice edges are configurable.
struct LatticeGraph {
    std::vector<int> dims;
    std::set<std::pair<int, int>> edges;  // flat site pairs, first < second

    int num_sites() const;
    int num_slices() const { return dims.empty() ? 0 : dims[0]; }
    int slice_size() const;  // product of dims[1..]

    int site_index(const std::vector<int>& coord) const;
    std::vector<int> coord_of(int site) const;
    // register position of a site within its slice
    int register_index(int site) const { return site % slice_size(); }
    int slice_of(int site) const { return site / slice_size(); }

    std::vector<int> neighbors(int site) const;  // graph neighbors (via edges)
    // within-slice edges of one slice, as register-index pairs
    std::vector<std::pair<int, int>> slice_edges(int slice) const;

    // throws unless every edge is L1-adjacent and all cross-slice edges exist
    void validate() const;

    // all L1-adjacent pairs connected (cross-slice and within-slice)
    static LatticeGraph full_grid(std::vector<int> dims);
    // cross-slice edges always present; each within-slice candidate kept
    // independently with probability `density`
    static LatticeGraph random_slice_edges(std::vector<int> dims, double density, qlab::Rng& rng);

    std::string to_json() const;
    static LatticeGraph from_json(const std::string& text);
};

}  // namespace qlab::idqnn
