#pragma once

#include <iosfwd>

#include "landscape/optimize.hpp"

namespace qlab::landscape {

struct LandscapeSlice {
    std::vector<double> anchor, dir1, dir2;  // dir1, dir2 orthonormalized
    int grid1 = 0, grid2 = 0;
    double span1 = 0, span2 = 0;
    std::vector<double> cost;  // row-major grid1 x grid2

    double at(int i, int j) const { return cost[static_cast<size_t>(i) * grid2 + j]; }
};

// cost over the affine grid anchor + u*dir1 + v*dir2, u and v spanning
// [-span, span] on a grid1 x grid2 mesh; directions are Gram-Schmidt
// orthonormalized first
LandscapeSlice landscape_slice(const CostFn& cost, const std::vector<double>& anchor,
                               std::vector<double> dir1, std::vector<double> dir2, int grid1,
                               int grid2, double span1, double span2);

// (u, v, cost) rows
void write_slice_csv(std::ostream& os, const LandscapeSlice& s);

}  // namespace qlab::landscape
