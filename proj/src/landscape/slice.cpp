#include "landscape/slice.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace qlab::landscape {

LandscapeSlice landscape_slice(const CostFn& cost, const std::vector<double>& anchor,
                               std::vector<double> dir1, std::vector<double> dir2, int grid1,
                               int grid2, double span1, double span2) {
    size_t d = anchor.size();
    if (dir1.size() != d || dir2.size() != d)
        throw std::invalid_argument("slice: dimension mismatch");
    auto norm = [](const std::vector<double>& v) {
        double s = 0;
        for (double x : v) s += x * x;
        return std::sqrt(s);
    };
    double n1 = norm(dir1);
    if (n1 < 1e-12) throw std::invalid_argument("slice: zero direction");
    for (double& x : dir1) x /= n1;
    double dot = 0;
    for (size_t i = 0; i < d; ++i) dot += dir1[i] * dir2[i];
    for (size_t i = 0; i < d; ++i) dir2[i] -= dot * dir1[i];
    double n2 = norm(dir2);
    if (n2 < 1e-12) throw std::invalid_argument("slice: directions are collinear");
    for (double& x : dir2) x /= n2;

    LandscapeSlice s;
    s.anchor = anchor;
    s.dir1 = dir1;
    s.dir2 = dir2;
    s.grid1 = grid1;
    s.grid2 = grid2;
    s.span1 = span1;
    s.span2 = span2;
    s.cost.resize(static_cast<size_t>(grid1) * grid2);
    std::vector<double> point(d);
    for (int i = 0; i < grid1; ++i) {
        double u = grid1 > 1 ? -span1 + 2 * span1 * i / (grid1 - 1) : 0.0;
        for (int j = 0; j < grid2; ++j) {
            double v = grid2 > 1 ? -span2 + 2 * span2 * j / (grid2 - 1) : 0.0;
            for (size_t q = 0; q < d; ++q) point[q] = anchor[q] + u * dir1[q] + v * dir2[q];
            s.cost[static_cast<size_t>(i) * grid2 + j] = cost(point);
        }
    }
    return s;
}

void write_slice_csv(std::ostream& os, const LandscapeSlice& s) {
    os << "u,v,cost\n";
    for (int i = 0; i < s.grid1; ++i) {
        double u = s.grid1 > 1 ? -s.span1 + 2 * s.span1 * i / (s.grid1 - 1) : 0.0;
        for (int j = 0; j < s.grid2; ++j) {
            double v = s.grid2 > 1 ? -s.span2 + 2 * s.span2 * j / (s.grid2 - 1) : 0.0;
            os << u << ',' << v << ',' << s.at(i, j) << '\n';
        }
    }
}

}  // namespace qlab::landscape
