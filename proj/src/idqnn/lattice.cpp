#include "idqnn/lattice.hpp"

#include <json.hpp>
#include <stdexcept>

namespace qlab::idqnn {

int LatticeGraph::num_sites() const {
    int n = 1;
    for (int d : dims) n *= d;
    return n;
}

int LatticeGraph::slice_size() const {
    int n = 1;
    for (size_t i = 1; i < dims.size(); ++i) n *= dims[i];
    return n;
}

int LatticeGraph::site_index(const std::vector<int>& coord) const {
    if (coord.size() != dims.size()) throw std::invalid_argument("coordinate rank mismatch");
    int idx = 0;
    for (size_t i = 0; i < dims.size(); ++i) {
        if (coord[i] < 0 || coord[i] >= dims[i]) throw std::out_of_range("coordinate out of range");
        idx = idx * dims[i] + coord[i];
    }
    return idx;
}

std::vector<int> LatticeGraph::coord_of(int site) const {
    std::vector<int> c(dims.size());
    for (size_t i = dims.size(); i-- > 0;) {
        c[i] = site % dims[i];
        site /= dims[i];
    }
    return c;
}

std::vector<int> LatticeGraph::neighbors(int site) const {
    std::vector<int> out;
    for (const auto& [a, b] : edges) {
        if (a == site) out.push_back(b);
        if (b == site) out.push_back(a);
    }
    return out;
}

std::vector<std::pair<int, int>> LatticeGraph::slice_edges(int slice) const {
    std::vector<std::pair<int, int>> out;
    for (const auto& [a, b] : edges)
        if (slice_of(a) == slice && slice_of(b) == slice)
            out.emplace_back(register_index(a), register_index(b));
    return out;
}

void LatticeGraph::validate() const {
    int n = num_sites();
    for (const auto& [a, b] : edges) {
        if (a < 0 || b < 0 || a >= n || b >= n || a >= b)
            throw std::invalid_argument("lattice edge out of range or unordered");
        auto ca = coord_of(a), cb = coord_of(b);
        int l1 = 0;
        for (size_t i = 0; i < dims.size(); ++i) l1 += std::abs(ca[i] - cb[i]);
        if (l1 != 1) throw std::invalid_argument("lattice edge is not L1-adjacent");
    }
    // all cross-slice L1 pairs must be edges
    for (int site = 0; site < n; ++site) {
        auto c = coord_of(site);
        if (c[0] + 1 < dims[0]) {
            auto c2 = c;
            c2[0] += 1;
            int other = site_index(c2);
            if (!edges.count({std::min(site, other), std::max(site, other)}))
                throw std::invalid_argument("missing cross-slice edge");
        }
    }
}

namespace {

void add_all_adjacent(LatticeGraph& g, bool within_slice, double density, qlab::Rng* rng) {
    int n = g.num_sites();
    for (int site = 0; site < n; ++site) {
        auto c = g.coord_of(site);
        for (size_t axis = 0; axis < g.dims.size(); ++axis) {
            if (c[axis] + 1 >= g.dims[axis]) continue;
            auto c2 = c;
            c2[axis] += 1;
            int other = g.site_index(c2);
            bool cross = axis == 0;
            if (cross) {
                g.edges.insert({site, other});
            } else if (within_slice) {
                if (!rng || rng->next_double() < density) g.edges.insert({site, other});
            }
        }
    }
}

}  // namespace

LatticeGraph LatticeGraph::full_grid(std::vector<int> dims) {
    LatticeGraph g;
    g.dims = std::move(dims);
    add_all_adjacent(g, true, 1.0, nullptr);
    return g;
}

LatticeGraph LatticeGraph::random_slice_edges(std::vector<int> dims, double density, qlab::Rng& rng) {
    LatticeGraph g;
    g.dims = std::move(dims);
    add_all_adjacent(g, true, density, &rng);
    return g;
}

std::string LatticeGraph::to_json() const {
    nlohmann::json j;
    j["dims"] = dims;
    auto je = nlohmann::json::array();
    for (const auto& [a, b] : edges) je.push_back({a, b});
    j["edges"] = je;
    return j.dump();
}

LatticeGraph LatticeGraph::from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    LatticeGraph g;
    g.dims = j.at("dims").get<std::vector<int>>();
    for (const auto& e : j.at("edges")) g.edges.insert({e[0].get<int>(), e[1].get<int>()});
    g.validate();
    return g;
}

}  // namespace qlab::idqnn
