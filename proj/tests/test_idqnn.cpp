#include <doctest.h>

#include <sstream>

#include "expcli/corpus.hpp"
#include "idqnn/input_dist.hpp"
#include "idqnn/layered.hpp"
#include "idqnn/learn.hpp"
#include "idqnn/sampling.hpp"
#include "idqnn/xeb.hpp"

using namespace qlab;
using namespace qlab::idqnn;

namespace {
constexpr double kPi = 3.14159265358979323846;

double tvd(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
    return s / 2;
}

IdqnnModel line_model(int sites, double beta) {
    IdqnnModel m;
    m.graph = LatticeGraph::full_grid({sites, 1});
    m.beta.assign(sites, beta);
    return m;
}

}  // namespace

TEST_CASE("lattice validation") {
    LatticeGraph g = LatticeGraph::full_grid({2, 2});
    CHECK_NOTHROW(g.validate());
    CHECK(g.num_sites() == 4);
    CHECK(g.slice_size() == 2);
    // removing a cross-slice edge breaks validity
    LatticeGraph broken = g;
    broken.edges.erase({0, 2});
    CHECK_THROWS(broken.validate());
    // non-adjacent edges are rejected
    LatticeGraph diag = g;
    diag.edges.insert({0, 3});
    CHECK_THROWS(diag.validate());
    // within-slice edges are optional
    LatticeGraph sparse = g;
    sparse.edges.erase({0, 1});
    CHECK_NOTHROW(sparse.validate());
}

TEST_CASE("model json round trip") {
    Rng rng(3);
    IdqnnModel m = cli::random_model({2, 3}, 0.5, rng);
    m.seed = 99;
    IdqnnModel back = IdqnnModel::from_json(m.to_json());
    CHECK(back.to_json() == m.to_json());
    CHECK(back.seed == 99);
}

TEST_CASE("clifford rounding") {
    IdqnnModel m = line_model(3, 0.0);
    m.beta = {0.1, kPi / 4, 1.5};
    IdqnnModel r = round_to_clifford(m);
    CHECK(r.beta[0] == doctest::Approx(0.0));
    CHECK(r.beta[1] == doctest::Approx(kPi / 2));  // tie rounds half-up
    CHECK(r.beta[2] == doctest::Approx(kPi / 2));  // 2*1.5/pi ~ 0.955 -> 1
}

TEST_CASE("single-site distributions") {
    IdqnnModel m = line_model(1, kPi / 3);
    // input bit 1 prepares |0>, X readout is a fair coin
    auto d1 = exact_distribution(m, {1});
    CHECK(d1[1] == doctest::Approx(0.5));
    // input bit 0 prepares |+>, Pr[1] = (1 - cos(2 beta)) / 2 = 0.75
    auto d0 = exact_distribution(m, {0});
    CHECK(d0[1] == doctest::Approx(0.75));

    // beta = 0 keeps |+> unrotated: output 0 with certainty
    IdqnnModel flat = line_model(1, 0.0);
    Rng rng(1);
    for (int rep = 0; rep < 20; ++rep) {
        Rng r = rng.stream(rep);
        CHECK(sample_shallow(flat, {0}, r).y[0] == 0);
    }
    // beta = pi/2 with input 1: state |0>, fair coin
    IdqnnModel half = line_model(1, kPi / 2);
    int ones = 0;
    for (int rep = 0; rep < 2000; ++rep) {
        Rng r = rng.stream(100 + rep);
        ones += sample_shallow(half, {1}, r).y[0];
    }
    CHECK(std::abs(ones / 2000.0 - 0.5) < 0.04);
}

TEST_CASE("uniform output for beta = pi/2 on a line with all-zero input") {
    IdqnnModel m = line_model(3, kPi / 2);
    auto d = exact_distribution(m, {0, 0, 0});
    for (double p : d) CHECK(p == doctest::Approx(1.0 / 8).epsilon(1e-9));
}

TEST_CASE("shallow and deep forms sample the same distribution") {
    Rng rng(2025);
    std::vector<std::vector<int>> shapes = {{3, 1}, {2, 2}, {3, 2}, {2, 3}, {2, 2, 2}, {2, 2, 3}};
    for (size_t si = 0; si < shapes.size(); ++si) {
        for (double density : {1.0, 0.5}) {
            IdqnnModel m = cli::random_model(shapes[si], density, rng.stream(si * 2 + (density < 1)));
            int sites = m.num_sites();
            std::vector<std::vector<uint8_t>> xcases = {std::vector<uint8_t>(sites, 0),
                                                        std::vector<uint8_t>(sites, 1)};
            Rng xr = rng.stream(1000 + si);
            for (int k = 0; k < 5; ++k) {
                std::vector<uint8_t> x(sites);
                for (auto& b : x) b = static_cast<uint8_t>(xr.next_bit());
                xcases.push_back(x);
            }
            for (const auto& x : xcases) {
                auto exact = exact_distribution(m, x);
                auto deep = deep_exact_distribution(m, x);
                CHECK(tvd(exact, deep) < 1e-9);
            }
        }
    }
}

TEST_CASE("deep sampler empirical check and log-probabilities") {
    Rng rng(7);
    IdqnnModel m = cli::random_model({2, 2}, 1.0, rng);
    std::vector<uint8_t> x = {0, 1, 0, 0};
    auto exact = exact_distribution(m, x);
    std::vector<double> hist(exact.size(), 0.0);
    const int shots = 100000;
    for (int s = 0; s < shots; ++s) {
        Rng r = rng.stream(s);
        auto smp = sample_deep(m, x, r);
        uint64_t idx = 0;
        for (size_t q = 0; q < smp.y.size(); ++q)
            if (smp.y[q]) idx |= uint64_t{1} << q;
        hist[idx] += 1.0 / shots;
        // the sampler's own log-probability matches the exact distribution
        CHECK(std::abs(std::exp2(smp.log2_prob) - exact[idx]) < 1e-9);
    }
    CHECK(tvd(exact, hist) < 0.02);
}

TEST_CASE("all-ones input factorizes into independent site coins") {
    // every step measures |0>-prepared qubits in X: every bit is a fair coin
    IdqnnModel m = line_model(3, 1.1);
    auto d = exact_distribution(m, {1, 1, 1});
    for (double p : d) CHECK(p == doctest::Approx(1.0 / 8).epsilon(1e-9));
    auto deep = deep_exact_distribution(m, {1, 1, 1});
    CHECK(tvd(d, deep) < 1e-12);
}

TEST_CASE("teleportation chain with beta = 0") {
    // no within-slice edges, beta 0, x = 0...0: every slice teleports |+>
    IdqnnModel m = line_model(3, 0.0);
    auto exact = exact_distribution(m, {0, 0, 0});
    auto deep = deep_exact_distribution(m, {0, 0, 0});
    CHECK(tvd(exact, deep) < 1e-12);
    // interior bits are fair coins, the final bit is pinned by the corrections
    double p_y0_0 = exact[0] + exact[2] + exact[4] + exact[6];
    CHECK(p_y0_0 == doctest::Approx(0.5));
}

TEST_CASE("learn_beta closed-form inversions") {
    LatticeGraph g = LatticeGraph::full_grid({2, 1});
    std::vector<BitstringSample> ds;
    // site 0 qualifies when x = 01; all outcomes zero -> beta_hat = 0
    for (int i = 0; i < 10; ++i) ds.push_back({{0, 1}, {0, 0}});
    auto est = learn_beta(ds, g);
    CHECK(est[0].learned);
    CHECK(est[0].count == 10);
    CHECK(est[0].beta_hat == doctest::Approx(0.0));
    CHECK(!est[1].learned);  // never qualifies in this dataset

    // qualifying mean 1/2 -> beta_hat = pi/4
    ds.clear();
    for (int i = 0; i < 10; ++i) ds.push_back({{0, 1}, {static_cast<uint8_t>(i % 2), 0}});
    est = learn_beta(ds, g);
    CHECK(est[0].beta_hat == doctest::Approx(kPi / 4));
    CHECK_THROWS(learn_beta({}, g));
}

TEST_CASE("learn_beta recovers the model angles") {
    Rng rng(88);
    IdqnnModel m = cli::random_model({3, 3}, 1.0, rng);
    for (double& b : m.beta) b = kPi / 3;
    auto dist = InputDistribution::standard_mixture();
    CHECK(dist.local_decoupling(m.graph));
    const size_t N = 100000;
    std::vector<BitstringSample> ds(N);
    for (size_t s = 0; s < N; ++s) {
        Rng r = rng.stream(s);
        auto x = dist.sample(m.num_sites(), r);
        auto smp = sample_deep(m, x, r);
        ds[s] = {std::move(x), std::move(smp.y)};
    }
    auto est = learn_beta(ds, m.graph);
    for (int site = 0; site < m.num_sites(); ++site) {
        CHECK(est[site].learned);
        CHECK(std::abs(est[site].beta_hat - fold_beta(kPi / 3)) < 0.05);
    }
}

TEST_CASE("input distribution validation and decoupling") {
    InputDistribution d = InputDistribution::standard_mixture();
    CHECK_NOTHROW(d.validate());
    InputDistribution bad;
    bad.components.push_back({true, 0.0, 0.7});
    CHECK_THROWS(bad.validate());
    // pure all-zero mixture never decouples
    InputDistribution zeros;
    zeros.components.push_back({true, 0.0, 1.0});
    CHECK(!zeros.local_decoupling(LatticeGraph::full_grid({2, 2})));
}

TEST_CASE("clifford sampler agrees exactly with the dense oracle") {
    Rng rng(41);
    for (int rep = 0; rep < 4; ++rep) {
        IdqnnModel m = round_to_clifford(cli::random_model({3, 2}, 0.5, rng.stream(rep)));
        std::vector<uint8_t> x(m.num_sites(), 0);
        Rng xr = rng.stream(100 + rep);
        for (auto& b : x) b = static_cast<uint8_t>(xr.next_bit());
        auto dense = exact_distribution(m, x);
        for (uint64_t y = 0; y < dense.size(); ++y) {
            std::vector<uint8_t> bits(m.num_sites());
            for (int q = 0; q < m.num_sites(); ++q) bits[q] = (y >> q) & 1;
            double lp = clifford_log2_prob(m, x, bits);
            double p = std::isinf(lp) ? 0.0 : std::exp2(lp);
            CHECK(std::abs(p - dense[y]) < 1e-12);
        }
    }
}

TEST_CASE("clifford sampler with beta zero respects graph parity constraints") {
    IdqnnModel m = line_model(4, 0.0);
    std::vector<uint8_t> x(4, 0);
    auto dense = exact_distribution(m, x);
    // support is an affine subspace: all nonzero probabilities are equal
    double nonzero = 0;
    int support = 0;
    for (double p : dense)
        if (p > 1e-12) {
            ++support;
            nonzero = p;
        }
    CHECK(support * nonzero == doctest::Approx(1.0));
    Rng rng(5);
    for (int s = 0; s < 200; ++s) {
        Rng r = rng.stream(s);
        auto smp = sample_clifford(m, x, r);
        uint64_t idx = 0;
        for (int q = 0; q < 4; ++q)
            if (smp.y[q]) idx |= uint64_t{1} << q;
        CHECK(dense[idx] > 0);  // never samples outside the subspace
        CHECK(std::exp2(smp.log2_prob) == doctest::Approx(nonzero));
    }
}

TEST_CASE("xeb calibration against the exact oracle") {
    Rng rng(55);
    IdqnnModel m = cli::random_model({2, 3}, 1.0, rng);
    std::vector<uint8_t> x(m.num_sites(), 0);
    auto dist = exact_distribution(m, x);
    double second = 0;
    for (double p : dist) second += p * p;
    int n = m.num_sites();

    const int shots = 10000;
    std::vector<double> lp_model(shots), lp_unif(shots);
    Rng ur = rng.stream(2);
    for (int s = 0; s < shots; ++s) {
        Rng r = rng.stream(1000 + s);
        lp_model[s] = sample_deep(m, x, r).log2_prob;
        lp_unif[s] = log2_prob_of(dist, ur.next_below(dist.size()));
    }
    CHECK(std::abs(xeb_normalized_exact(lp_model, second, n) - 1.0) < 0.05);
    CHECK(std::abs(xeb_normalized_exact(lp_unif, second, n)) < 0.05);
    CHECK_THROWS(xeb_simple({}, n));
}

TEST_CASE("layered circuit mapping") {
    // single round, no CZ: the model factorizes over sites
    LayeredDeepCircuit single;
    single.num_qubits = 2;
    single.rounds.push_back({true, {0.7, 1.9}, {}});
    auto map1 = build_idqnn_from_layered(single);
    auto d = exact_distribution(map1.model, map1.x_template);
    // joint = product of single-site marginals
    double p0 = d[0] + d[2];
    double p1 = d[0] + d[1];
    CHECK(d[0] == doctest::Approx(p0 * p1).epsilon(1e-9));

    // two qubits, two rounds: joint (mask, final) distribution matches the
    // directly simulated injected circuits
    LayeredDeepCircuit two;
    two.num_qubits = 2;
    two.rounds.push_back({true, {0.3, 2.1}, {{0, 1}}});
    two.rounds.push_back({true, {1.1, 0.5}, {}});
    auto map2 = build_idqnn_from_layered(two);
    auto joint = exact_distribution(map2.model, map2.x_template);
    for (uint64_t mask = 0; mask < 4; ++mask) {
        auto out = layered_output_distribution(two, {mask});
        for (uint64_t fin = 0; fin < 4; ++fin) {
            uint64_t y = mask | (fin << 2);
            CHECK(std::abs(joint[y] - 0.25 * out[fin]) < 1e-9);
        }
    }

    // identity rounds: output marginal on the final slice is |+..+> statistics
    LayeredDeepCircuit idr;
    idr.num_qubits = 2;
    for (int r = 0; r < 3; ++r) idr.rounds.push_back({true, {0.0, 0.0}, {}});
    auto map3 = build_idqnn_from_layered(idr);
    auto dd = exact_distribution(map3.model, map3.x_template);
    // final-slice bits occupy the top 2 positions; their marginal must match
    // a 3-step teleportation chain of |+>
    std::vector<double> marg(4, 0.0);
    for (uint64_t y = 0; y < dd.size(); ++y) marg[(y >> 4) & 3] += dd[y];
    IdqnnModel chain;
    chain.graph = LatticeGraph::full_grid({3, 2});
    // drop the within-slice edges to mirror the identity rounds
    auto edges = chain.graph.edges;
    for (const auto& e : edges)
        if (chain.graph.slice_of(e.first) == chain.graph.slice_of(e.second))
            chain.graph.edges.erase(e);
    chain.beta.assign(6, 0.0);
    auto chain_d = exact_distribution(chain, std::vector<uint8_t>(6, 0));
    std::vector<double> chain_marg(4, 0.0);
    for (uint64_t y = 0; y < chain_d.size(); ++y) chain_marg[(y >> 4) & 3] += chain_d[y];
    CHECK(tvd(marg, chain_marg) < 1e-9);

    // malformed rounds are rejected
    LayeredDeepCircuit bad;
    bad.num_qubits = 2;
    bad.rounds.push_back({true, {0.0}, {}});
    CHECK_THROWS(build_idqnn_from_layered(bad));
    LayeredDeepCircuit far;
    far.num_qubits = 3;
    far.rounds.push_back({true, {0, 0, 0}, {{0, 2}}});
    CHECK_THROWS(build_idqnn_from_layered(far));
}

TEST_CASE("dataset jsonl round trip") {
    std::vector<BitstringSample> ds = {{{0, 1}, {1, 1}}, {{1, 0}, {0, 1}}};
    std::stringstream ss;
    write_samples_jsonl(ss, ds);
    auto back = read_samples_jsonl(ss);
    REQUIRE(back.size() == 2);
    CHECK(back[0].x == ds[0].x);
    CHECK(back[1].y == ds[1].y);
}
