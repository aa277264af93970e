#include "expcli/corpus.hpp"

#include <Eigen/QR>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <map>

#include "ffward/hamiltonian.hpp"

namespace qlab::cli {

namespace {
constexpr double kPi = 3.14159265358979323846;

qlab::Mat haar_unitary(int dim, qlab::Rng& rng) {
    qlab::Mat g(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) g(i, j) = qlab::cx(rng.next_gaussian(), rng.next_gaussian());
    Eigen::HouseholderQR<qlab::Mat> qr(g);
    qlab::Mat q = qr.householderQ();
    qlab::Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
    // fix the phase gauge so the distribution is Haar
    for (int i = 0; i < dim; ++i) {
        qlab::cx d = r(i, i);
        q.col(i) *= d / std::abs(d);
    }
    return q;
}

}  // namespace

qlab::Circuit random_brickwork(int n, int depth, qlab::Rng rng) {
    qlab::Circuit c(n);
    for (int layer = 0; layer < depth; ++layer) {
        int offset = layer % 2;
        std::vector<qlab::Gate> moment;
        for (int q = offset; q + 1 < n; q += 2)
            moment.push_back(qlab::Gate::make_dense({q, q + 1}, haar_unitary(4, rng)));
        if (!moment.empty()) c.append_moment(moment);
    }
    return c;
}

qlab::idqnn::IdqnnModel random_model(const std::vector<int>& dims, double density,
                                     qlab::Rng rng) {
    qlab::idqnn::IdqnnModel m;
    if (density >= 1.0)
        m.graph = qlab::idqnn::LatticeGraph::full_grid(dims);
    else {
        qlab::Rng edge_rng = rng.stream(0xed6e);
        m.graph = qlab::idqnn::LatticeGraph::random_slice_edges(dims, density, edge_rng);
    }
    m.beta.resize(m.graph.num_sites());
    qlab::Rng beta_rng = rng.stream(0xbe7a);
    for (double& b : m.beta) b = beta_rng.uniform(0.0, kPi);
    return m;
}

uint64_t fnv1a(const std::string& text) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : text) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string corpus_generate(uint64_t seed, const std::string& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(fs::path(dir) / "circuits");
    fs::create_directories(fs::path(dir) / "models");

    std::map<std::string, std::string> files;
    qlab::Rng root(seed);

    // golden scrambler serialization (fixed sub-seed)
    files["circuits/scrambler_n4.json"] = qlab::ffward::build_scrambler(4, seed ^ 0x5c4a).to_json();
    files["circuits/scrambler_n8.json"] = qlab::ffward::build_scrambler(8, seed ^ 0x5c4b).to_json();

    // brickwork targets used by the learning suites
    int idx = 0;
    for (int n : {2, 3, 4, 6})
        for (int depth : {1, 2}) {
            qlab::Rng rng = root.stream(100 + idx);
            files["circuits/brickwork_n" + std::to_string(n) + "_d" + std::to_string(depth) +
                  ".json"] = random_brickwork(n, depth, rng).to_json();
            ++idx;
        }

    // lattice models: full grids and density-0.5 edge subsets
    idx = 0;
    for (const auto& dims : std::vector<std::vector<int>>{{2, 2}, {3, 2}, {4, 4}, {2, 2, 3}}) {
        for (double density : {1.0, 0.5}) {
            qlab::Rng rng = root.stream(200 + idx);
            qlab::idqnn::IdqnnModel m = random_model(dims, density, rng);
            m.seed = seed;
            std::string name = "models/lattice";
            for (int d : dims) name += "_" + std::to_string(d);
            name += density >= 1.0 ? "_full.json" : "_half.json";
            files[name] = m.to_json();
            ++idx;
        }
    }

    nlohmann::json manifest;
    for (const auto& [name, text] : files) {
        std::ofstream out(fs::path(dir) / name);
        out << text;
        char buf[17];
        snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(text)));
        manifest[name] = buf;
    }
    std::string mtext = manifest.dump(2);
    std::ofstream mout(fs::path(dir) / "manifest.json");
    mout << mtext;
    return mtext;
}

}  // namespace qlab::cli
