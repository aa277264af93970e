#include "idqnn/learn.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <json.hpp>
#include <ostream>
#include <stdexcept>

namespace qlab::idqnn {

std::vector<SiteEstimate> learn_beta(const std::vector<BitstringSample>& dataset,
                                     const LatticeGraph& graph) {
    if (dataset.empty()) throw std::invalid_argument("learn_beta: empty dataset");
    int n = graph.num_sites();
    std::vector<std::vector<int>> nbrs(n);
    for (int s = 0; s < n; ++s) nbrs[s] = graph.neighbors(s);

    std::vector<uint64_t> count(n, 0), ones(n, 0);
    for (const auto& rec : dataset) {
        if (static_cast<int>(rec.x.size()) != n || static_cast<int>(rec.y.size()) != n)
            throw std::invalid_argument("learn_beta: sample length mismatch");
        for (int s = 0; s < n; ++s) {
            if (rec.x[s] != 0) continue;
            bool ok = true;
            for (int nb : nbrs[s])
                if (rec.x[nb] != 1) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            ++count[s];
            ones[s] += rec.y[s];
        }
    }

    std::vector<SiteEstimate> out(n);
    for (int s = 0; s < n; ++s) {
        out[s].count = count[s];
        if (count[s] == 0) continue;  // fail-soft: unlearned, beta_hat stays 0
        double mean = static_cast<double>(ones[s]) / static_cast<double>(count[s]);
        double arg = std::clamp(1.0 - 2.0 * mean, -1.0, 1.0);
        out[s].beta_hat = 0.5 * std::acos(arg);
        out[s].learned = true;
    }
    return out;
}

namespace {

std::string bits_to_string(const std::vector<uint8_t>& b) {
    std::string s(b.size(), '0');
    for (size_t i = 0; i < b.size(); ++i)
        if (b[i]) s[i] = '1';
    return s;
}

std::vector<uint8_t> string_to_bits(const std::string& s) {
    std::vector<uint8_t> b(s.size());
    for (size_t i = 0; i < s.size(); ++i) {
        if (s[i] != '0' && s[i] != '1') throw std::invalid_argument("bad bit character");
        b[i] = s[i] == '1';
    }
    return b;
}

}  // namespace

void write_samples_jsonl(std::ostream& os, const std::vector<BitstringSample>& samples) {
    for (const auto& rec : samples) {
        nlohmann::json j;
        j["x"] = bits_to_string(rec.x);
        j["y"] = bits_to_string(rec.y);
        os << j.dump() << '\n';
    }
}

std::vector<BitstringSample> read_samples_jsonl(std::istream& is) {
    std::vector<BitstringSample> out;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        auto j = nlohmann::json::parse(line);
        out.push_back({string_to_bits(j.at("x").get<std::string>()),
                       string_to_bits(j.at("y").get<std::string>())});
    }
    return out;
}

}  // namespace qlab::idqnn
