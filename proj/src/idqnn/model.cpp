#include "idqnn/model.hpp"

#include <cmath>
#include <json.hpp>
#include <stdexcept>

namespace qlab::idqnn {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

void IdqnnModel::validate() const {
    graph.validate();
    if (static_cast<int>(beta.size()) != graph.num_sites())
        throw std::invalid_argument("model: one beta per site required");
}

std::string IdqnnModel::to_json() const {
    nlohmann::json j;
    j["dims"] = graph.dims;
    auto je = nlohmann::json::array();
    for (const auto& [a, b] : graph.edges) je.push_back({a, b});
    j["edges"] = je;
    j["beta"] = beta;
    j["seed"] = seed;
    return j.dump();
}

IdqnnModel IdqnnModel::from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    IdqnnModel m;
    m.graph.dims = j.at("dims").get<std::vector<int>>();
    for (const auto& e : j.at("edges")) m.graph.edges.insert({e[0].get<int>(), e[1].get<int>()});
    m.beta = j.at("beta").get<std::vector<double>>();
    if (j.contains("seed")) m.seed = j.at("seed").get<uint64_t>();
    m.validate();
    return m;
}

IdqnnModel round_to_clifford(const IdqnnModel& model) {
    IdqnnModel out = model;
    for (double& b : out.beta) {
        double k = std::floor(2.0 * b / kPi + 0.5);  // round half up
        b = k * kPi / 2.0;
    }
    return out;
}

double fold_beta(double beta) {
    double b = std::fmod(beta, kPi);
    if (b < 0) b += kPi;
    return b <= kPi / 2 ? b : kPi - b;
}

}  // namespace qlab::idqnn
