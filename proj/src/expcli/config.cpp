#include "expcli/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qlab::cli {

void require_keys(const nlohmann::json& obj, const std::vector<std::string>& allowed,
                  const std::string& where) {
    if (!obj.is_object()) throw std::invalid_argument(where + ": expected an object");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const auto& k : allowed)
            if (it.key() == k) ok = true;
        if (!ok) throw std::invalid_argument(where + ": unknown field '" + it.key() + "'");
    }
}

ExperimentConfig ExperimentConfig::from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    require_keys(j, {"experiment", "seed", "output_dir", "jobs", "params", "thresholds"}, "config");
    ExperimentConfig cfg;
    cfg.experiment = j.at("experiment").get<std::string>();
    cfg.seed = j.at("seed").get<uint64_t>();
    if (j.contains("output_dir")) cfg.output_dir = j.at("output_dir").get<std::string>();
    if (j.contains("jobs")) cfg.jobs = j.at("jobs").get<int>();
    cfg.params = j.value("params", nlohmann::json::object());
    cfg.thresholds = j.value("thresholds", nlohmann::json::object());
    return cfg;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json(ss.str());
}

std::string ExperimentConfig::params_hash() const {
    std::string dump = params.dump();
    uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : dump) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

double threshold(const ExperimentConfig& cfg, const std::string& name, double fallback) {
    if (cfg.thresholds.contains(name)) return cfg.thresholds.at(name).get<double>();
    return fallback;
}

}  // namespace qlab::cli
