#pragma once

#include <json.hpp>
#include <string>

namespace qlab::cli {

// One experiment invocation: id, root seed, parameter block, thresholds.
// Unknown fields anywhere are rejected so configs stay honest.
struct ExperimentConfig {
    std::string experiment;
    uint64_t seed = 0;
    std::string output_dir = "results";
    int jobs = 0;  // 0 = hardware concurrency
    nlohmann::json params;
    nlohmann::json thresholds;

    static ExperimentConfig from_json(const std::string& text);
    static ExperimentConfig from_file(const std::string& path);
    std::string params_hash() const;  // hex FNV-1a over the canonical params dump
};

// throws when `obj` holds a key outside `allowed` (exact match)
void require_keys(const nlohmann::json& obj, const std::vector<std::string>& allowed,
                  const std::string& where);

double threshold(const ExperimentConfig& cfg, const std::string& name, double fallback);

}  // namespace qlab::cli
