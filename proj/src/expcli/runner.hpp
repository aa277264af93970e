#pragma once

#include <string>
#include <vector>

#include "expcli/config.hpp"

namespace qlab::cli {

struct ResultRecord {
    std::string metric;
    double value = 0.0;
    double std_err = 0.0;
};

struct RunOutcome {
    bool pass = false;
    std::vector<ResultRecord> records;
    std::vector<std::string> detail;  // one line per sub-check
    // named raw CSV artifacts (filename -> content), deterministic
    std::vector<std::pair<std::string, std::string>> artifacts;
    double wall_seconds = 0.0;
};

// executes the named pipeline; throws on unknown experiment or bad params
RunOutcome run_experiment(const ExperimentConfig& cfg);

// runs, writes records.csv / detail.txt / artifacts / timings.csv under the
// output directory; exit code 0 iff every threshold passed
int run_and_write(const ExperimentConfig& cfg);

}  // namespace qlab::cli
