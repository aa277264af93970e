#pragma once

#include <string>

#include "idqnn/model.hpp"
#include "qcore/circuit.hpp"
#include "qcore/rng.hpp"

namespace qlab::cli {

// shared seeded instance builders (tests and pipelines draw from the same
// families the corpus ships)

// alternating even/odd layers of Haar-random two-qubit gates
qlab::Circuit random_brickwork(int n, int depth, qlab::Rng rng);

// lattice with the given within-slice edge density (1.0 = full grid) and
// uniform site angles in [0, pi)
qlab::idqnn::IdqnnModel random_model(const std::vector<int>& dims, double density, qlab::Rng rng);

uint64_t fnv1a(const std::string& text);

// Writes the fixed instance corpus (circuits, models, golden serializations)
// under `dir` and a manifest.json mapping each file to its content hash.
// Returns the manifest as text.
std::string corpus_generate(uint64_t seed, const std::string& dir);

}  // namespace qlab::cli
