#pragma once

#include "qcore/heisenberg.hpp"
#include "shadow/sewing.hpp"

namespace qlab::shadow {

struct PipelineConfig {
    enum class Mode { KnownArchitecture, UnknownArchitecture };
    enum class Construction { LocalInversion, DirectHeisenberg };

    Mode mode = Mode::KnownArchitecture;
    Construction construction = Construction::LocalInversion;
    std::vector<std::vector<int>> lightcones;  // known-architecture mode
    int k = 2;                                 // unknown mode: assumed max lightcone
    double eps = 0.1;
    double delta = 0.1;
    InversionConfig inversion;
};

struct PipelineReport {
    std::vector<double> eps_per_qubit;
    double spectral_distance = -1.0;   // vs the construction's target product (n <= 6)
    double diamond_surrogate = -1.0;   // 2 * spectral_distance
    bool dataset_below_bound = false;
    std::vector<std::string> notes;
};

struct PipelineResult {
    SewedCircuit sewed;
    PipelineReport report;
};

// End to end: collect -> fit coefficients -> per-qubit inversion (or direct
// projection) -> sew -> verify against the target on small instances.
PipelineResult learn_shallow_circuit(const qlab::Circuit& target, size_t n_records,
                                     const PipelineConfig& config, qlab::Rng& rng);

// same pipeline on an already-collected dataset (target only used to verify)
PipelineResult learn_from_dataset(const MeasurementDataset& ds, const qlab::Circuit& target,
                                  const PipelineConfig& config, qlab::Rng& rng);

}  // namespace qlab::shadow
