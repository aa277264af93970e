#include "shadow/pipeline.hpp"

#include <stdexcept>

namespace qlab::shadow {

PipelineResult learn_from_dataset(const MeasurementDataset& ds, const qlab::Circuit& target,
                                  const PipelineConfig& config, qlab::Rng& rng) {
    int n = ds.num_qubits;
    PipelineResult result;

    std::map<ObsKey, qlab::PauliObservable> obs;
    std::vector<std::vector<int>> windows(n);
    if (config.mode == PipelineConfig::Mode::KnownArchitecture) {
        if (static_cast<int>(config.lightcones.size()) != n)
            throw std::invalid_argument("pipeline: one lightcone per qubit required");
        windows = config.lightcones;
        AlphaFit fit = fit_alpha_least_squares(ds, windows, 0);
        obs = std::move(fit.alpha);
    } else {
        LearnedObservables learned = learn_observables(ds, config.k, config.eps, config.delta);
        result.report.dataset_below_bound = learned.dataset_below_bound;
        for (const auto& note : learned.near_threshold) result.report.notes.push_back(note);
        obs = std::move(learned.obs);
        for (int i = 0; i < n; ++i) {
            std::set<int> w;
            w.insert(i);
            for (uint8_t p = 1; p <= 3; ++p)
                for (int q : obs.at({i, p}).support()) w.insert(q);
            windows[i].assign(w.begin(), w.end());
        }
    }

    if (config.construction == PipelineConfig::Construction::DirectHeisenberg) {
        std::vector<double> eps(n, 0.0);
        result.sewed = direct_heisenberg_sew(obs, n, eps);
        result.report.eps_per_qubit = eps;
    } else {
        std::vector<LocalInversion> inversions;
        for (int i = 0; i < n; ++i) {
            qlab::Rng stream = rng.stream(1000 + i);
            LocalInversion inv =
                train_local_inversion(obs.at({i, 1}), obs.at({i, 2}), obs.at({i, 3}), i,
                                      windows[i], config.inversion, stream);
            result.report.eps_per_qubit.push_back(inv.epsilon);
            inversions.push_back(std::move(inv));
        }
        result.sewed = sew_local_inversions(inversions, n);
    }

    if (n <= 6) {
        qlab::Mat u = target.to_matrix();
        result.report.spectral_distance =
            config.construction == PipelineConfig::Construction::DirectHeisenberg
                ? sew_distance_heisenberg(result.sewed, u)
                : sew_distance_inversion(result.sewed, u);
        result.report.diamond_surrogate = 2.0 * result.report.spectral_distance;
    }
    return result;
}

PipelineResult learn_shallow_circuit(const qlab::Circuit& target, size_t n_records,
                                     const PipelineConfig& config, qlab::Rng& rng) {
    qlab::Rng collect_stream = rng.stream(1);
    MeasurementDataset ds = collect_dataset(target, n_records, collect_stream);
    return learn_from_dataset(ds, target, config, rng);
}

}  // namespace qlab::shadow
