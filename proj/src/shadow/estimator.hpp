#pragma once

#include <map>
#include <string>

#include "qcore/pauli.hpp"
#include "shadow/dataset.hpp"

namespace qlab::shadow {

// key for the learned Heisenberg-evolved observables: (output qubit, P letter)
struct ObsKey {
    int qubit;
    uint8_t p;  // 1=X, 2=Y, 3=Z
    bool operator<(const ObsKey& o) const { return qubit != o.qubit ? qubit < o.qubit : p < o.p; }
};

// Unbiased estimate of the coefficient of Q in U^dag P_i U:
//   alpha_hat = (3^{|Q|} / N) * sum_l 3 <phi_{l,i}|P|phi_{l,i}> <psi_l|Q|psi_l>
double shadow_alpha(const MeasurementDataset& ds, int qubit, uint8_t p_letter,
                    const qlab::PauliString& q);

struct LearnedObservables {
    std::map<ObsKey, qlab::PauliObservable> obs;
    size_t recommended_records = 0;   // the 2^O(k) log(n/delta)/eps^2 bound
    bool dataset_below_bound = false;
    // coefficients that landed within 10% of the threshold (fragile zeroing)
    std::vector<std::string> near_threshold;
};

// Estimate every candidate coefficient, zero those below
// 0.5*eps/(2*sqrt(2))^k, return the thresholded observables.
// With `windows` supplied (geometry hint), candidates are the strings of
// weight <= k supported on windows[i]; otherwise all weight-<= k strings are
// enumerated (capped at n <= 12, k <= 3).
LearnedObservables learn_observables(const MeasurementDataset& ds, int k, double eps, double delta,
                                     const std::vector<std::vector<int>>* windows = nullptr);

// Least-squares fit over a known lightcone structure. The loss is a sum of
// squared distances to per-record data vectors, so the minimizer is the
// coordinate-wise mean and the Hessian is exactly 2*identity.
struct AlphaFit {
    std::map<ObsKey, qlab::PauliObservable> alpha;  // closed-form minimizer
    size_t dim = 0;                                  // coordinate count
    double mean_square = 0.0;                        // (1/N) sum_l ||d_l||^2
    std::vector<double> gd_trace;                    // distance to minimizer per iterate
};

AlphaFit fit_alpha_least_squares(const MeasurementDataset& ds,
                                 const std::vector<std::vector<int>>& lightcones,
                                 int gd_iterations = 50, double gd_lr = 0.3,
                                 qlab::Rng* gd_rng = nullptr);

// loss machinery exposed for landscape checks
struct AlphaLoss {
    std::vector<double> dbar;   // flattened coordinate-wise mean
    double mean_square = 0.0;
    double value(const std::vector<double>& a) const;
    std::vector<double> gradient(const std::vector<double>& a) const;
};
AlphaLoss build_alpha_loss(const MeasurementDataset& ds,
                           const std::vector<std::vector<int>>& lightcones);

}  // namespace qlab::shadow
