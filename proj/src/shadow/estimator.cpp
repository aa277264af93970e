#include "shadow/estimator.hpp"

#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace qlab::shadow {

namespace {

struct CompiledRecord {
    std::vector<uint8_t> in_axis;  // 1=X,2=Y,3=Z axis of the input label
    std::vector<int8_t> in_sign;
    std::vector<uint8_t> out_basis;  // 0=X,1=Y,2=Z
    std::vector<int8_t> out_sign;
};

std::vector<CompiledRecord> compile(const MeasurementDataset& ds) {
    std::vector<CompiledRecord> out;
    out.reserve(ds.records.size());
    for (const auto& r : ds.records) {
        CompiledRecord c;
        int n = static_cast<int>(r.inputs.size());
        c.in_axis.resize(n);
        c.in_sign.resize(n);
        c.out_basis.resize(n);
        c.out_sign.resize(n);
        for (int q = 0; q < n; ++q) {
            switch (r.inputs[q]) {
                case StabLabel::Zero: c.in_axis[q] = 3; c.in_sign[q] = 1; break;
                case StabLabel::One: c.in_axis[q] = 3; c.in_sign[q] = -1; break;
                case StabLabel::Plus: c.in_axis[q] = 1; c.in_sign[q] = 1; break;
                case StabLabel::Minus: c.in_axis[q] = 1; c.in_sign[q] = -1; break;
                case StabLabel::YPlus: c.in_axis[q] = 2; c.in_sign[q] = 1; break;
                case StabLabel::YMinus: c.in_axis[q] = 2; c.in_sign[q] = -1; break;
            }
            c.out_basis[q] = r.outputs[q].first;
            c.out_sign[q] = r.outputs[q].second ? -1 : 1;
        }
        out.push_back(std::move(c));
    }
    return out;
}

// all subsets of `window` with size <= k, each as a sorted qubit list
std::vector<std::vector<int>> supports_up_to(const std::vector<int>& window, int k) {
    std::vector<std::vector<int>> out;
    int w = static_cast<int>(window.size());
    for (uint32_t mask = 0; mask < (uint32_t{1} << w); ++mask) {
        if (std::popcount(mask) > k) continue;
        std::vector<int> s;
        for (int b = 0; b < w; ++b)
            if ((mask >> b) & 1) s.push_back(window[b]);
        out.push_back(std::move(s));
    }
    return out;
}

double pow3(int e) {
    double v = 1;
    for (int i = 0; i < e; ++i) v *= 3.0;
    return v;
}

// letters vector encoded base-4 for hashing
uint64_t encode_letters(const std::vector<uint8_t>& letters) {
    uint64_t code = 0;
    for (size_t q = 0; q < letters.size(); ++q) code |= uint64_t{letters[q]} << (2 * q);
    return code;
}

}  // namespace

double shadow_alpha(const MeasurementDataset& ds, int qubit, uint8_t p_letter,
                    const qlab::PauliString& q) {
    if (ds.records.empty()) throw std::invalid_argument("shadow_alpha: empty dataset");
    auto supp = q.support();
    double scale = pow3(q.weight());
    double acc = 0;
    for (const auto& r : ds.records) {
        int oe = output_expectation(r.outputs[qubit], p_letter);
        if (oe == 0) continue;
        int ie = 1;
        for (int j : supp) {
            int e = label_expectation(r.inputs[j], q.letters[j]);
            if (e == 0) {
                ie = 0;
                break;
            }
            ie *= e;
        }
        acc += 3.0 * oe * ie;
    }
    return scale * acc / static_cast<double>(ds.records.size());
}

LearnedObservables learn_observables(const MeasurementDataset& ds, int k, double eps, double delta,
                                     const std::vector<std::vector<int>>* windows) {
    int n = ds.num_qubits;
    if (!windows && (n > 12 || k > 3))
        throw std::invalid_argument("learn_observables: unrestricted enumeration capped at n<=12, k<=3");
    if (ds.records.empty()) throw std::invalid_argument("learn_observables: empty dataset");

    LearnedObservables result;
    result.recommended_records = static_cast<size_t>(
        std::ceil(std::pow(8.0, k) * std::log(3.0 * n / delta) / (eps * eps)));
    result.dataset_below_bound = ds.records.size() < result.recommended_records;

    auto recs = compile(ds);
    size_t big_n = recs.size();
    double thr = 0.5 * eps / std::pow(2.0 * std::sqrt(2.0), k);

    std::vector<int> all(n);
    for (int q = 0; q < n; ++q) all[q] = q;

    for (int i = 0; i < n; ++i) {
        const std::vector<int>& window = windows ? (*windows)[i] : all;
        auto supports = supports_up_to(window, k);
        // one accumulator per P letter: Q code -> sum of 3^{|Q|+1} * signs
        std::unordered_map<uint64_t, double> acc[3];
        for (const auto& r : recs) {
            int basis = r.out_basis[i];  // contributes to P = basis+1 only
            double base = 3.0 * r.out_sign[i];
            for (const auto& s : supports) {
                double v = base * pow3(static_cast<int>(s.size()));
                std::vector<uint8_t> letters(n, 0);
                uint64_t code = 0;
                for (int j : s) {
                    v *= r.in_sign[j];
                    code |= uint64_t{r.in_axis[j]} << (2 * j);
                }
                acc[basis][code] += v;
            }
        }
        for (uint8_t p = 1; p <= 3; ++p) {
            qlab::PauliObservable obs(n);
            const auto& a = acc[p - 1];
            // every candidate Q appears (possibly with zero hits); walk all of them
            for (const auto& s : supports) {
                // candidate letters over the support: all 3^{|s|} combinations
                size_t combos = 1;
                for (size_t t = 0; t < s.size(); ++t) combos *= 3;
                for (size_t c = 0; c < combos; ++c) {
                    size_t cc = c;
                    uint64_t code = 0;
                    std::vector<uint8_t> letters(n, 0);
                    for (int j : s) {
                        uint8_t l = static_cast<uint8_t>(1 + cc % 3);
                        cc /= 3;
                        letters[j] = l;
                        code |= uint64_t{l} << (2 * j);
                    }
                    auto it = a.find(code);
                    double est = it == a.end() ? 0.0 : it->second / static_cast<double>(big_n);
                    if (std::abs(std::abs(est) - thr) <= 0.1 * thr) {
                        std::ostringstream msg;
                        msg << "qubit " << i << " P=" << int(p) << " Q=" << code
                            << " estimate " << est << " within 10% of threshold " << thr;
                        result.near_threshold.push_back(msg.str());
                    }
                    if (std::abs(est) >= thr) obs.add(letters, est);
                }
            }
            result.obs[{i, p}] = std::move(obs);
        }
    }
    return result;
}

AlphaLoss build_alpha_loss(const MeasurementDataset& ds,
                           const std::vector<std::vector<int>>& lightcones) {
    if (lightcones.empty()) throw std::invalid_argument("fit: empty lightcone map");
    int n = ds.num_qubits;
    auto recs = compile(ds);
    size_t big_n = recs.size();

    AlphaLoss loss;
    // coordinate layout: for each qubit i, P in {X,Y,Z}, all 4^{|C_i|} codes
    size_t dim = 0;
    std::vector<size_t> base(n);
    for (int i = 0; i < n; ++i) {
        base[i] = dim;
        dim += 3 * (size_t{1} << (2 * lightcones[i].size()));
    }
    loss.dbar.assign(dim, 0.0);

    double mean_sq = 0;
    for (const auto& r : recs) {
        for (int i = 0; i < n; ++i) {
            const auto& window = lightcones[i];
            int w = static_cast<int>(window.size());
            size_t codes = size_t{1} << (2 * w);
            int basis = r.out_basis[i];
            double basev = 3.0 * r.out_sign[i];
            // nonzero entries: Q_j = in_axis[j] on each support subset of the window
            for (uint32_t mask = 0; mask < (uint32_t{1} << w); ++mask) {
                double v = basev;
                size_t local = 0;
                int wt = 0;
                for (int b = 0; b < w; ++b)
                    if ((mask >> b) & 1) {
                        int j = window[b];
                        v *= 3.0 * r.in_sign[j];
                        local |= size_t{r.in_axis[j]} << (2 * b);
                        ++wt;
                    }
                loss.dbar[base[i] + basis * codes + local] += v;
                mean_sq += v * v;
            }
        }
    }
    for (double& v : loss.dbar) v /= static_cast<double>(big_n);
    loss.mean_square = mean_sq / static_cast<double>(big_n);
    return loss;
}

double AlphaLoss::value(const std::vector<double>& a) const {
    double s = mean_square;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * a[i] - 2.0 * a[i] * dbar[i];
    return s;
}

std::vector<double> AlphaLoss::gradient(const std::vector<double>& a) const {
    std::vector<double> g(a.size());
    for (size_t i = 0; i < a.size(); ++i) g[i] = 2.0 * (a[i] - dbar[i]);
    return g;
}

AlphaFit fit_alpha_least_squares(const MeasurementDataset& ds,
                                 const std::vector<std::vector<int>>& lightcones,
                                 int gd_iterations, double gd_lr, qlab::Rng* gd_rng) {
    int n = ds.num_qubits;
    AlphaLoss loss = build_alpha_loss(ds, lightcones);

    AlphaFit fit;
    fit.dim = loss.dbar.size();
    fit.mean_square = loss.mean_square;

    // unpack the closed-form minimizer (the mean) into observables
    size_t off = 0;
    for (int i = 0; i < n; ++i) {
        const auto& window = lightcones[i];
        int w = static_cast<int>(window.size());
        size_t codes = size_t{1} << (2 * w);
        for (uint8_t p = 1; p <= 3; ++p) {
            qlab::PauliObservable obs(n);
            for (size_t local = 0; local < codes; ++local) {
                double c = loss.dbar[off];
                ++off;
                if (std::abs(c) < 1e-15) continue;
                std::vector<uint8_t> letters(n, 0);
                bool valid = true;
                for (int b = 0; b < w; ++b) {
                    uint8_t l = (local >> (2 * b)) & 3;
                    letters[window[b]] = l;
                }
                if (valid) obs.add(letters, c);
            }
            fit.alpha[{i, p}] = std::move(obs);
        }
    }

    // gradient descent on the strongly convex quadratic, tracking the
    // distance to the closed form (linear convergence at rate |1 - 2 lr|)
    std::vector<double> a(fit.dim, 0.0);
    if (gd_rng)
        for (double& v : a) v = gd_rng->uniform(-1.0, 1.0);
    for (int it = 0; it < gd_iterations; ++it) {
        double dist = 0;
        for (size_t i = 0; i < a.size(); ++i) dist = std::max(dist, std::abs(a[i] - loss.dbar[i]));
        fit.gd_trace.push_back(dist);
        auto g = loss.gradient(a);
        for (size_t i = 0; i < a.size(); ++i) a[i] -= gd_lr * g[i];
    }
    return fit;
}

}  // namespace qlab::shadow
