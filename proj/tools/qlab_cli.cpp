// Command-line front end: experiment runner, corpus generation, and the
// staged dataset / fit / sew / verify workflow.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "expcli/corpus.hpp"
#include "expcli/runner.hpp"
#include "idqnn/learn.hpp"
#include "idqnn/sampling.hpp"
#include "qcore/heisenberg.hpp"
#include "shadow/pipeline.hpp"

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

const char* p_name(uint8_t p) { return p == 1 ? "X" : p == 2 ? "Y" : "Z"; }
uint8_t p_code(const std::string& s) {
    if (s == "X") return 1;
    if (s == "Y") return 2;
    if (s == "Z") return 3;
    throw std::invalid_argument("bad Pauli name " + s);
}

nlohmann::json obs_to_json(const std::map<qlab::shadow::ObsKey, qlab::PauliObservable>& obs) {
    auto arr = nlohmann::json::array();
    for (const auto& [key, o] : obs) {
        nlohmann::json jo;
        jo["qubit"] = key.qubit;
        jo["p"] = p_name(key.p);
        auto terms = nlohmann::json::array();
        for (const auto& [letters, c] : o.terms) {
            qlab::PauliString ps;
            ps.letters = letters;
            terms.push_back({{"q", ps.text()}, {"c", c}});
        }
        jo["terms"] = terms;
        arr.push_back(jo);
    }
    return arr;
}

std::map<qlab::shadow::ObsKey, qlab::PauliObservable> obs_from_json(const nlohmann::json& arr,
                                                                    int n) {
    std::map<qlab::shadow::ObsKey, qlab::PauliObservable> obs;
    for (const auto& jo : arr) {
        qlab::PauliObservable o(n);
        for (const auto& jt : jo.at("terms"))
            o.add(qlab::PauliString::from_text(jt.at("q").get<std::string>()).letters,
                  jt.at("c").get<double>());
        obs[{jo.at("qubit").get<int>(), p_code(jo.at("p").get<std::string>())}] = std::move(o);
    }
    return obs;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qlab: shallow-circuit learning laboratory"};
    app.require_subcommand(1);

    // ---- run
    std::string config_path, out_dir;
    uint64_t seed_override = 0;
    bool seed_given = false;
    int jobs = 0;
    auto* run = app.add_subcommand("run", "execute an experiment config");
    run->add_option("--config", config_path, "config JSON")->required();
    run->add_option("--seed", seed_override, "override the config seed")
        ->each([&](const std::string&) { seed_given = true; });
    run->add_option("--out", out_dir, "output root (overrides config / QLAB_OUT)");
    run->add_option("--jobs", jobs, "worker threads (0 = all)");

    // ---- corpus
    std::string corpus_dir = "corpus";
    uint64_t corpus_seed = 20250809;
    auto* corpus = app.add_subcommand("corpus", "write the fixed instance corpus");
    corpus->add_option("--seed", corpus_seed, "corpus seed");
    corpus->add_option("--out", corpus_dir, "corpus directory");

    // ---- idqnn-sample
    std::string model_path, x_bits, samples_out = "-";
    std::string sample_mode = "deep";
    size_t shots = 1000;
    uint64_t sample_seed = 1;
    auto* ismp = app.add_subcommand("idqnn-sample", "draw samples from a lattice model");
    ismp->add_option("--model", model_path, "model JSON")->required();
    ismp->add_option("--x", x_bits, "input bits (defaults to all zeros)");
    ismp->add_option("--shots", shots);
    ismp->add_option("--mode", sample_mode, "shallow | deep | clifford");
    ismp->add_option("--seed", sample_seed);
    ismp->add_option("--out", samples_out, "output JSON-lines ('-' = stdout)");

    // ---- idqnn-learn
    std::string data_path, learn_out = "-";
    auto* ilearn = app.add_subcommand("idqnn-learn", "per-site angle estimates from samples");
    ilearn->add_option("--model", model_path, "model JSON (for the graph)")->required();
    ilearn->add_option("--data", data_path, "samples JSON-lines")->required();
    ilearn->add_option("--out", learn_out, "CSV output ('-' = stdout)");

    // ---- shadow-collect
    std::string circuit_path, dataset_out = "dataset.jsonl";
    size_t records = 10000;
    uint64_t collect_seed = 1;
    auto* scol = app.add_subcommand("shadow-collect", "randomized measurement dataset");
    scol->add_option("--circuit", circuit_path, "target circuit JSON")->required();
    scol->add_option("--records", records);
    scol->add_option("--seed", collect_seed);
    scol->add_option("--out", dataset_out);

    // ---- shadow-fit
    std::string fit_mode = "known";
    int fit_k = 2;
    double fit_eps = 0.1, fit_delta = 0.1;
    std::string bundle_out = "bundle.json";
    auto* sfit = app.add_subcommand("shadow-fit", "estimate Heisenberg-evolved observables");
    sfit->add_option("--circuit", circuit_path, "target circuit JSON (architecture source)")
        ->required();
    sfit->add_option("--data", data_path, "dataset JSON-lines")->required();
    sfit->add_option("--mode", fit_mode, "known | unknown");
    sfit->add_option("--k", fit_k, "assumed max lightcone (unknown mode)");
    sfit->add_option("--eps", fit_eps);
    sfit->add_option("--delta", fit_delta);
    sfit->add_option("--out", bundle_out);

    // ---- shadow-sew
    std::string bundle_path, construction = "inversion";
    int sew_restarts = 10;
    uint64_t sew_seed = 1;
    auto* ssew = app.add_subcommand("shadow-sew", "build the 2n-qubit sewed model");
    ssew->add_option("--bundle", bundle_path, "bundle JSON from shadow-fit")->required();
    ssew->add_option("--construction", construction, "inversion | heisenberg");
    ssew->add_option("--restarts", sew_restarts);
    ssew->add_option("--seed", sew_seed);
    ssew->add_option("--out", bundle_out);

    // ---- shadow-verify
    auto* sver = app.add_subcommand("shadow-verify", "distances of a sewed bundle to a target");
    sver->add_option("--bundle", bundle_path, "bundle JSON from shadow-sew")->required();
    sver->add_option("--circuit", circuit_path, "target circuit JSON")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            auto cfg = qlab::cli::ExperimentConfig::from_file(config_path);
            if (seed_given) cfg.seed = seed_override;
            if (!out_dir.empty()) cfg.output_dir = out_dir;
            else if (const char* env = std::getenv("QLAB_OUT")) cfg.output_dir = env;
            if (jobs > 0) cfg.jobs = jobs;
            int code = qlab::cli::run_and_write(cfg);
            std::cout << cfg.experiment << (code == 0 ? ": PASS" : ": FAIL") << "\n";
            return code;
        }
        if (*corpus) {
            qlab::cli::corpus_generate(corpus_seed, corpus_dir);
            std::cout << "corpus written to " << corpus_dir << "\n";
            return 0;
        }
        if (*ismp) {
            auto model = qlab::idqnn::IdqnnModel::from_json(slurp(model_path));
            std::vector<uint8_t> x(model.num_sites(), 0);
            if (!x_bits.empty()) {
                if (static_cast<int>(x_bits.size()) != model.num_sites())
                    throw std::invalid_argument("--x length mismatch");
                for (size_t i = 0; i < x_bits.size(); ++i) x[i] = x_bits[i] == '1';
            }
            std::ostringstream os;
            qlab::Rng rng(sample_seed);
            for (size_t s = 0; s < shots; ++s) {
                qlab::Rng shot = rng.stream(s);
                qlab::idqnn::Sample smp;
                if (sample_mode == "shallow") smp = qlab::idqnn::sample_shallow(model, x, shot);
                else if (sample_mode == "deep") smp = qlab::idqnn::sample_deep(model, x, shot);
                else if (sample_mode == "clifford") smp = qlab::idqnn::sample_clifford(model, x, shot);
                else throw std::invalid_argument("bad --mode");
                std::string xs(x.size(), '0'), ys(smp.y.size(), '0');
                for (size_t i = 0; i < x.size(); ++i) xs[i] = x[i] ? '1' : '0';
                for (size_t i = 0; i < smp.y.size(); ++i) ys[i] = smp.y[i] ? '1' : '0';
                nlohmann::json j;
                j["x"] = xs;
                j["y"] = ys;
                os << j.dump() << "\n";
            }
            if (samples_out == "-") std::cout << os.str();
            else spit(samples_out, os.str());
            return 0;
        }
        if (*ilearn) {
            auto model = qlab::idqnn::IdqnnModel::from_json(slurp(model_path));
            std::ifstream in(data_path);
            auto ds = qlab::idqnn::read_samples_jsonl(in);
            auto est = qlab::idqnn::learn_beta(ds, model.graph);
            std::ostringstream os;
            os << "site,beta_hat,count,learned\n";
            for (size_t s = 0; s < est.size(); ++s)
                os << s << ',' << est[s].beta_hat << ',' << est[s].count << ','
                   << (est[s].learned ? 1 : 0) << '\n';
            if (learn_out == "-") std::cout << os.str();
            else spit(learn_out, os.str());
            return 0;
        }
        if (*scol) {
            auto target = qlab::Circuit::from_json(slurp(circuit_path));
            qlab::Rng rng(collect_seed);
            auto ds = qlab::shadow::collect_dataset(target, records, rng);
            std::ofstream out(dataset_out);
            qlab::shadow::write_dataset_jsonl(out, ds);
            std::cout << "wrote " << ds.records.size() << " records\n";
            return 0;
        }
        if (*sfit) {
            auto target = qlab::Circuit::from_json(slurp(circuit_path));
            std::ifstream in(data_path);
            auto ds = qlab::shadow::read_dataset_jsonl(in);
            std::map<qlab::shadow::ObsKey, qlab::PauliObservable> obs;
            if (fit_mode == "known") {
                std::vector<std::vector<int>> cones(target.num_qubits);
                for (int i = 0; i < target.num_qubits; ++i) {
                    auto c = qlab::backward_lightcone(target, {i});
                    cones[i].assign(c.begin(), c.end());
                }
                obs = qlab::shadow::fit_alpha_least_squares(ds, cones, 0).alpha;
            } else {
                obs = qlab::shadow::learn_observables(ds, fit_k, fit_eps, fit_delta).obs;
            }
            nlohmann::json j;
            j["n"] = ds.num_qubits;
            j["mode"] = fit_mode;
            j["coefficients"] = obs_to_json(obs);
            spit(bundle_out, j.dump(2));
            std::cout << "bundle written to " << bundle_out << "\n";
            return 0;
        }
        if (*ssew) {
            auto j = nlohmann::json::parse(slurp(bundle_path));
            int n = j.at("n").get<int>();
            auto obs = obs_from_json(j.at("coefficients"), n);
            j["construction"] = construction;
            if (construction == "heisenberg") {
                std::vector<double> eps(n, 0.0);
                auto sew = qlab::shadow::direct_heisenberg_sew(obs, n, eps);
                j["eps"] = sew.eps;
            } else {
                qlab::Rng rng(sew_seed);
                auto inversions = nlohmann::json::array();
                std::vector<double> eps;
                for (int i = 0; i < n; ++i) {
                    std::set<int> w = {i};
                    for (uint8_t p = 1; p <= 3; ++p)
                        for (int q : obs.at({i, p}).support()) w.insert(q);
                    qlab::shadow::InversionConfig icfg;
                    icfg.restarts = sew_restarts;
                    qlab::Rng irng = rng.stream(i);
                    auto inv = qlab::shadow::train_local_inversion(
                        obs.at({i, 1}), obs.at({i, 2}), obs.at({i, 3}), i,
                        std::vector<int>(w.begin(), w.end()), icfg, irng);
                    nlohmann::json ji;
                    ji["target"] = inv.target_qubit;
                    ji["window"] = inv.window;
                    ji["params"] = inv.params;
                    ji["epsilon"] = inv.epsilon;
                    ji["circuit"] = nlohmann::json::parse(inv.ansatz.to_json());
                    inversions.push_back(ji);
                    eps.push_back(inv.epsilon);
                }
                j["inversions"] = inversions;
                j["eps"] = eps;
            }
            spit(bundle_out, j.dump(2));
            std::cout << "sewed bundle written to " << bundle_out << "\n";
            return 0;
        }
        if (*sver) {
            auto j = nlohmann::json::parse(slurp(bundle_path));
            auto target = qlab::Circuit::from_json(slurp(circuit_path));
            int n = j.at("n").get<int>();
            auto obs = obs_from_json(j.at("coefficients"), n);
            std::string cons = j.value("construction", std::string("heisenberg"));
            qlab::Mat u = target.to_matrix();
            if (cons == "heisenberg") {
                std::vector<double> eps = j.value("eps", std::vector<double>(n, 0.0));
                auto sew = qlab::shadow::direct_heisenberg_sew(obs, n, eps);
                double d = qlab::shadow::sew_distance_heisenberg(sew, u);
                std::cout << "spectral distance to U^dag x U: " << d << "\n";
                std::cout << "diamond surrogate: " << 2 * d << "\n";
            } else {
                std::vector<qlab::shadow::LocalInversion> invs;
                for (const auto& ji : j.at("inversions")) {
                    qlab::shadow::LocalInversion inv;
                    inv.target_qubit = ji.at("target").get<int>();
                    inv.window = ji.at("window").get<std::vector<int>>();
                    inv.params = ji.at("params").get<std::vector<double>>();
                    inv.epsilon = ji.at("epsilon").get<double>();
                    inv.ansatz = qlab::Circuit::from_json(ji.at("circuit").dump());
                    inv.matrix = inv.ansatz.to_matrix();
                    invs.push_back(std::move(inv));
                }
                auto sew = qlab::shadow::sew_local_inversions(invs, n);
                double d = qlab::shadow::sew_distance_inversion(sew, u);
                double bound = 0;
                for (double e : sew.eps) bound += 0.5 * e;
                std::cout << "spectral distance to U x U^dag: " << d << "\n";
                std::cout << "half-sum epsilon bound: " << bound << "\n";
                std::cout << "diamond surrogate: " << 2 * d << "\n";
            }
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
