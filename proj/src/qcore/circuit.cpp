#include "qcore/circuit.hpp"

#include <json.hpp>
#include <stdexcept>
#include <unordered_map>

namespace qlab {

void check_targets(const Gate& g, int num_qubits) {
    if (g.targets.empty() || g.targets.size() > 2)
        throw std::invalid_argument("gate arity must be 1 or 2");
    for (int q : g.targets)
        if (q < 0 || q >= num_qubits) throw std::out_of_range("gate target out of range");
    if (g.targets.size() == 2 && g.targets[0] == g.targets[1])
        throw std::invalid_argument("two-qubit gate with repeated target");
}

void Circuit::append(const Gate& g) {
    check_targets(g, num_qubits);
    if (!moments.empty()) {
        bool clash = false;
        for (const Gate& h : moments.back())
            for (int a : h.targets)
                for (int b : g.targets)
                    if (a == b) clash = true;
        if (!clash) {
            moments.back().push_back(g);
            return;
        }
    }
    moments.push_back({g});
}

void Circuit::append_moment(const std::vector<Gate>& gates) {
    for (const Gate& g : gates) check_targets(g, num_qubits);
    for (size_t i = 0; i < gates.size(); ++i)
        for (size_t j = i + 1; j < gates.size(); ++j)
            for (int a : gates[i].targets)
                for (int b : gates[j].targets)
                    if (a == b) throw std::invalid_argument("moment with overlapping targets");
    moments.push_back(gates);
}

void Circuit::extend(const Circuit& other) {
    if (other.num_qubits != num_qubits) throw std::invalid_argument("extend: qubit count mismatch");
    for (const auto& m : other.moments) moments.push_back(m);
}

size_t Circuit::gate_count() const {
    size_t n = 0;
    for (const auto& m : moments) n += m.size();
    return n;
}

Circuit Circuit::inverse() const {
    Circuit inv(num_qubits);
    for (auto it = moments.rbegin(); it != moments.rend(); ++it) {
        std::vector<Gate> m;
        for (const Gate& g : *it) m.push_back(g.inverse());
        inv.moments.push_back(std::move(m));
    }
    return inv;
}

namespace {

void apply_gate_to_matrix(Mat& m, const Gate& g, const std::vector<int>& pos_of) {
    Mat u = g.matrix();
    size_t dim = m.rows();
    if (g.arity() == 1) {
        size_t mask = size_t{1} << pos_of[g.targets[0]];
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            for (size_t i = 0; i < dim; ++i) {
                if (i & mask) continue;
                cx a = m(i, c), b = m(i | mask, c);
                m(i, c) = u(0, 0) * a + u(0, 1) * b;
                m(i | mask, c) = u(1, 0) * a + u(1, 1) * b;
            }
    } else {
        size_t m0 = size_t{1} << pos_of[g.targets[0]];
        size_t m1 = size_t{1} << pos_of[g.targets[1]];
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            for (size_t i = 0; i < dim; ++i) {
                if ((i & m0) || (i & m1)) continue;
                cx a00 = m(i, c), a01 = m(i | m0, c), a10 = m(i | m1, c), a11 = m(i | m0 | m1, c);
                m(i, c) = u(0, 0) * a00 + u(0, 1) * a01 + u(0, 2) * a10 + u(0, 3) * a11;
                m(i | m0, c) = u(1, 0) * a00 + u(1, 1) * a01 + u(1, 2) * a10 + u(1, 3) * a11;
                m(i | m1, c) = u(2, 0) * a00 + u(2, 1) * a01 + u(2, 2) * a10 + u(2, 3) * a11;
                m(i | m0 | m1, c) =
                    u(3, 0) * a00 + u(3, 1) * a01 + u(3, 2) * a10 + u(3, 3) * a11;
            }
    }
}

}  // namespace

Mat Circuit::to_matrix() const {
    std::vector<int> window(num_qubits);
    for (int q = 0; q < num_qubits; ++q) window[q] = q;
    return to_matrix_on_window(window);
}

Mat Circuit::to_matrix_on_window(const std::vector<int>& window) const {
    std::vector<int> pos_of(num_qubits, -1);
    for (size_t i = 0; i < window.size(); ++i) pos_of[window[i]] = static_cast<int>(i);
    size_t dim = size_t{1} << window.size();
    Mat m = Mat::Identity(dim, dim);
    for (const auto& moment : moments)
        for (const Gate& g : moment) {
            for (int q : g.targets)
                if (pos_of[q] < 0) throw std::invalid_argument("gate outside window");
            apply_gate_to_matrix(m, g, pos_of);
        }
    return m;
}

Circuit Circuit::restricted_to(const std::vector<int>& window) const {
    std::vector<bool> in(num_qubits, false);
    for (int q : window) in[q] = true;
    Circuit out(num_qubits);
    for (const auto& moment : moments) {
        std::vector<Gate> keep;
        for (const Gate& g : moment) {
            bool all = true;
            for (int q : g.targets)
                if (!in[q]) all = false;
            if (all) keep.push_back(g);
        }
        if (!keep.empty()) out.moments.push_back(std::move(keep));
    }
    return out;
}

std::string Circuit::to_json() const {
    nlohmann::json root;
    root["num_qubits"] = num_qubits;
    auto jm = nlohmann::json::array();
    for (const auto& moment : moments) {
        auto jmm = nlohmann::json::array();
        for (const Gate& g : moment) {
            nlohmann::json jg;
            jg["kind"] = g.kind_name();
            jg["targets"] = g.targets;
            jg["params"] = g.params;
            if (g.kind == GateKind::Dense) {
                auto rows = nlohmann::json::array();
                for (Eigen::Index i = 0; i < g.dense.rows(); ++i) {
                    auto row = nlohmann::json::array();
                    for (Eigen::Index j = 0; j < g.dense.cols(); ++j)
                        row.push_back({g.dense(i, j).real(), g.dense(i, j).imag()});
                    rows.push_back(row);
                }
                jg["matrix"] = rows;
            }
            jmm.push_back(jg);
        }
        jm.push_back(jmm);
    }
    root["moments"] = jm;
    return root.dump();
}

Circuit Circuit::from_json(const std::string& text) {
    auto root = nlohmann::json::parse(text);
    Circuit c(root.at("num_qubits").get<int>());
    static const std::unordered_map<std::string, GateKind> kinds = {
        {"H", GateKind::H},   {"X", GateKind::X},       {"Y", GateKind::Y},
        {"Z", GateKind::Z},   {"RZ", GateKind::RZ},     {"RX", GateKind::RX},
        {"RY", GateKind::RY}, {"CZ", GateKind::CZ},     {"SwapPow", GateKind::SwapPow},
        {"PhasedXZ", GateKind::PhasedXZ}, {"Dense", GateKind::Dense}};
    for (const auto& jmm : root.at("moments")) {
        std::vector<Gate> moment;
        for (const auto& jg : jmm) {
            Gate g;
            g.kind = kinds.at(jg.at("kind").get<std::string>());
            g.targets = jg.at("targets").get<std::vector<int>>();
            g.params = jg.at("params").get<std::vector<double>>();
            if (g.kind == GateKind::Dense) {
                const auto& rows = jg.at("matrix");
                size_t dim = rows.size();
                Mat m(dim, dim);
                for (size_t i = 0; i < dim; ++i)
                    for (size_t j = 0; j < dim; ++j)
                        m(i, j) = cx(rows[i][j][0].get<double>(), rows[i][j][1].get<double>());
                g = Gate::make_dense(g.targets, m);
            }
            moment.push_back(g);
        }
        c.append_moment(moment);
    }
    return c;
}

}  // namespace qlab
