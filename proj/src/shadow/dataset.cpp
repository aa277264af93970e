#include "shadow/dataset.hpp"

#include <istream>
#include <json.hpp>
#include <ostream>
#include <stdexcept>

#include "qcore/statevector.hpp"

namespace qlab::shadow {

namespace {

// prepare the labeled state on one qubit of |0...0>
void prepare(qlab::Statevector& s, int q, StabLabel l) {
    using qlab::Gate;
    switch (l) {
        case StabLabel::Zero: return;
        case StabLabel::One: s.apply(Gate::x(q)); return;
        case StabLabel::Plus: s.apply(Gate::h(q)); return;
        case StabLabel::Minus:
            s.apply(Gate::x(q));
            s.apply(Gate::h(q));
            return;
        case StabLabel::YPlus:
            s.apply(Gate::h(q));
            s.apply(Gate::rz(q, 3.14159265358979323846 / 2));
            return;
        case StabLabel::YMinus:
            s.apply(Gate::h(q));
            s.apply(Gate::rz(q, -3.14159265358979323846 / 2));
            return;
    }
}

}  // namespace

MeasurementDataset collect_dataset(const qlab::Circuit& target, size_t n_records, qlab::Rng& rng) {
    if (n_records < 1) throw std::invalid_argument("collect_dataset: need at least one record");
    int n = target.num_qubits;
    MeasurementDataset ds;
    ds.num_qubits = n;
    ds.records.reserve(n_records);
    for (size_t rec = 0; rec < n_records; ++rec) {
        qlab::Rng stream = rng.stream(rec);
        MeasurementRecord r;
        r.inputs.resize(n);
        r.outputs.resize(n);
        qlab::Statevector s = qlab::Statevector::zero_state(n);
        for (int q = 0; q < n; ++q) {
            r.inputs[q] = static_cast<StabLabel>(stream.next_below(6));
            prepare(s, q, r.inputs[q]);
        }
        s.apply(target);
        for (int q = 0; q < n; ++q) {
            uint8_t basis = static_cast<uint8_t>(stream.next_below(3));
            qlab::Basis b = basis == 0 ? qlab::Basis::X : basis == 1 ? qlab::Basis::Y : qlab::Basis::Z;
            auto m = s.measure(q, b, stream);
            r.outputs[q] = {basis, static_cast<uint8_t>(m.bit)};
        }
        ds.records.push_back(std::move(r));
    }
    return ds;
}

int label_expectation(StabLabel label, uint8_t letter) {
    switch (letter) {
        case 1:  // X
            if (label == StabLabel::Plus) return 1;
            if (label == StabLabel::Minus) return -1;
            return 0;
        case 2:  // Y
            if (label == StabLabel::YPlus) return 1;
            if (label == StabLabel::YMinus) return -1;
            return 0;
        case 3:  // Z
            if (label == StabLabel::Zero) return 1;
            if (label == StabLabel::One) return -1;
            return 0;
        default:
            throw std::invalid_argument("label_expectation: letter must be X, Y or Z");
    }
}

int output_expectation(const std::pair<uint8_t, uint8_t>& out, uint8_t letter) {
    // letter 1=X matches basis 0, 2=Y matches 1, 3=Z matches 2
    if (out.first != letter - 1) return 0;
    return out.second ? -1 : 1;
}

const char* label_name(StabLabel l) {
    switch (l) {
        case StabLabel::Zero: return "0";
        case StabLabel::One: return "1";
        case StabLabel::Plus: return "+";
        case StabLabel::Minus: return "-";
        case StabLabel::YPlus: return "y+";
        case StabLabel::YMinus: return "y-";
    }
    return "?";
}

void write_dataset_jsonl(std::ostream& os, const MeasurementDataset& ds) {
    for (const auto& r : ds.records) {
        nlohmann::json j;
        auto ji = nlohmann::json::array();
        for (StabLabel l : r.inputs) ji.push_back(label_name(l));
        auto jo = nlohmann::json::array();
        for (const auto& [basis, bit] : r.outputs) jo.push_back({basis, bit});
        j["inputs"] = ji;
        j["outputs"] = jo;
        os << j.dump() << '\n';
    }
}

MeasurementDataset read_dataset_jsonl(std::istream& is) {
    MeasurementDataset ds;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        auto j = nlohmann::json::parse(line);
        MeasurementRecord r;
        for (const auto& ji : j.at("inputs")) {
            std::string name = ji.get<std::string>();
            StabLabel l;
            if (name == "0") l = StabLabel::Zero;
            else if (name == "1") l = StabLabel::One;
            else if (name == "+") l = StabLabel::Plus;
            else if (name == "-") l = StabLabel::Minus;
            else if (name == "y+") l = StabLabel::YPlus;
            else if (name == "y-") l = StabLabel::YMinus;
            else throw std::invalid_argument("bad input label");
            r.inputs.push_back(l);
        }
        for (const auto& jo : j.at("outputs"))
            r.outputs.push_back({jo[0].get<uint8_t>(), jo[1].get<uint8_t>()});
        ds.records.push_back(std::move(r));
        ds.num_qubits = static_cast<int>(ds.records.back().inputs.size());
    }
    return ds;
}

}  // namespace qlab::shadow
