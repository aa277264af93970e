#pragma once

#include <iosfwd>

#include "qcore/circuit.hpp"
#include "qcore/rng.hpp"

namespace qlab::shadow {

// single-qubit stabilizer input labels
enum class StabLabel : uint8_t { Zero, One, Plus, Minus, YPlus, YMinus };

struct MeasurementRecord {
    std::vector<StabLabel> inputs;            // per qubit
    std::vector<std::pair<uint8_t, uint8_t>> outputs;  // per qubit: (basis 0=X,1=Y,2=Z, bit)
};

struct MeasurementDataset {
    int num_qubits = 0;
    std::vector<MeasurementRecord> records;
};

// One record: uniform stabilizer product input, apply the target, measure
// every qubit in an independent uniform Pauli basis and record the collapsed
// labels. The target circuit is used as a sampling oracle only.
MeasurementDataset collect_dataset(const qlab::Circuit& target, size_t n_records, qlab::Rng& rng);

// <label| P |label> for P in {X,Y,Z}: +/-1 on the matching axis, else 0.
int label_expectation(StabLabel label, uint8_t pauli_letter);  // letter 1=X,2=Y,3=Z

// eigenvalue of the recorded output: +/-1 if the measured basis matches, else 0
int output_expectation(const std::pair<uint8_t, uint8_t>& out, uint8_t pauli_letter);

// JSON-lines: {"inputs":[...labels...],"outputs":[[basis,bit],...]}
void write_dataset_jsonl(std::ostream& os, const MeasurementDataset& ds);
MeasurementDataset read_dataset_jsonl(std::istream& is);

const char* label_name(StabLabel l);

}  // namespace qlab::shadow
