#include "oqs/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "oqs/labels.hpp"
#include "oqs/ptm.hpp"
#include "oqs/state.hpp"

namespace oqs {

int TestSet::n_qubits() const {
    if (records.empty()) throw std::invalid_argument("empty test set");
    const int n = records.front().n_qubits();
    for (const auto& r : records)
        if (r.n_qubits() != n)
            throw std::invalid_argument("test set mixes record dimensions");
    return n;
}

TestSet TestSet::from_dataset(const Dataset& dataset, const std::vector<int>& indices) {
    TestSet tests;
    tests.records.reserve(indices.size());
    for (int i : indices) {
        if (i < 0 || i >= static_cast<int>(dataset.records.size()))
            throw std::out_of_range("record index out of range");
        tests.records.push_back(dataset.records[static_cast<std::size_t>(i)]);
    }
    tests.n_qubits();  // validates
    return tests;
}

RealVector empirical_probabilities(const ExperimentRecord& record) {
    if (record.shots < 1) throw std::invalid_argument("record carries no shots");
    const int n = record.n_qubits();
    RealVector p = RealVector::Zero(Eigen::Index{1} << n);
    for (const auto& [bits, c] : record.counts)
        p(bitstring_index(bits)) += static_cast<double>(c);
    return p / static_cast<double>(record.shots);
}

namespace {

/// Per-record squared component error sums, grouped by evolution time so one
/// propagator serves every record at that time. Canonical (time, id) order
/// makes the accumulation independent of input permutation.
std::vector<double> squared_residuals(const PrimitiveSet& set, const Model& model,
                                      const TestSet& tests) {
    const int n = tests.n_qubits();
    if (set.n_qubits() != n)
        throw std::invalid_argument("model and test set dimensions differ");
    const auto n_records = tests.records.size();

    std::vector<std::size_t> order(n_records);
    for (std::size_t i = 0; i < n_records; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const auto& ra = tests.records[a];
        const auto& rb = tests.records[b];
        if (ra.time != rb.time) return ra.time < rb.time;
        return ra.id < rb.id;
    });

    ptm::Engine engine = model_engine(set, model.chromosome);
    RealMatrix l;
    engine.assemble(model.rates.data(), l);

    std::vector<double> sq(n_records, 0.0);
    RealMatrix prop;
    double current_time = -1.0;
    bool have_prop = false;
    for (std::size_t i : order) {
        const ExperimentRecord& rec = tests.records[i];
        if (!have_prop || rec.time != current_time) {
            engine.compute_propagator(l, rec.time, prop);
            current_time = rec.time;
            have_prop = true;
        }
        const DensityMatrix rho0 = DensityMatrix::pure(rec.state);
        const RealVector r0 = ptm::state_coeffs(rho0.matrix(), n);
        const RealMatrix meas = ptm::measurement_rows(rec.unitary, n);
        const RealVector q = (meas * (prop * r0)).cwiseMax(0.0);
        const RealVector p = empirical_probabilities(rec);
        double s = 0.0;
        for (Eigen::Index j = 0; j + 1 < q.size(); ++j) {  // last component excluded
            const double diff = q(j) - p(j);
            s += diff * diff;
        }
        sq[i] = s;
    }
    return sq;
}

}  // namespace

double rmse(const PrimitiveSet& set, const Model& model, const TestSet& tests) {
    const auto sq = squared_residuals(set, model, tests);
    const int n = tests.n_qubits();
    const double components = static_cast<double>((1 << n) - 1);
    double total = 0.0;
    for (double s : sq) total += s;
    return std::sqrt(total / (components * static_cast<double>(sq.size())));
}

FitnessReport fitness_score(const PrimitiveSet& set, const Model& model,
                            const TestSet& tests) {
    const auto sq = squared_residuals(set, model, tests);
    const int n = tests.n_qubits();
    const double components = static_cast<double>((1 << n) - 1);
    FitnessReport report;
    report.model_id = model.chromosome.to_string();
    double total = 0.0;
    report.residuals.reserve(sq.size());
    for (double s : sq) {
        total += s;
        report.residuals.push_back(std::sqrt(s / components));
    }
    report.rmse = std::sqrt(total / (components * static_cast<double>(sq.size())));
    report.fitness = 1.0 / std::max(report.rmse, kRmseFloor);
    return report;
}

std::vector<FitnessReport> evaluate_generation(const PrimitiveSet& set,
                                               const std::vector<TrainedModel>& models,
                                               const TestSet& tests) {
    if (models.empty()) throw std::invalid_argument("no models to evaluate");
    std::vector<FitnessReport> reports;
    reports.reserve(models.size());
    for (const auto& tm : models) reports.push_back(fitness_score(set, tm.model, tests));
    std::stable_sort(reports.begin(), reports.end(),
                     [](const FitnessReport& a, const FitnessReport& b) {
                         if (a.fitness != b.fitness) return a.fitness > b.fitness;
                         return a.model_id < b.model_id;
                     });
    return reports;
}

}  // namespace oqs
