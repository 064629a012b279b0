#pragma once

// Scoring of trained models against held-out records: root-mean-square error
// between simulated and empirical outcome probabilities, and its reciprocal
// as the fitness. The last outcome component of every record is excluded
// from the error — probabilities sum to one, so it carries no information.

#include <string>
#include <vector>

#include "oqs/dataset.hpp"
#include "oqs/inference.hpp"
#include "oqs/primitives.hpp"
#include "oqs/types.hpp"

namespace oqs {

inline constexpr double kRmseFloor = 1e-6;  // caps fitness at 1e6

/// Held-out records a model is scored on. Owns copies so it outlives the
/// dataset it came from.
struct TestSet {
    std::vector<ExperimentRecord> records;

    int n_qubits() const;  // throws on empty or inconsistent records
    static TestSet from_dataset(const Dataset& dataset, const std::vector<int>& indices);
};

struct FitnessReport {
    std::string model_id;  // chromosome bitstring
    double rmse = 0.0;
    double fitness = 0.0;
    /// Per-record root-mean-square component error, aligned with the test
    /// set's record order.
    std::vector<double> residuals;
};

/// Outcome frequencies counts[j] / shots over all 2^n outcomes.
RealVector empirical_probabilities(const ExperimentRecord& record);

/// sqrt( sum_i sum_{j<2^n-1} |q_ij - p_ij|^2 / ((2^n-1)|T|) ) with q simulated
/// from the model and p empirical. Records sharing an evolution time reuse
/// one propagator.
double rmse(const PrimitiveSet& set, const Model& model, const TestSet& tests);

/// fitness = 1 / max(rmse, floor); monotone decreasing in rmse.
FitnessReport fitness_score(const PrimitiveSet& set, const Model& model,
                            const TestSet& tests);

/// Scores every trained model and ranks by fitness descending; exact fitness
/// ties order by model id, and full ties keep input order.
std::vector<FitnessReport> evaluate_generation(const PrimitiveSet& set,
                                               const std::vector<TrainedModel>& models,
                                               const TestSet& tests);

}  // namespace oqs
