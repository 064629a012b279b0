#pragma once

#include <string>
#include <vector>

#include "oqs/state.hpp"
#include "oqs/types.hpp"

namespace oqs {

/// One term of a Markovian generator. `op` is the 2^n x 2^n operator (a factor
/// product, or a weighted sum of factor products for composite jumps); `label`
/// is its display/serialization form.
struct GeneratorTerm {
    Kind kind = Kind::Coherent;
    double rate = 0.0;
    Matrix op;
    std::string label;
};

/// Convenience constructor from a plain factor label.
GeneratorTerm make_term(Kind kind, double rate, const std::string& label);

/// Sum of the term superoperators weighted by their rates, acting on
/// column-stacked density matrices. Empty term lists give the zero generator
/// (identity evolution). Throws std::invalid_argument for negative dissipative
/// rates (non-physical), dimension mismatches, or non-Hermitian coherent ops.
Superoperator assemble_liouvillian(const std::vector<GeneratorTerm>& terms, int n_qubits);

/// expm(l * t) for t >= 0 (throws on negative time).
Matrix propagator(const Superoperator& l, double t);

/// Applies a vectorized propagator to a density matrix. The result is
/// re-symmetrized ((rho + rho^+)/2) to strip floating-point skew before the
/// DensityMatrix invariants are checked.
DensityMatrix apply_propagator(const Matrix& prop, const DensityMatrix& rho0);

/// Closed-form pipeline: assemble, exponentiate, apply.
DensityMatrix evolve(const DensityMatrix& rho0, const std::vector<GeneratorTerm>& terms,
                     double t);

/// Computational-basis outcome probabilities after applying the basis-change
/// unitary to the state: q_j = <j| U rho U^+ |j>. Outcome index j has qubit 0
/// as its most significant bit. `basis` must be unitary within 1e-10
/// (invalid-basis otherwise). Entries are clamped at zero; negative dust from
/// rounding never exceeds 1e-12 for valid inputs.
RealVector outcome_probabilities(const DensityMatrix& rho, const Matrix& basis);

}  // namespace oqs
