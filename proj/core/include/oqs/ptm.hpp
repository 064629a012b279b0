#pragma once

#include <vector>

#include "oqs/expm.hpp"
#include "oqs/types.hpp"

namespace oqs::ptm {

// Internal engine representation. A Hermiticity-preserving superoperator is
// real when written in the Hermitian operator basis {P_i} of n-fold tensor
// products of I, X, Y, Z. Working with real 4^n x 4^n matrices makes the inner
// inference loops ~4x cheaper than the complex column-stacking form while
// remaining an exact similarity transform of it (tests pin the equivalence).
//
// Basis index i reads as a base-4 integer, qubit 0 the most significant digit,
// digits 0:I 1:X 2:Y 3:Z. States are carried as coefficient vectors
// r_i = tr(P_i rho), so rho = 2^-n sum_i r_i P_i and r_0 = tr(rho) = 1.

/// P_i for an n-qubit register.
Matrix basis_element(int n_qubits, int index);

/// T with column i = vec(P_i); satisfies T^+ T = 2^n I.
Matrix basis_transform(int n_qubits);

/// Real image (T^+ S T) / 2^n of a superoperator. Throws std::invalid_argument
/// if the imaginary residue exceeds 1e-10 (i.e. S is not Hermiticity-preserving).
RealMatrix to_pauli_basis(const Superoperator& s, int n_qubits);

/// Coefficients r_i = tr(P_i rho) of a density (or any Hermitian) matrix.
RealVector state_coeffs(const Matrix& rho, int n_qubits);

/// Inverse of state_coeffs: rho = 2^-n sum_i r_i P_i.
Matrix coeffs_to_matrix(const RealVector& r, int n_qubits);

/// 2^n x 4^n real map M with M(j, i) = <j| U P_i U^+ |j> / 2^n, so that
/// q = M r gives the computational-basis outcome probabilities after the
/// basis-change unitary U.
RealMatrix measurement_rows(const Matrix& basis, int n_qubits);

/// Repeated-evolution engine for a fixed term structure. Holds the unit-rate
/// real generators G_i of each term; assemble() forms L = sum rate_i G_i and
/// probabilities() evaluates q = M expm(L t) r0 without allocating.
class Engine {
  public:
    Engine(std::vector<RealMatrix> unit_generators, int n_qubits);

    int n_qubits() const { return n_; }
    int dim() const { return static_cast<int>(1) << (2 * n_); }
    int n_terms() const { return static_cast<int>(gens_.size()); }
    const RealMatrix& generator(int i) const { return gens_[static_cast<std::size_t>(i)]; }

    /// l = sum_i rates[i] * G_i (l is resized as needed).
    void assemble(const double* rates, RealMatrix& l) const;

    /// prop = expm(l * t); t must be >= 0. Exposed so callers can reuse one
    /// propagator across many records sharing an evolution time.
    void compute_propagator(const RealMatrix& l, double t, RealMatrix& prop);

    /// out = expm(l * t) * r0; t must be >= 0.
    void propagate(const RealMatrix& l, double t, const RealVector& r0, RealVector& out);

    /// q = meas * expm(l * t) * r0, entries clamped at zero.
    void probabilities(const RealMatrix& l, double t, const RealVector& r0,
                       const RealMatrix& meas, RealVector& q);

  private:
    std::vector<RealMatrix> gens_;
    int n_;
    detail::ExpmWorkspace<RealMatrix> ws_;
    RealMatrix scaled_, prop_;
    RealVector tmp_;
};

}  // namespace oqs::ptm
