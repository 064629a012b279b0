#pragma once

#include <Eigen/Dense>
#include <complex>

namespace oqs {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

// Dense superoperator acting on column-stacked density matrices:
// vec() stacks columns, so vec(A X B) = (B^T (x) A) vec(X).
using Superoperator = Eigen::MatrixXcd;

// Largest system handled anywhere in the library. Superoperators are dense
// 4^n x 4^n matrices, so three qubits (64x64 vectorized) is the ceiling.
inline constexpr int kMaxQubits = 3;

/// Kind of a generator term: coherent (commutator) or dissipative (jump).
enum class Kind { Coherent, Dissipative };

inline const char* to_string(Kind k) {
    return k == Kind::Coherent ? "coherent" : "dissipative";
}

}  // namespace oqs
