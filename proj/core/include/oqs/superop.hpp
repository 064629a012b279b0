#pragma once

#include <string>

#include "oqs/types.hpp"

namespace oqs {

/// Dense Kronecker product, row/column blocks ordered so that
/// kron(A, B)(a_r*Bn + b_r, a_c*Bm + b_c) = A(a_r, a_c) * B(b_r, b_c).
Matrix kron(const Matrix& a, const Matrix& b);

// Superoperators below act on column-stacked density matrices, using
// vec(A X B) = (B^T (x) A) vec(X).

/// Commutator generator C[h] rho = -i (h rho - rho h) as a superoperator:
/// -i ((I (x) h) - (h^T (x) I)). The operator must be Hermitian within 1e-10.
Superoperator coherent_superop_matrix(const Matrix& h);

/// Label convenience for coherent_superop_matrix; rejects ladder factors.
Superoperator coherent_superop(const std::string& label);

/// Jump generator D[L] rho = L rho L^+ - 1/2 {L^+ L, rho} as a superoperator:
/// (conj(L) (x) L) - 1/2 (I (x) L^+L) - 1/2 ((L^+L)^T (x) I).
Superoperator dissipative_superop_matrix(const Matrix& l);

/// Label convenience for dissipative_superop_matrix.
Superoperator dissipative_superop(const std::string& label);

}  // namespace oqs
