#pragma once

#include <string>

#include "oqs/types.hpp"

namespace oqs {

// Operator labels are strings over the factor alphabet {I, X, Y, Z, +, -},
// one character per qubit. Conventions used throughout the library:
//   * the leftmost factor acts on qubit 0,
//   * qubit 0 is the most significant bit of a measurement outcome index,
//   * '-' is the lowering operator |0><1| and '+' the raising operator |1><0|.
// Coherent (Hamiltonian) labels are restricted to the Hermitian subset
// {I, X, Y, Z}; ladder factors are only meaningful in jump operators.

inline constexpr char kCoherentAlphabet[] = {'I', 'X', 'Y', 'Z'};
inline constexpr char kDissipativeAlphabet[] = {'I', 'X', 'Y', 'Z', '+', '-'};

bool is_factor_tag(char c);
bool is_coherent_tag(char c);

/// Throws std::invalid_argument when the label is empty, longer than
/// kMaxQubits, contains an unknown character, or (for Kind::Coherent)
/// contains a ladder factor.
void validate_label(const std::string& label, Kind kind);

/// 2x2 matrix for one factor tag.
Eigen::Matrix2cd factor_matrix(char tag);

/// Tensor product of the factors, leftmost factor on qubit 0. Validates the
/// label (any kind; ladder factors allowed).
Matrix label_matrix(const std::string& label);

/// Outcome index for a bitstring such as "10" (leftmost char = qubit 0 = MSB).
int bitstring_index(const std::string& bits);

/// Inverse of bitstring_index for an n-qubit register.
std::string index_bitstring(int index, int n_qubits);

}  // namespace oqs
