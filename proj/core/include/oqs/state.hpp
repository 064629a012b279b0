#pragma once

#include "oqs/types.hpp"

namespace oqs {

// Validation tolerances for density matrices.
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-9;
inline constexpr double kPositivityTol = -1e-9;  // smallest admissible eigenvalue

/// Checked density matrix: Hermitian within kHermitianTol, unit trace within
/// kTraceTol, eigenvalues >= kPositivityTol, dimension 2^n with n <= kMaxQubits.
/// Immutable after construction; construction throws std::invalid_argument on
/// any violation.
class DensityMatrix {
  public:
    explicit DensityMatrix(Matrix m);

    /// |psi><psi| from a normalized amplitude vector (norm within 1e-9 of 1).
    static DensityMatrix pure(const Vector& amplitudes);

    const Matrix& matrix() const { return m_; }
    int n_qubits() const { return n_qubits_; }
    Eigen::Index dim() const { return m_.rows(); }

  private:
    Matrix m_;
    int n_qubits_;
};

}  // namespace oqs
