#include "oqs/state.hpp"

#include <cmath>
#include <stdexcept>

namespace oqs {

namespace {

int qubits_for_dim(Eigen::Index dim) {
    for (int n = 1; n <= kMaxQubits; ++n)
        if (dim == (Eigen::Index{1} << n)) return n;
    throw std::invalid_argument("unsupported size: density matrix dimension " +
                                std::to_string(dim) + " is not 2^n with n <= " +
                                std::to_string(kMaxQubits));
}

}  // namespace

DensityMatrix::DensityMatrix(Matrix m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols())
        throw std::invalid_argument("density matrix must be square");
    n_qubits_ = qubits_for_dim(m_.rows());

    const double herm = (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
    if (herm > kHermitianTol)
        throw std::invalid_argument("density matrix is not Hermitian (deviation " +
                                    std::to_string(herm) + ")");
    const double trace_err = std::abs(m_.trace() - Complex(1.0, 0.0));
    if (trace_err > kTraceTol)
        throw std::invalid_argument("density matrix trace differs from 1 by " +
                                    std::to_string(trace_err));
    Eigen::SelfAdjointEigenSolver<Matrix> es(m_, Eigen::EigenvaluesOnly);
    const double min_ev = es.eigenvalues().minCoeff();
    if (min_ev < kPositivityTol)
        throw std::invalid_argument("density matrix has negative eigenvalue " +
                                    std::to_string(min_ev));
}

DensityMatrix DensityMatrix::pure(const Vector& amplitudes) {
    const double norm = amplitudes.norm();
    if (std::abs(norm - 1.0) > 1e-9)
        throw std::invalid_argument("pure state amplitudes are not normalized (norm " +
                                    std::to_string(norm) + ")");
    Matrix rho = amplitudes * amplitudes.adjoint();
    return DensityMatrix(std::move(rho));
}

}  // namespace oqs
