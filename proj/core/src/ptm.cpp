#include "oqs/ptm.hpp"

#include <stdexcept>

#include "oqs/labels.hpp"
#include "oqs/superop.hpp"

namespace oqs::ptm {

namespace {

const char kDigitTag[4] = {'I', 'X', 'Y', 'Z'};

std::string basis_label(int n_qubits, int index) {
    std::string label(static_cast<std::size_t>(n_qubits), 'I');
    for (int q = n_qubits - 1; q >= 0; --q) {
        label[static_cast<std::size_t>(q)] = kDigitTag[index & 3];
        index >>= 2;
    }
    return label;
}

}  // namespace

Matrix basis_element(int n_qubits, int index) {
    if (n_qubits < 1 || n_qubits > kMaxQubits)
        throw std::invalid_argument("unsupported size: " + std::to_string(n_qubits) + " qubits");
    const int count = 1 << (2 * n_qubits);
    if (index < 0 || index >= count)
        throw std::invalid_argument("basis index out of range");
    return label_matrix(basis_label(n_qubits, index));
}

Matrix basis_transform(int n_qubits) {
    const Eigen::Index d = Eigen::Index{1} << n_qubits;
    const Eigen::Index dd = d * d;
    Matrix t(dd, dd);
    for (Eigen::Index i = 0; i < dd; ++i) {
        const Matrix p = basis_element(n_qubits, static_cast<int>(i));
        t.col(i) = Eigen::Map<const Vector>(p.data(), dd);
    }
    return t;
}

RealMatrix to_pauli_basis(const Superoperator& s, int n_qubits) {
    const Eigen::Index d = Eigen::Index{1} << n_qubits;
    const Eigen::Index dd = d * d;
    if (s.rows() != dd || s.cols() != dd)
        throw std::invalid_argument("superoperator dimension mismatch");
    const Matrix t = basis_transform(n_qubits);
    const Matrix image = (t.adjoint() * s * t) / static_cast<double>(d);
    const double imag = image.imag().cwiseAbs().maxCoeff();
    if (imag > 1e-10)
        throw std::invalid_argument("superoperator is not Hermiticity-preserving "
                                    "(imaginary residue " + std::to_string(imag) + ")");
    return image.real();
}

RealVector state_coeffs(const Matrix& rho, int n_qubits) {
    const Eigen::Index d = Eigen::Index{1} << n_qubits;
    if (rho.rows() != d || rho.cols() != d)
        throw std::invalid_argument("state dimension mismatch");
    const Eigen::Index dd = d * d;
    RealVector r(dd);
    for (Eigen::Index i = 0; i < dd; ++i) {
        const Matrix p = basis_element(n_qubits, static_cast<int>(i));
        r(i) = (p.array() * rho.transpose().array()).sum().real();  // tr(P rho)
    }
    return r;
}

Matrix coeffs_to_matrix(const RealVector& r, int n_qubits) {
    const Eigen::Index d = Eigen::Index{1} << n_qubits;
    const Eigen::Index dd = d * d;
    if (r.size() != dd) throw std::invalid_argument("coefficient vector size mismatch");
    Matrix rho = Matrix::Zero(d, d);
    for (Eigen::Index i = 0; i < dd; ++i)
        rho += r(i) * basis_element(n_qubits, static_cast<int>(i));
    return rho / static_cast<double>(d);
}

RealMatrix measurement_rows(const Matrix& basis, int n_qubits) {
    const Eigen::Index d = Eigen::Index{1} << n_qubits;
    if (basis.rows() != d || basis.cols() != d)
        throw std::invalid_argument("basis dimension mismatch");
    const Eigen::Index dd = d * d;
    RealMatrix m(d, dd);
    for (Eigen::Index i = 0; i < dd; ++i) {
        const Matrix q = basis * basis_element(n_qubits, static_cast<int>(i)) * basis.adjoint();
        for (Eigen::Index j = 0; j < d; ++j)
            m(j, i) = q(j, j).real() / static_cast<double>(d);
    }
    return m;
}

Engine::Engine(std::vector<RealMatrix> unit_generators, int n_qubits)
    : gens_(std::move(unit_generators)), n_(n_qubits) {
    const Eigen::Index dd = Eigen::Index{1} << (2 * n_);
    for (const auto& g : gens_)
        if (g.rows() != dd || g.cols() != dd)
            throw std::invalid_argument("generator dimension mismatch");
}

void Engine::assemble(const double* rates, RealMatrix& l) const {
    const Eigen::Index dd = Eigen::Index{1} << (2 * n_);
    l.resize(dd, dd);
    if (gens_.empty()) {
        l.setZero();
        return;
    }
    l.noalias() = rates[0] * gens_[0];
    for (std::size_t i = 1; i < gens_.size(); ++i) l.noalias() += rates[i] * gens_[i];
}

void Engine::compute_propagator(const RealMatrix& l, double t, RealMatrix& prop) {
    if (t < 0.0) throw std::invalid_argument("negative time " + std::to_string(t));
    scaled_ = l * t;
    ws_.compute(scaled_, prop);
}

void Engine::propagate(const RealMatrix& l, double t, const RealVector& r0, RealVector& out) {
    compute_propagator(l, t, prop_);
    out.noalias() = prop_ * r0;
}

void Engine::probabilities(const RealMatrix& l, double t, const RealVector& r0,
                           const RealMatrix& meas, RealVector& q) {
    propagate(l, t, r0, tmp_);
    q.noalias() = meas * tmp_;
    q = q.cwiseMax(0.0);
}

}  // namespace oqs::ptm
