#include "oqs/evolve.hpp"

#include <stdexcept>

#include "oqs/expm.hpp"
#include "oqs/labels.hpp"
#include "oqs/superop.hpp"

namespace oqs {

GeneratorTerm make_term(Kind kind, double rate, const std::string& label) {
    validate_label(label, kind);
    return GeneratorTerm{kind, rate, label_matrix(label), label};
}

Superoperator assemble_liouvillian(const std::vector<GeneratorTerm>& terms, int n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits)
        throw std::invalid_argument("unsupported size: " + std::to_string(n_qubits) + " qubits");
    const Eigen::Index d = Eigen::Index{1} << n_qubits;
    Superoperator l = Superoperator::Zero(d * d, d * d);
    for (const auto& term : terms) {
        if (term.op.rows() != d || term.op.cols() != d)
            throw std::invalid_argument("term '" + term.label + "' has dimension " +
                                        std::to_string(term.op.rows()) + ", expected " +
                                        std::to_string(d));
        if (term.kind == Kind::Dissipative) {
            if (term.rate < 0.0)
                throw std::invalid_argument("non-physical rate " + std::to_string(term.rate) +
                                            " for dissipative term '" + term.label + "'");
            l += term.rate * dissipative_superop_matrix(term.op);
        } else {
            l += term.rate * coherent_superop_matrix(term.op);
        }
    }
    return l;
}

Matrix propagator(const Superoperator& l, double t) {
    if (t < 0.0) throw std::invalid_argument("negative time " + std::to_string(t));
    return expm(Matrix(l * t));
}

DensityMatrix apply_propagator(const Matrix& prop, const DensityMatrix& rho0) {
    const Eigen::Index d = rho0.dim();
    if (prop.rows() != d * d || prop.cols() != d * d)
        throw std::invalid_argument("propagator dimension mismatch");
    const Eigen::Map<const Vector> vec_in(rho0.matrix().data(), d * d);
    Vector vec_out = prop * vec_in;
    Matrix rho_t = Eigen::Map<Matrix>(vec_out.data(), d, d);
    rho_t = 0.5 * (rho_t + rho_t.adjoint()).eval();
    return DensityMatrix(std::move(rho_t));
}

DensityMatrix evolve(const DensityMatrix& rho0, const std::vector<GeneratorTerm>& terms,
                     double t) {
    const Superoperator l = assemble_liouvillian(terms, rho0.n_qubits());
    return apply_propagator(propagator(l, t), rho0);
}

RealVector outcome_probabilities(const DensityMatrix& rho, const Matrix& basis) {
    const Eigen::Index d = rho.dim();
    if (basis.rows() != d || basis.cols() != d)
        throw std::invalid_argument("invalid basis: dimension mismatch");
    const double unitarity =
        (basis.adjoint() * basis - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
    if (unitarity > 1e-10)
        throw std::invalid_argument("invalid basis: not unitary (deviation " +
                                    std::to_string(unitarity) + ")");
    // q_j = sum_k (U rho)(j,k) conj(U(j,k)) avoids forming U rho U^+.
    const Matrix m = basis * rho.matrix();
    RealVector q(d);
    for (Eigen::Index j = 0; j < d; ++j) {
        const Complex v = (m.row(j).array() * basis.row(j).array().conjugate()).sum();
        q(j) = std::max(v.real(), 0.0);
    }
    return q;
}

}  // namespace oqs
