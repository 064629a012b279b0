#include "oqs/superop.hpp"

#include <stdexcept>

#include "oqs/labels.hpp"

namespace oqs {

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index r = 0; r < a.rows(); ++r)
        for (Eigen::Index c = 0; c < a.cols(); ++c)
            out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
    return out;
}

Superoperator coherent_superop_matrix(const Matrix& h) {
    if (h.rows() != h.cols())
        throw std::invalid_argument("Hamiltonian term must be square");
    if ((h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
        throw std::invalid_argument("Hamiltonian term is not Hermitian");
    const Eigen::Index d = h.rows();
    const Matrix id = Matrix::Identity(d, d);
    const Complex i(0.0, 1.0);
    return -i * (kron(id, h) - kron(h.transpose(), id));
}

Superoperator coherent_superop(const std::string& label) {
    validate_label(label, Kind::Coherent);
    return coherent_superop_matrix(label_matrix(label));
}

Superoperator dissipative_superop_matrix(const Matrix& l) {
    if (l.rows() != l.cols())
        throw std::invalid_argument("jump operator must be square");
    const Eigen::Index d = l.rows();
    const Matrix id = Matrix::Identity(d, d);
    const Matrix ll = l.adjoint() * l;
    return kron(l.conjugate(), l) - 0.5 * kron(id, ll) - 0.5 * kron(ll.transpose(), id);
}

Superoperator dissipative_superop(const std::string& label) {
    validate_label(label, Kind::Dissipative);
    return dissipative_superop_matrix(label_matrix(label));
}

}  // namespace oqs
