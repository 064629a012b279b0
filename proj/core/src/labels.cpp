#include "oqs/labels.hpp"

#include <stdexcept>

namespace oqs {

bool is_factor_tag(char c) {
    return c == 'I' || c == 'X' || c == 'Y' || c == 'Z' || c == '+' || c == '-';
}

bool is_coherent_tag(char c) {
    return c == 'I' || c == 'X' || c == 'Y' || c == 'Z';
}

void validate_label(const std::string& label, Kind kind) {
    if (label.empty()) throw std::invalid_argument("operator label is empty");
    if (label.size() > static_cast<std::size_t>(kMaxQubits))
        throw std::invalid_argument("unsupported size: label '" + label + "' exceeds " +
                                    std::to_string(kMaxQubits) + " qubits");
    for (char c : label) {
        if (!is_factor_tag(c))
            throw std::invalid_argument("invalid factor '" + std::string(1, c) +
                                        "' in label '" + label + "'");
        if (kind == Kind::Coherent && !is_coherent_tag(c))
            throw std::invalid_argument("invalid coherent label '" + label +
                                        "': ladder factor '" + std::string(1, c) +
                                        "' is not Hermitian");
    }
}

Eigen::Matrix2cd factor_matrix(char tag) {
    const Complex i(0.0, 1.0);
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
    switch (tag) {
        case 'I': m(0, 0) = 1.0; m(1, 1) = 1.0; break;
        case 'X': m(0, 1) = 1.0; m(1, 0) = 1.0; break;
        case 'Y': m(0, 1) = -i;  m(1, 0) = i;   break;
        case 'Z': m(0, 0) = 1.0; m(1, 1) = -1.0; break;
        case '+': m(1, 0) = 1.0; break;  // |1><0|, raising
        case '-': m(0, 1) = 1.0; break;  // |0><1|, lowering
        default:
            throw std::invalid_argument("invalid factor '" + std::string(1, tag) + "'");
    }
    return m;
}

Matrix label_matrix(const std::string& label) {
    validate_label(label, Kind::Dissipative);  // widest alphabet
    Matrix out = factor_matrix(label[0]);
    for (std::size_t q = 1; q < label.size(); ++q) {
        const Eigen::Matrix2cd f = factor_matrix(label[q]);
        Matrix next(out.rows() * 2, out.cols() * 2);
        for (Eigen::Index r = 0; r < out.rows(); ++r)
            for (Eigen::Index c = 0; c < out.cols(); ++c)
                next.block<2, 2>(2 * r, 2 * c) = out(r, c) * f;
        out.swap(next);
    }
    return out;
}

int bitstring_index(const std::string& bits) {
    if (bits.empty() || bits.size() > static_cast<std::size_t>(kMaxQubits))
        throw std::invalid_argument("bad outcome bitstring '" + bits + "'");
    int idx = 0;
    for (char c : bits) {
        if (c != '0' && c != '1')
            throw std::invalid_argument("bad outcome bitstring '" + bits + "'");
        idx = (idx << 1) | (c == '1' ? 1 : 0);
    }
    return idx;
}

std::string index_bitstring(int index, int n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits || index < 0 || index >= (1 << n_qubits))
        throw std::invalid_argument("outcome index out of range");
    std::string bits(static_cast<std::size_t>(n_qubits), '0');
    for (int q = 0; q < n_qubits; ++q)
        if (index & (1 << (n_qubits - 1 - q))) bits[static_cast<std::size_t>(q)] = '1';
    return bits;
}

}  // namespace oqs
