#include "oqs/primitives.hpp"

#include <stdexcept>

#include "oqs/superop.hpp"

namespace oqs {

namespace {

std::string key_of(Kind kind, const std::string& label) {
    return (kind == Kind::Coherent ? "C:" : "D:") + label;
}

// Enumerates factor strings over `alphabet` in lexicographic order (most
// significant position = qubit 0), skipping the all-identity string.
void append_block(std::vector<Primitive>& out, Kind kind, const char* alphabet,
                  int radix, int n_qubits) {
    int count = 1;
    for (int q = 0; q < n_qubits; ++q) count *= radix;
    for (int value = 1; value < count; ++value) {
        std::string label(static_cast<std::size_t>(n_qubits), alphabet[0]);
        int v = value;
        for (int q = n_qubits - 1; q >= 0; --q) {
            label[static_cast<std::size_t>(q)] = alphabet[v % radix];
            v /= radix;
        }
        out.push_back(Primitive{kind, label});
    }
}

}  // namespace

Chromosome Chromosome::from_string(const std::string& bits) {
    Chromosome c(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] != '0' && bits[i] != '1')
            throw std::invalid_argument("chromosome string must be over {0,1}");
        c.bits_[i] = bits[i] == '1' ? 1 : 0;
    }
    return c;
}

int Chromosome::popcount() const {
    int n = 0;
    for (auto b : bits_) n += b;
    return n;
}

std::vector<int> Chromosome::ones() const {
    std::vector<int> idx;
    idx.reserve(static_cast<std::size_t>(popcount()));
    for (std::size_t i = 0; i < bits_.size(); ++i)
        if (bits_[i]) idx.push_back(static_cast<int>(i));
    return idx;
}

std::string Chromosome::to_string() const {
    std::string s(bits_.size(), '0');
    for (std::size_t i = 0; i < bits_.size(); ++i)
        if (bits_[i]) s[i] = '1';
    return s;
}

PrimitiveSet::PrimitiveSet(int n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits)
        throw std::invalid_argument("unsupported size: primitive set over " +
                                    std::to_string(n_qubits) + " qubits");
    static const char kCoherent[] = {'I', 'X', 'Y', 'Z'};
    static const char kDissipative[] = {'I', 'X', 'Y', 'Z', '+', '-'};
    append_block(primitives_, Kind::Coherent, kCoherent, 4, n_qubits);
    append_block(primitives_, Kind::Dissipative, kDissipative, 6, n_qubits);

    unit_ptm_.reserve(primitives_.size());
    for (std::size_t i = 0; i < primitives_.size(); ++i) {
        const Primitive& p = primitives_[i];
        const Superoperator s = p.kind == Kind::Coherent ? coherent_superop(p.label)
                                                         : dissipative_superop(p.label);
        unit_ptm_.push_back(ptm::to_pauli_basis(s, n_qubits_));
        index_.emplace(key_of(p.kind, p.label), i);
    }
}

std::size_t PrimitiveSet::index_of(Kind kind, const std::string& label) const {
    const auto it = index_.find(key_of(kind, label));
    if (it == index_.end())
        throw std::invalid_argument("primitive " + std::string(to_string(kind)) + " '" +
                                    label + "' is not in the set");
    return it->second;
}

bool PrimitiveSet::contains(Kind kind, const std::string& label) const {
    return index_.find(key_of(kind, label)) != index_.end();
}

std::string encode(const Model& model) { return model.chromosome.to_string(); }

Model decode(const PrimitiveSet& set, const Chromosome& chromosome,
             const std::vector<double>& rates) {
    if (chromosome.size() != set.size())
        throw std::invalid_argument("chromosome length " + std::to_string(chromosome.size()) +
                                    " does not match set size " + std::to_string(set.size()));
    const std::vector<int> on = chromosome.ones();
    if (on.size() != rates.size())
        throw std::invalid_argument("expected " + std::to_string(on.size()) + " rates, got " +
                                    std::to_string(rates.size()));
    for (std::size_t k = 0; k < on.size(); ++k) {
        const Primitive& p = set.at(static_cast<std::size_t>(on[k]));
        if (p.kind == Kind::Dissipative && rates[k] < 0.0)
            throw std::invalid_argument("non-physical rate " + std::to_string(rates[k]) +
                                        " for dissipative primitive '" + p.label + "'");
    }
    return Model{chromosome, rates};
}

Chromosome random_chromosome(const PrimitiveSet& set, int target, Rng& rng) {
    const int size = static_cast<int>(set.size());
    if (target <= 0 || target >= size)
        throw std::invalid_argument("target primitive count " + std::to_string(target) +
                                    " outside (0, " + std::to_string(size) + ")");
    const double p = static_cast<double>(target) / static_cast<double>(size);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Chromosome c(set.size());
    for (std::size_t i = 0; i < set.size(); ++i) c.set(i, u(rng) < p);
    return c;
}

std::vector<GeneratorTerm> model_terms(const PrimitiveSet& set, const Model& model) {
    const std::vector<int> on = model.chromosome.ones();
    if (on.size() != model.rates.size())
        throw std::invalid_argument("model rates misaligned with chromosome");
    std::vector<GeneratorTerm> terms;
    terms.reserve(on.size());
    for (std::size_t k = 0; k < on.size(); ++k) {
        const Primitive& p = set.at(static_cast<std::size_t>(on[k]));
        terms.push_back(make_term(p.kind, model.rates[k], p.label));
    }
    return terms;
}

ptm::Engine model_engine(const PrimitiveSet& set, const Chromosome& chromosome) {
    if (chromosome.size() != set.size())
        throw std::invalid_argument("chromosome length does not match set size");
    std::vector<RealMatrix> gens;
    for (int i : chromosome.ones()) gens.push_back(set.unit_generator(static_cast<std::size_t>(i)));
    return ptm::Engine(std::move(gens), set.n_qubits());
}

std::vector<Kind> rate_kinds(const PrimitiveSet& set, const Chromosome& chromosome) {
    if (chromosome.size() != set.size())
        throw std::invalid_argument("chromosome length does not match set size");
    std::vector<Kind> kinds;
    for (int i : chromosome.ones()) kinds.push_back(set.at(static_cast<std::size_t>(i)).kind);
    return kinds;
}

Model reduce_model(const Model& model, const std::vector<double>& rate_stds,
                   double threshold_ratio) {
    if (rate_stds.size() != model.rates.size())
        throw std::invalid_argument("rate stds misaligned with model rates");
    if (threshold_ratio < 0.0)
        throw std::invalid_argument("threshold ratio must be >= 0");
    const std::vector<int> on = model.chromosome.ones();
    Model reduced;
    reduced.chromosome = Chromosome(model.chromosome.size());
    for (std::size_t k = 0; k < on.size(); ++k) {
        if (std::abs(model.rates[k]) < threshold_ratio * rate_stds[k]) continue;
        reduced.chromosome.set(static_cast<std::size_t>(on[k]), true);
        reduced.rates.push_back(model.rates[k]);
    }
    return reduced;
}

}  // namespace oqs
