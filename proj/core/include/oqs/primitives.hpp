#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "oqs/evolve.hpp"
#include "oqs/ptm.hpp"
#include "oqs/rng.hpp"
#include "oqs/types.hpp"

namespace oqs {

/// One candidate generator term: a coherent (Hamiltonian) or dissipative
/// (jump) factor product.
struct Primitive {
    Kind kind = Kind::Coherent;
    std::string label;
};

/// Fixed-length presence bitstring over a primitive set.
class Chromosome {
  public:
    Chromosome() = default;
    explicit Chromosome(std::size_t length) : bits_(length, 0) {}
    static Chromosome from_string(const std::string& bits);

    std::size_t size() const { return bits_.size(); }
    bool test(std::size_t i) const { return bits_[i] != 0; }
    void set(std::size_t i, bool value) { bits_[i] = value ? 1 : 0; }
    void flip(std::size_t i) { bits_[i] ^= 1; }
    int popcount() const;
    std::vector<int> ones() const;
    std::string to_string() const;

    bool operator==(const Chromosome& other) const { return bits_ == other.bits_; }
    bool operator!=(const Chromosome& other) const { return bits_ != other.bits_; }

  private:
    std::vector<std::uint8_t> bits_;
};

struct ChromosomeHash {
    std::size_t operator()(const Chromosome& c) const {
        return std::hash<std::string>{}(c.to_string());
    }
};

/// A model: which primitives are present, plus one rate per present primitive
/// (aligned with the ascending order of set bits). Dissipative rates are >= 0.
struct Model {
    Chromosome chromosome;
    std::vector<double> rates;
};

/// The ordered search space over n qubits: every factor product over
/// {I,X,Y,Z} except the identity (coherent block, lexicographic with
/// I < X < Y < Z), followed by every factor product over {I,X,Y,Z,+,-} except
/// the identity (dissipative block, lexicographic with I < X < Y < Z < + < -).
/// Sizes: 8 for one qubit, 50 for two, 278 for three.
class PrimitiveSet {
  public:
    /// Throws std::invalid_argument outside 1 <= n_qubits <= kMaxQubits.
    explicit PrimitiveSet(int n_qubits);

    int n_qubits() const { return n_qubits_; }
    std::size_t size() const { return primitives_.size(); }
    const Primitive& at(std::size_t i) const { return primitives_[i]; }
    const std::vector<Primitive>& primitives() const { return primitives_; }

    /// Index of (kind, label); throws std::invalid_argument when not in the set.
    std::size_t index_of(Kind kind, const std::string& label) const;
    bool contains(Kind kind, const std::string& label) const;

    /// Unit-rate real Pauli-basis generator of primitive i (cached).
    const RealMatrix& unit_generator(std::size_t i) const { return unit_ptm_[i]; }

  private:
    int n_qubits_;
    std::vector<Primitive> primitives_;
    std::vector<RealMatrix> unit_ptm_;
    std::unordered_map<std::string, std::size_t> index_;  // key: kind prefix + label
};

/// Presence bitstring of a model.
std::string encode(const Model& model);

/// Builds a model from a chromosome and aligned rates. Validates lengths,
/// set membership, and the dissipative sign constraint.
Model decode(const PrimitiveSet& set, const Chromosome& chromosome,
             const std::vector<double>& rates);

/// iid Bernoulli(target / |S|) bits; requires 0 < target < |S|.
Chromosome random_chromosome(const PrimitiveSet& set, int target, Rng& rng);

/// Quantum-core terms of a model (for the column-stacking path).
std::vector<GeneratorTerm> model_terms(const PrimitiveSet& set, const Model& model);

/// Pauli-basis engine over the model's present primitives (for hot loops).
ptm::Engine model_engine(const PrimitiveSet& set, const Chromosome& chromosome);

/// Kind of each present primitive, aligned with the model's rate vector.
std::vector<Kind> rate_kinds(const PrimitiveSet& set, const Chromosome& chromosome);

/// Drops every term whose |rate| < threshold_ratio * rate_std; surviving rates
/// are untouched. rate_stds is aligned with model.rates. Reducing an already
/// reduced model with the same stds is a no-op.
Model reduce_model(const Model& model, const std::vector<double>& rate_stds,
                   double threshold_ratio);

}  // namespace oqs
