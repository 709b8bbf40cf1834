#ifndef PWORLDS_WORLDS_HPP
#define PWORLDS_WORLDS_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "pworlds/logic.hpp"

namespace pworlds {

// Default ceiling on the number of ground atoms (2^20 worlds).  Exceeding
// the cap is an error, never a silent truncation.
inline constexpr std::size_t kDefaultAtomCap = 20;

// ── Ground atoms ─────────────────────────────────────────────────────────

struct GroundAtom {
  std::string predicate;
  std::vector<std::string> args;

  Formula to_formula() const;
  std::string to_string() const;
};

// The ordered ground Herbrand base of a signature: every predicate applied
// to every tuple of constants, predicates in declaration order, tuples in
// lexicographic order of constant indices (leftmost argument most
// significant).  The ordering is a pure function of the signature.
class GroundAtomSet {
public:
  static GroundAtomSet from_signature(const Signature& sig);

  std::size_t size() const { return atoms_.size(); }
  const GroundAtom& at(std::size_t i) const { return atoms_[i]; }
  std::optional<std::size_t> index_of(const std::string& predicate,
                                      const std::vector<std::string>& args) const;

private:
  std::vector<GroundAtom> atoms_;
  std::unordered_map<std::string, std::size_t> index_;
};

// ── Worlds ───────────────────────────────────────────────────────────────

class WorldSpace;

// One total truth assignment to the ground atoms.  World k assigns atom i
// the value of bit i of k (1 = true); that convention fixes the canonical
// world order.
class World {
public:
  std::uint64_t index() const { return bits_; }
  bool value(std::size_t atom_index) const {
    return (bits_ >> atom_index) & 1u;
  }

  // "world k: A=t B=f ..." in atom order.
  std::string describe() const;

private:
  friend class WorldSpace;
  World(std::uint64_t bits, std::shared_ptr<const GroundAtomSet> atoms,
        std::shared_ptr<const Signature> sig)
      : bits_(bits), atoms_(std::move(atoms)), sig_(std::move(sig)) {}

  std::uint64_t bits_;
  std::shared_ptr<const GroundAtomSet> atoms_;
  std::shared_ptr<const Signature> sig_;

  friend bool satisfies(const World& w, const Formula& f);
  friend Formula atom_sentence(const World& w);
};

// The complete space of 2^n total assignments, in canonical order.  Worlds
// are materialized on demand; the space itself is immutable.
class WorldSpace {
public:
  std::size_t atom_count() const { return atoms_->size(); }
  std::uint64_t world_count() const { return std::uint64_t(1) << atoms_->size(); }
  World world(std::uint64_t k) const;

  const GroundAtomSet& atoms() const { return *atoms_; }
  const Signature& signature() const { return *sig_; }

private:
  friend WorldSpace enumerate_worlds(const Signature& sig, std::size_t max_atoms);

  std::shared_ptr<const GroundAtomSet> atoms_;
  std::shared_ptr<const Signature> sig_;
};

// Builds the world space for a signature.  Throws CapExceededError when the
// ground atom count exceeds `max_atoms`.
WorldSpace enumerate_worlds(const Signature& sig,
                            std::size_t max_atoms = kDefaultAtomCap);

// ── Truth vectors ────────────────────────────────────────────────────────

// One truth value per world; the finite stand-in for a sentence's logical
// equivalence class.  Two sentences are logically equivalent over the
// signature iff their truth vectors are equal.
class TruthVector {
public:
  TruthVector() = default;
  explicit TruthVector(std::uint64_t size, bool fill = false);

  std::uint64_t size() const { return size_; }
  bool test(std::uint64_t k) const {
    return (words_[k >> 6] >> (k & 63)) & 1u;
  }
  void set(std::uint64_t k, bool v);

  std::uint64_t count() const; // number of true components

  bool all_false() const;
  bool all_true() const;

  // true when this vector is componentwise <= other (entailment order)
  bool implies(const TruthVector& other) const;

  TruthVector operator&(const TruthVector& other) const;
  TruthVector operator|(const TruthVector& other) const;
  TruthVector operator^(const TruthVector& other) const;
  TruthVector complement() const;

  bool operator==(const TruthVector& other) const;

  std::size_t word_count() const { return words_.size(); }
  std::uint64_t word(std::size_t i) const { return words_[i]; }
  void set_word(std::size_t i, std::uint64_t bits) {
    words_[i] = bits;
    if (i + 1 == words_.size()) mask_tail();
  }

private:
  void mask_tail();

  std::uint64_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

// ── Evaluation ───────────────────────────────────────────────────────────

// Truth-functional evaluation of a ground, quantifier-free sentence in one
// world.  Rejects quantified or non-ground input.
bool satisfies(const World& w, const Formula& f);

// Component k = satisfies(world k, f); computed wordwise.
TruthVector truth_vector(const Formula& f, const WorldSpace& ws);

// The complete conjunction (every atom or its negation, in atom order) that
// is true in exactly this world.
Formula atom_sentence(const World& w);

} // namespace pworlds

#endif // PWORLDS_WORLDS_HPP
