#include "pworlds/worlds.hpp"

#include <bit>

#include "pworlds/errors.hpp"

namespace pworlds {

// ── GroundAtom ───────────────────────────────────────────────────────────

Formula GroundAtom::to_formula() const {
  std::vector<Term> terms;
  terms.reserve(args.size());
  for (const auto& a : args) terms.push_back(Term::constant(a));
  return Formula::atom(predicate, std::move(terms));
}

std::string GroundAtom::to_string() const {
  if (args.empty()) return predicate;
  std::string out = predicate + "(";
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) out += ", ";
    out += args[i];
  }
  out += ")";
  return out;
}

// ── GroundAtomSet ────────────────────────────────────────────────────────

GroundAtomSet GroundAtomSet::from_signature(const Signature& sig) {
  GroundAtomSet set;
  const auto& constants = sig.constants();
  for (const auto& pred : sig.predicates()) {
    if (pred.arity == 0) {
      set.atoms_.push_back(GroundAtom{pred.name, {}});
      continue;
    }
    if (constants.empty())
      continue; // no ground instances of an n-ary predicate without constants
    // Odometer over constant indices, leftmost argument most significant.
    std::vector<std::size_t> tuple(pred.arity, 0);
    for (;;) {
      std::vector<std::string> args;
      args.reserve(pred.arity);
      for (std::size_t i : tuple) args.push_back(constants[i]);
      set.atoms_.push_back(GroundAtom{pred.name, std::move(args)});
      std::size_t pos = pred.arity;
      while (pos > 0) {
        --pos;
        if (++tuple[pos] < constants.size()) break;
        tuple[pos] = 0;
        if (pos == 0) goto next_predicate;
      }
    }
  next_predicate:;
  }
  for (std::size_t i = 0; i < set.atoms_.size(); ++i)
    set.index_.emplace(set.atoms_[i].to_string(), i);
  return set;
}

std::optional<std::size_t>
GroundAtomSet::index_of(const std::string& predicate,
                        const std::vector<std::string>& args) const {
  auto it = index_.find(GroundAtom{predicate, args}.to_string());
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

// ── WorldSpace ───────────────────────────────────────────────────────────

WorldSpace enumerate_worlds(const Signature& sig, std::size_t max_atoms) {
  auto atoms = std::make_shared<const GroundAtomSet>(GroundAtomSet::from_signature(sig));
  // 62 is the hard limit of the 64-bit world index; the configurable cap
  // protects memory and time well before that.
  std::size_t effective_cap = max_atoms < 62 ? max_atoms : 62;
  if (atoms->size() > effective_cap)
    throw CapExceededError(atoms->size(), effective_cap);
  WorldSpace ws;
  ws.atoms_ = std::move(atoms);
  ws.sig_ = std::make_shared<const Signature>(sig);
  return ws;
}

World WorldSpace::world(std::uint64_t k) const {
  if (k >= world_count())
    throw InvariantError("world index " + std::to_string(k) + " out of range");
  return World(k, atoms_, sig_);
}

std::string World::describe() const {
  std::string out = "world " + std::to_string(bits_) + ":";
  for (std::size_t i = 0; i < atoms_->size(); ++i) {
    out += " " + atoms_->at(i).to_string() + "=";
    out += value(i) ? 't' : 'f';
  }
  return out;
}

// ── TruthVector ──────────────────────────────────────────────────────────

TruthVector::TruthVector(std::uint64_t size, bool fill)
    : size_(size), words_((size + 63) / 64, fill ? ~std::uint64_t(0) : 0) {
  if (fill) mask_tail();
}

void TruthVector::mask_tail() {
  if (size_ % 64 != 0 && !words_.empty())
    words_.back() &= (std::uint64_t(1) << (size_ % 64)) - 1;
}

void TruthVector::set(std::uint64_t k, bool v) {
  if (v)
    words_[k >> 6] |= std::uint64_t(1) << (k & 63);
  else
    words_[k >> 6] &= ~(std::uint64_t(1) << (k & 63));
}

std::uint64_t TruthVector::count() const {
  std::uint64_t n = 0;
  for (auto w : words_) n += std::popcount(w);
  return n;
}

bool TruthVector::all_false() const {
  for (auto w : words_)
    if (w) return false;
  return true;
}

bool TruthVector::all_true() const { return count() == size_; }

bool TruthVector::implies(const TruthVector& other) const {
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & ~other.words_[i]) return false;
  return true;
}

TruthVector TruthVector::operator&(const TruthVector& other) const {
  TruthVector out(size_);
  for (std::size_t i = 0; i < words_.size(); ++i)
    out.words_[i] = words_[i] & other.words_[i];
  return out;
}

TruthVector TruthVector::operator|(const TruthVector& other) const {
  TruthVector out(size_);
  for (std::size_t i = 0; i < words_.size(); ++i)
    out.words_[i] = words_[i] | other.words_[i];
  return out;
}

TruthVector TruthVector::operator^(const TruthVector& other) const {
  TruthVector out(size_);
  for (std::size_t i = 0; i < words_.size(); ++i)
    out.words_[i] = words_[i] ^ other.words_[i];
  return out;
}

TruthVector TruthVector::complement() const {
  TruthVector out(size_);
  for (std::size_t i = 0; i < words_.size(); ++i)
    out.words_[i] = ~words_[i];
  out.mask_tail();
  return out;
}

bool TruthVector::operator==(const TruthVector& other) const {
  return size_ == other.size_ && words_ == other.words_;
}

// ── Evaluation ───────────────────────────────────────────────────────────

namespace {

std::size_t atom_index_or_throw(const GroundAtomSet& atoms, const Formula& f) {
  std::vector<std::string> args;
  args.reserve(f.args().size());
  for (const auto& t : f.args()) {
    if (t.is_variable())
      throw InvariantError("cannot evaluate non-ground formula: free variable '" +
                           t.name() + "'");
    args.push_back(t.name());
  }
  auto idx = atoms.index_of(f.predicate(), args);
  if (!idx)
    throw InvariantError("atom '" + GroundAtom{f.predicate(), args}.to_string() +
                         "' is not part of this world space");
  return *idx;
}

bool eval_in(const World& w, const GroundAtomSet& atoms, const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::True: return true;
    case Formula::Kind::False: return false;
    case Formula::Kind::Atom: return w.value(atom_index_or_throw(atoms, f));
    case Formula::Kind::Not: return !eval_in(w, atoms, f.child());
    case Formula::Kind::And: return eval_in(w, atoms, f.left()) && eval_in(w, atoms, f.right());
    case Formula::Kind::Or: return eval_in(w, atoms, f.left()) || eval_in(w, atoms, f.right());
    case Formula::Kind::Implies: return !eval_in(w, atoms, f.left()) || eval_in(w, atoms, f.right());
    case Formula::Kind::Iff: return eval_in(w, atoms, f.left()) == eval_in(w, atoms, f.right());
    case Formula::Kind::ForAll:
    case Formula::Kind::Exists:
      throw InvariantError("cannot evaluate quantified formula in a single world; "
                           "expand it over the domain first");
  }
  return false;
}

// Truth vector of ground atom i: bit k of the vector equals bit i of k.
// For i < 6 the pattern repeats inside each 64-bit word; for i >= 6 whole
// words alternate in blocks of 2^(i-6).
TruthVector atom_vector(std::size_t i, std::uint64_t n_worlds) {
  static constexpr std::uint64_t kPattern[6] = {
      0xAAAAAAAAAAAAAAAAull, 0xCCCCCCCCCCCCCCCCull, 0xF0F0F0F0F0F0F0F0ull,
      0xFF00FF00FF00FF00ull, 0xFFFF0000FFFF0000ull, 0xFFFFFFFF00000000ull};
  TruthVector out(n_worlds);
  for (std::size_t w = 0; w < out.word_count(); ++w) {
    if (i < 6)
      out.set_word(w, kPattern[i]);
    else
      out.set_word(w, ((w >> (i - 6)) & 1u) ? ~std::uint64_t(0) : 0);
  }
  return out;
}

} // namespace

bool satisfies(const World& w, const Formula& f) {
  return eval_in(w, *w.atoms_, f);
}

TruthVector truth_vector(const Formula& f, const WorldSpace& ws) {
  std::uint64_t n = ws.world_count();
  switch (f.kind()) {
    case Formula::Kind::True: return TruthVector(n, true);
    case Formula::Kind::False: return TruthVector(n, false);
    case Formula::Kind::Atom:
      return atom_vector(atom_index_or_throw(ws.atoms(), f), n);
    case Formula::Kind::Not: return truth_vector(f.child(), ws).complement();
    case Formula::Kind::And: return truth_vector(f.left(), ws) & truth_vector(f.right(), ws);
    case Formula::Kind::Or: return truth_vector(f.left(), ws) | truth_vector(f.right(), ws);
    case Formula::Kind::Implies:
      return truth_vector(f.left(), ws).complement() | truth_vector(f.right(), ws);
    case Formula::Kind::Iff:
      return (truth_vector(f.left(), ws) ^ truth_vector(f.right(), ws)).complement();
    case Formula::Kind::ForAll:
    case Formula::Kind::Exists:
      throw InvariantError("cannot take the truth vector of a quantified formula; "
                           "expand it over the domain first");
  }
  return TruthVector(n);
}

Formula atom_sentence(const World& w) {
  const GroundAtomSet& atoms = *w.atoms_;
  if (atoms.size() == 0) return Formula::truth();
  Formula out = Formula::truth();
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    Formula lit = atoms.at(i).to_formula();
    if (!w.value(i)) lit = Formula::negation(std::move(lit));
    out = i == 0 ? std::move(lit) : Formula::conjunction(std::move(out), std::move(lit));
  }
  return out;
}

} // namespace pworlds
