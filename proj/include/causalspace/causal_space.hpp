#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "causalspace/event.hpp"
#include "causalspace/rational.hpp"

namespace causalspace {

/// E_n (positive) or its complement, for a primitive level n >= 1.
struct Literal {
  std::size_t level = 0;
  bool positive = true;

  friend bool operator==(const Literal&, const Literal&) = default;
};

inline Literal positive(std::size_t level) { return {level, true}; }
inline Literal negative(std::size_t level) { return {level, false}; }

/// Primitive events E_1..E_N, each novel with respect to the algebra generated
/// by its predecessors, together with the atom sets A_0..A_N.
class PrimitiveSequence {
 public:
  const Universe& universe() const noexcept { return universe_; }
  std::size_t universe_size() const noexcept { return universe_.size(); }
  std::size_t size() const noexcept { return events_.size(); }

  /// E_n for 1 <= n <= N.
  const Event& event(std::size_t level) const;
  Event literal_event(const Literal& literal) const;
  const std::vector<Event>& events() const noexcept { return events_; }

  /// A_n for 0 <= n <= N.
  const Partition& atoms(std::size_t level) const;
  /// Index in A_{n-1} of the block containing block `index` of A_n.
  std::size_t parent(std::size_t level, std::size_t index) const;
  /// Whether block `index` of A_n lies inside E_n (otherwise inside E_n^c).
  bool on_positive_side(std::size_t level, std::size_t index) const;

  /// Lowest level at which `event` is an atom, and its index there.
  std::optional<std::pair<std::size_t, std::size_t>> locate_atom(const Event& event) const;

  friend bool operator==(const PrimitiveSequence& a, const PrimitiveSequence& b) {
    return a.universe_ == b.universe_ && a.events_ == b.events_;
  }

 private:
  friend PrimitiveSequence validate_primitive_sequence(const Universe&, std::span<const Event>,
                                                       const Limits&);
  explicit PrimitiveSequence(const Universe& universe) : universe_(universe) {}
  void check_level(std::size_t level, std::size_t min) const;

  Universe universe_;
  std::vector<Event> events_;
  std::vector<Partition> atoms_;
  std::vector<std::vector<std::size_t>> parents_;
  std::vector<std::vector<bool>> positive_;
};

/// Throws ErrorCode::NoveltyViolation (level = first redundant n),
/// EmptySequence, TooManyEvents or UniverseMismatch.
PrimitiveSequence validate_primitive_sequence(const Universe& universe, std::span<const Event> events,
                                              const Limits& limits = {});

/// cause(E_n | atom) for the atoms of A_{n-1} on which E_n is uncertain.
/// Pairs whose truth is resolved carry no entry.
class CausalTable {
 public:
  CausalTable() = default;
  explicit CausalTable(const PrimitiveSequence& seq);

  std::size_t levels() const noexcept { return entries_.size(); }
  const std::optional<Rational>& entry(std::size_t level, std::size_t atom) const {
    return entries_.at(level - 1).at(atom);
  }
  std::size_t entry_count() const;

  friend bool operator==(const CausalTable&, const CausalTable&) = default;

 private:
  friend class CausalSpaceBuilder;
  friend class CausalSpace;
  std::vector<std::vector<std::optional<Rational>>> entries_;
};

/// Table row as supplied by a caller: the atom is given as an event and must
/// be a block of A_{level-1}.
struct CauseEntry {
  std::size_t level;
  Event atom;
  Rational p;
};

class CausalSpace {
 public:
  const PrimitiveSequence& sequence() const noexcept { return *sequence_; }
  const CausalTable& table() const noexcept { return table_; }
  std::size_t universe_size() const noexcept { return sequence_->universe_size(); }
  std::size_t levels() const noexcept { return sequence_->size(); }

  /// cause(literal | block `atom` of A_{n-1}), including forced values.
  Rational cause_at(const Literal& literal, std::size_t atom) const;

  /// Masses of the blocks of A_N, aligned with sequence().atoms(N).
  const std::vector<Rational>& leaf_masses() const noexcept { return leaf_masses_; }

  friend bool operator==(const CausalSpace& a, const CausalSpace& b) {
    return *a.sequence_ == *b.sequence_ && a.table_ == b.table_;
  }

 private:
  friend class CausalSpaceBuilder;
  CausalSpace(std::shared_ptr<const PrimitiveSequence> seq, CausalTable table);

  std::shared_ptr<const PrimitiveSequence> sequence_;
  CausalTable table_;
  std::vector<Rational> leaf_masses_;
};

/// Throws MissingEntry, DuplicateEntry, OutOfRange, ContradictsTruth,
/// NotAnAtom or LevelOutOfRange.
CausalSpace build_causal_space(PrimitiveSequence seq, std::span<const CauseEntry> entries);

/// cause(literal | atom) where `atom` is a block of A_{n-1}.
Rational cause(const CausalSpace& space, const Literal& literal, const Event& atom);

/// Product of cause values along the path from `root` down to `atom`. Both
/// must be atoms of some level, with atom contained in root.
Rational atom_mass(const CausalSpace& space, const Event& atom, const Event& root);
Rational atom_mass(const CausalSpace& space, const Event& atom);

/// Forces `literal` on every atom of A_{n-1} where E_n is uncertain.
CausalSpace intervene(const CausalSpace& space, const Literal& literal);

/// Successive interventions on literals at distinct levels whose
/// intersection is nonempty. Throws InvalidIntervention otherwise.
CausalSpace intervene_composite(const CausalSpace& space, std::span<const Literal> literals);

}  // namespace causalspace
