#include "causalspace/causal_space.hpp"

#include <set>
#include <string>
#include <utility>

#include "causalspace/error.hpp"

namespace causalspace {

namespace {

std::string level_str(std::size_t level) { return "E" + std::to_string(level); }

}  // namespace

class CausalSpaceBuilder {
 public:
  static CausalSpace make(std::shared_ptr<const PrimitiveSequence> seq, CausalTable table) {
    return CausalSpace(std::move(seq), std::move(table));
  }
  static std::shared_ptr<const PrimitiveSequence> sequence(const CausalSpace& space) {
    return space.sequence_;
  }
  static std::vector<std::vector<std::optional<Rational>>>& entries(CausalTable& table) {
    return table.entries_;
  }
};

// PrimitiveSequence

void PrimitiveSequence::check_level(std::size_t level, std::size_t min) const {
  if (level < min || level > events_.size()) {
    throw Error(ErrorCode::LevelOutOfRange,
                "level " + std::to_string(level) + " outside " + std::to_string(min) + ".." +
                    std::to_string(events_.size()),
                level);
  }
}

const Event& PrimitiveSequence::event(std::size_t level) const {
  check_level(level, 1);
  return events_[level - 1];
}

Event PrimitiveSequence::literal_event(const Literal& literal) const {
  const Event& e = event(literal.level);
  return literal.positive ? e : e.complement();
}

const Partition& PrimitiveSequence::atoms(std::size_t level) const {
  check_level(level, 0);
  return atoms_[level];
}

std::size_t PrimitiveSequence::parent(std::size_t level, std::size_t index) const {
  check_level(level, 1);
  return parents_[level - 1].at(index);
}

bool PrimitiveSequence::on_positive_side(std::size_t level, std::size_t index) const {
  check_level(level, 1);
  return positive_[level - 1].at(index);
}

std::optional<std::pair<std::size_t, std::size_t>> PrimitiveSequence::locate_atom(const Event& event) const {
  for (std::size_t level = 0; level < atoms_.size(); ++level) {
    if (auto i = atoms_[level].index_of(event)) return std::make_pair(level, *i);
  }
  return std::nullopt;
}

PrimitiveSequence validate_primitive_sequence(const Universe& universe, std::span<const Event> events,
                                              const Limits& limits) {
  if (events.empty()) throw Error(ErrorCode::EmptySequence, "a causal space needs at least one primitive event");
  if (events.size() > limits.max_events) {
    throw Error(ErrorCode::TooManyEvents, std::to_string(events.size()) +
                                              " primitive events exceed the limit of " +
                                              std::to_string(limits.max_events));
  }
  PrimitiveSequence seq(universe);
  seq.atoms_.emplace_back(universe.size());
  for (std::size_t n = 1; n <= events.size(); ++n) {
    const Event& e = events[n - 1];
    if (e.universe_size() != universe.size()) {
      throw Error(ErrorCode::UniverseMismatch,
                  level_str(n) + " is not over a universe of size " + std::to_string(universe.size()), n);
    }
    const Partition& previous = seq.atoms_.back();
    if (algebra_contains(previous, e)) {
      throw Error(ErrorCode::NoveltyViolation,
                  level_str(n) + " = " + e.str() + " is expressible in terms of the preceding events", n);
    }
    seq.events_.push_back(e);
    Partition refined = generate_atoms(universe.size(), seq.events_);
    std::vector<std::size_t> parents;
    std::vector<bool> positive;
    parents.reserve(refined.size());
    positive.reserve(refined.size());
    for (const auto& block : refined) {
      const std::size_t first = *block.first();
      parents.push_back(previous.block_of(first));
      positive.push_back(e.contains(first));
    }
    seq.parents_.push_back(std::move(parents));
    seq.positive_.push_back(std::move(positive));
    seq.atoms_.push_back(std::move(refined));
  }
  return seq;
}

// CausalTable

CausalTable::CausalTable(const PrimitiveSequence& seq) {
  entries_.reserve(seq.size());
  for (std::size_t n = 1; n <= seq.size(); ++n) {
    entries_.emplace_back(seq.atoms(n - 1).size());
  }
}

std::size_t CausalTable::entry_count() const {
  std::size_t count = 0;
  for (const auto& level : entries_) {
    for (const auto& e : level) count += e.has_value() ? 1 : 0;
  }
  return count;
}

// CausalSpace

CausalSpace::CausalSpace(std::shared_ptr<const PrimitiveSequence> seq, CausalTable table)
    : sequence_(std::move(seq)), table_(std::move(table)) {
  std::vector<Rational> masses{Rational::one()};
  for (std::size_t n = 1; n <= sequence_->size(); ++n) {
    const Partition& level = sequence_->atoms(n);
    std::vector<Rational> next;
    next.reserve(level.size());
    for (std::size_t i = 0; i < level.size(); ++i) {
      const std::size_t parent = sequence_->parent(n, i);
      next.push_back(masses[parent] * cause_at({n, sequence_->on_positive_side(n, i)}, parent));
    }
    masses = std::move(next);
  }
  leaf_masses_ = std::move(masses);
}

Rational CausalSpace::cause_at(const Literal& literal, std::size_t atom) const {
  const Event& e = sequence_->event(literal.level);
  const Partition& atoms = sequence_->atoms(literal.level - 1);
  if (atom >= atoms.size()) {
    throw Error(ErrorCode::NotAnAtom,
                "atom index " + std::to_string(atom) + " outside A" + std::to_string(literal.level - 1),
                literal.level, atom);
  }
  const Rational p = [&] {
    if (const auto& entry = table_.entry(literal.level, atom)) return *entry;
    return atoms[atom].is_subset_of(e) ? Rational::one() : Rational::zero();
  }();
  return literal.positive ? p : Rational::one() - p;
}

CausalSpace build_causal_space(PrimitiveSequence seq, std::span<const CauseEntry> entries) {
  CausalTable table(seq);
  auto& rows = CausalSpaceBuilder::entries(table);
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& entry : entries) {
    if (entry.level < 1 || entry.level > seq.size()) {
      throw Error(ErrorCode::LevelOutOfRange,
                  "cause entry at level " + std::to_string(entry.level) + " outside 1.." +
                      std::to_string(seq.size()),
                  entry.level);
    }
    const Partition& atoms = seq.atoms(entry.level - 1);
    const auto index = atoms.index_of(entry.atom);
    if (!index) {
      throw Error(ErrorCode::NotAnAtom,
                  entry.atom.str() + " is not an atom of A" + std::to_string(entry.level - 1), entry.level);
    }
    if (!seen.emplace(entry.level, *index).second) {
      throw Error(ErrorCode::DuplicateEntry,
                  "duplicate cause entry for " + level_str(entry.level) + " given " + entry.atom.str(),
                  entry.level, *index);
    }
    if (!entry.p.is_probability()) {
      throw Error(ErrorCode::OutOfRange, "cause value " + entry.p.str() + " outside [0,1]", entry.level, *index);
    }
    const Event& e = seq.event(entry.level);
    const TruthValue t = truth(e, entry.atom);
    if (t == TruthValue::Uncertain) {
      rows[entry.level - 1][*index] = entry.p;
      continue;
    }
    const Rational forced = t == TruthValue::True ? Rational::one() : Rational::zero();
    if (entry.p != forced) {
      throw Error(ErrorCode::ContradictsTruth,
                  "cause of " + level_str(entry.level) + " given " + entry.atom.str() + " is forced to " +
                      forced.str() + " but " + entry.p.str() + " was given",
                  entry.level, *index);
    }
  }
  for (std::size_t n = 1; n <= seq.size(); ++n) {
    const Partition& atoms = seq.atoms(n - 1);
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      if (truth(seq.event(n), atoms[i]) == TruthValue::Uncertain && !rows[n - 1][i]) {
        throw Error(ErrorCode::MissingEntry,
                    "missing cause entry for " + level_str(n) + " given " + atoms[i].str(), n, i);
      }
    }
  }
  return CausalSpaceBuilder::make(std::make_shared<const PrimitiveSequence>(std::move(seq)), std::move(table));
}

Rational cause(const CausalSpace& space, const Literal& literal, const Event& atom) {
  const auto& seq = space.sequence();
  seq.event(literal.level);
  const Partition& atoms = seq.atoms(literal.level - 1);
  const auto index = atoms.index_of(atom);
  if (!index) {
    throw Error(ErrorCode::NotAnAtom, atom.str() + " is not an atom of A" + std::to_string(literal.level - 1),
                literal.level);
  }
  return space.cause_at(literal, *index);
}

Rational atom_mass(const CausalSpace& space, const Event& atom, const Event& root) {
  const auto& seq = space.sequence();
  const auto leaf = seq.locate_atom(atom);
  if (!leaf) throw Error(ErrorCode::NotAnAtom, atom.str() + " is not an atom at any level");
  const auto top = seq.locate_atom(root);
  if (!top) throw Error(ErrorCode::NotAnAtom, root.str() + " is not an atom at any level");
  if (!atom.is_subset_of(root)) {
    throw Error(ErrorCode::NotAnAtom, atom.str() + " is not contained in " + root.str());
  }
  auto [level, index] = *leaf;
  Rational product = Rational::one();
  for (; level > top->first; --level) {
    const std::size_t parent = seq.parent(level, index);
    product *= space.cause_at({level, seq.on_positive_side(level, index)}, parent);
    index = parent;
  }
  return product;
}

Rational atom_mass(const CausalSpace& space, const Event& atom) {
  return atom_mass(space, atom, Event::all(space.universe_size()));
}

CausalSpace intervene(const CausalSpace& space, const Literal& literal) {
  const auto& seq = space.sequence();
  seq.event(literal.level);
  CausalTable table = space.table();
  for (auto& entry : CausalSpaceBuilder::entries(table)[literal.level - 1]) {
    if (entry) entry = literal.positive ? Rational::one() : Rational::zero();
  }
  return CausalSpaceBuilder::make(CausalSpaceBuilder::sequence(space), std::move(table));
}

CausalSpace intervene_composite(const CausalSpace& space, std::span<const Literal> literals) {
  const auto& seq = space.sequence();
  std::set<std::size_t> levels;
  Event joint = Event::all(space.universe_size());
  for (const auto& literal : literals) {
    if (!levels.insert(literal.level).second) {
      throw Error(ErrorCode::InvalidIntervention,
                  "more than one intervention at level " + std::to_string(literal.level), literal.level);
    }
    joint = joint & seq.literal_event(literal);
  }
  if (!literals.empty() && joint.empty()) {
    throw Error(ErrorCode::InvalidIntervention, "intervened literals have an empty intersection");
  }
  CausalSpace result = space;
  for (const auto& literal : literals) result = intervene(result, literal);
  return result;
}

}  // namespace causalspace
