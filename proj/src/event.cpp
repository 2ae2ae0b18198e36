#include "causalspace/event.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "causalspace/error.hpp"

namespace causalspace {

namespace {

constexpr std::size_t kWordBits = 64;

std::size_t word_count(std::size_t bits) { return (bits + kWordBits - 1) / kWordBits; }

}  // namespace

void require_same_universe(const Event& a, const Event& b) {
  if (a.universe_size() != b.universe_size()) {
    throw Error(ErrorCode::UniverseMismatch, "events belong to universes of size " +
                                                 std::to_string(a.universe_size()) + " and " +
                                                 std::to_string(b.universe_size()));
  }
}

Event Event::none(std::size_t universe_size) {
  return Event(universe_size, std::vector<std::uint64_t>(word_count(universe_size), 0));
}

Event Event::all(std::size_t universe_size) {
  Event e(universe_size, std::vector<std::uint64_t>(word_count(universe_size), ~std::uint64_t{0}));
  e.trim();
  return e;
}

Event Event::of(std::size_t universe_size, std::span<const std::size_t> members) {
  Event e = none(universe_size);
  for (std::size_t m : members) {
    if (m >= universe_size) {
      throw Error(ErrorCode::OutcomeOutOfRange, "outcome " + std::to_string(m) +
                                                    " outside universe of size " +
                                                    std::to_string(universe_size));
    }
    e.words_[m / kWordBits] |= std::uint64_t{1} << (m % kWordBits);
  }
  return e;
}

void Event::trim() {
  if (const std::size_t tail = size_ % kWordBits; tail != 0 && !words_.empty()) {
    words_.back() &= (std::uint64_t{1} << tail) - 1;
  }
}

bool Event::contains(std::size_t outcome) const {
  if (outcome >= size_) return false;
  return (words_[outcome / kWordBits] >> (outcome % kWordBits)) & 1U;
}

std::size_t Event::count() const {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

bool Event::empty() const {
  return std::all_of(words_.begin(), words_.end(), [](auto w) { return w == 0; });
}

bool Event::full() const { return count() == size_; }

std::optional<std::size_t> Event::first() const {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] != 0) return i * kWordBits + static_cast<std::size_t>(std::countr_zero(words_[i]));
  }
  return std::nullopt;
}

std::vector<std::size_t> Event::members() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    for (auto w = words_[i]; w != 0; w &= w - 1) {
      out.push_back(i * kWordBits + static_cast<std::size_t>(std::countr_zero(w)));
    }
  }
  return out;
}

Event Event::complement() const {
  Event e = *this;
  for (auto& w : e.words_) w = ~w;
  e.trim();
  return e;
}

bool Event::is_subset_of(const Event& other) const {
  require_same_universe(*this, other);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if ((words_[i] & ~other.words_[i]) != 0) return false;
  }
  return true;
}

bool Event::intersects(const Event& other) const {
  require_same_universe(*this, other);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if ((words_[i] & other.words_[i]) != 0) return true;
  }
  return false;
}

Event operator&(const Event& a, const Event& b) {
  require_same_universe(a, b);
  Event e = a;
  for (std::size_t i = 0; i < e.words_.size(); ++i) e.words_[i] &= b.words_[i];
  return e;
}

Event operator|(const Event& a, const Event& b) {
  require_same_universe(a, b);
  Event e = a;
  for (std::size_t i = 0; i < e.words_.size(); ++i) e.words_[i] |= b.words_[i];
  return e;
}

Event operator-(const Event& a, const Event& b) {
  require_same_universe(a, b);
  Event e = a;
  for (std::size_t i = 0; i < e.words_.size(); ++i) e.words_[i] &= ~b.words_[i];
  return e;
}

std::string Event::str() const {
  std::string out = "{";
  bool first_member = true;
  for (auto m : members()) {
    if (!first_member) out += ',';
    out += std::to_string(m);
    first_member = false;
  }
  return out + "}";
}

Universe::Universe(std::size_t size, const Limits& limits) : size_(size) {
  if (size == 0) throw Error(ErrorCode::UniverseTooLarge, "universe must contain at least one outcome");
  if (size > limits.max_outcomes) {
    throw Error(ErrorCode::UniverseTooLarge, "universe of " + std::to_string(size) +
                                                 " outcomes exceeds the limit of " +
                                                 std::to_string(limits.max_outcomes));
  }
}

Partition::Partition(std::size_t universe_size) : Partition(universe_size, {Event::all(universe_size)}) {}

Partition::Partition(std::size_t universe_size, std::vector<Event> blocks)
    : size_(universe_size), blocks_(std::move(blocks)), owner_(universe_size, 0) {
  std::sort(blocks_.begin(), blocks_.end(),
            [](const Event& a, const Event& b) { return *a.first() < *b.first(); });
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    for (auto m : blocks_[i].members()) owner_[m] = static_cast<std::uint32_t>(i);
  }
}

Partition Partition::from_blocks(std::size_t universe_size, std::vector<Event> blocks) {
  Event covered = Event::none(universe_size);
  for (const auto& b : blocks) {
    if (b.universe_size() != universe_size) {
      throw Error(ErrorCode::UniverseMismatch, "partition block from a different universe");
    }
    if (b.empty()) throw Error(ErrorCode::InvalidPartition, "partition block is empty");
    if (b.intersects(covered)) throw Error(ErrorCode::InvalidPartition, "partition blocks overlap");
    covered = covered | b;
  }
  if (!covered.full()) throw Error(ErrorCode::InvalidPartition, "partition blocks do not cover the universe");
  return Partition(universe_size, std::move(blocks));
}

std::optional<std::size_t> Partition::index_of(const Event& block) const {
  if (block.universe_size() != size_) return std::nullopt;
  const auto first = block.first();
  if (!first) return std::nullopt;
  const std::size_t i = owner_[*first];
  if (blocks_[i] == block) return i;
  return std::nullopt;
}

std::string_view to_string(TruthValue value) {
  switch (value) {
    case TruthValue::True: return "True";
    case TruthValue::False: return "False";
    case TruthValue::Uncertain: return "Uncertain";
  }
  return "?";
}

Partition generate_atoms(std::size_t universe_size, std::span<const Event> events) {
  std::vector<Event> blocks{Event::all(universe_size)};
  for (const auto& e : events) {
    if (e.universe_size() != universe_size) {
      throw Error(ErrorCode::UniverseMismatch, "event " + e.str() + " is not over a universe of size " +
                                                   std::to_string(universe_size));
    }
    std::vector<Event> refined;
    refined.reserve(blocks.size() * 2);
    for (const auto& b : blocks) {
      Event inside = b & e;
      Event outside = b - e;
      if (!inside.empty()) refined.push_back(std::move(inside));
      if (!outside.empty()) refined.push_back(std::move(outside));
    }
    blocks = std::move(refined);
  }
  return Partition::from_blocks(universe_size, std::move(blocks));
}

bool algebra_contains(const Partition& atoms, const Event& a) {
  if (a.universe_size() != atoms.universe_size()) {
    throw Error(ErrorCode::UniverseMismatch, "event and partition belong to different universes");
  }
  for (const auto& block : atoms) {
    if (!block.is_subset_of(a) && block.intersects(a)) return false;
  }
  return true;
}

TruthValue truth(const Event& a, const Event& b) {
  require_same_universe(a, b);
  if (b.empty()) throw Error(ErrorCode::EmptyCondition, "truth is undefined given the empty event");
  if (b.is_subset_of(a)) return TruthValue::True;
  if (!a.intersects(b)) return TruthValue::False;
  return TruthValue::Uncertain;
}

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::UniverseMismatch: return "UniverseMismatch";
    case ErrorCode::UniverseTooLarge: return "UniverseTooLarge";
    case ErrorCode::OutcomeOutOfRange: return "OutcomeOutOfRange";
    case ErrorCode::EmptyCondition: return "EmptyCondition";
    case ErrorCode::InvalidPartition: return "InvalidPartition";
    case ErrorCode::EmptySequence: return "EmptySequence";
    case ErrorCode::TooManyEvents: return "TooManyEvents";
    case ErrorCode::NoveltyViolation: return "NoveltyViolation";
    case ErrorCode::NotAnAtom: return "NotAnAtom";
    case ErrorCode::LevelOutOfRange: return "LevelOutOfRange";
    case ErrorCode::MissingEntry: return "MissingEntry";
    case ErrorCode::DuplicateEntry: return "DuplicateEntry";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::ContradictsTruth: return "ContradictsTruth";
    case ErrorCode::InvalidIntervention: return "InvalidIntervention";
    case ErrorCode::EventNotMeasurable: return "EventNotMeasurable";
    case ErrorCode::UndeterminedConditional: return "UndeterminedConditional";
    case ErrorCode::ZeroEvidence: return "ZeroEvidence";
    case ErrorCode::InvalidIndex: return "InvalidIndex";
    case ErrorCode::ZeroMassCondition: return "ZeroMassCondition";
  }
  return "Unknown";
}

}  // namespace causalspace
