#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace causalspace {

inline constexpr std::size_t kDefaultMaxOutcomes = 4096;
inline constexpr std::size_t kDefaultMaxEvents = 20;

/// Size caps applied when building universes and primitive sequences.
struct Limits {
  std::size_t max_outcomes = kDefaultMaxOutcomes;
  std::size_t max_events = kDefaultMaxEvents;
};

/// A subset of the outcome universe {0, ..., M-1}, stored as a bit vector.
/// Binary operations require both operands to come from universes of the same
/// size and throw ErrorCode::UniverseMismatch otherwise.
class Event {
 public:
  Event() = default;

  static Event none(std::size_t universe_size);
  static Event all(std::size_t universe_size);
  static Event of(std::size_t universe_size, std::span<const std::size_t> members);
  static Event of(std::size_t universe_size, std::initializer_list<std::size_t> members) {
    return of(universe_size, std::span<const std::size_t>(members.begin(), members.size()));
  }

  std::size_t universe_size() const noexcept { return size_; }

  bool contains(std::size_t outcome) const;
  std::size_t count() const;
  bool empty() const;
  bool full() const;
  std::optional<std::size_t> first() const;
  std::vector<std::size_t> members() const;

  Event complement() const;
  bool is_subset_of(const Event& other) const;
  bool intersects(const Event& other) const;

  friend Event operator&(const Event& a, const Event& b);
  friend Event operator|(const Event& a, const Event& b);
  friend Event operator-(const Event& a, const Event& b);
  Event operator~() const { return complement(); }

  friend bool operator==(const Event& a, const Event& b) = default;

  /// "{0,1,3}"
  std::string str() const;

 private:
  Event(std::size_t size, std::vector<std::uint64_t> words)
      : size_(size), words_(std::move(words)) {}
  void trim();

  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

void require_same_universe(const Event& a, const Event& b);

/// Finite outcome universe of size M with 1 <= M <= limits.max_outcomes.
class Universe {
 public:
  explicit Universe(std::size_t size, const Limits& limits = {});

  std::size_t size() const noexcept { return size_; }
  Event all() const { return Event::all(size_); }
  Event none() const { return Event::none(size_); }
  Event event(std::initializer_list<std::size_t> members) const { return Event::of(size_, members); }
  Event event(std::span<const std::size_t> members) const { return Event::of(size_, members); }

  friend bool operator==(const Universe&, const Universe&) = default;

 private:
  std::size_t size_;
};

/// Disjoint nonempty blocks covering the universe, ordered by their smallest
/// outcome. Equality is structural.
class Partition {
 public:
  /// The trivial partition {Omega}.
  explicit Partition(std::size_t universe_size);
  /// Validates and canonicalizes; throws ErrorCode::InvalidPartition.
  static Partition from_blocks(std::size_t universe_size, std::vector<Event> blocks);

  std::size_t universe_size() const noexcept { return size_; }
  std::size_t size() const noexcept { return blocks_.size(); }
  const Event& operator[](std::size_t i) const { return blocks_[i]; }
  const std::vector<Event>& blocks() const noexcept { return blocks_; }
  auto begin() const { return blocks_.begin(); }
  auto end() const { return blocks_.end(); }

  /// Index of the block holding `outcome`.
  std::size_t block_of(std::size_t outcome) const { return owner_[outcome]; }
  /// Index of `block` if it is one of the blocks.
  std::optional<std::size_t> index_of(const Event& block) const;

  friend bool operator==(const Partition& a, const Partition& b) { return a.blocks_ == b.blocks_; }

 private:
  Partition(std::size_t universe_size, std::vector<Event> blocks);

  std::size_t size_;
  std::vector<Event> blocks_;
  std::vector<std::uint32_t> owner_;
};

enum class TruthValue { True, False, Uncertain };

std::string_view to_string(TruthValue value);

/// Refines {Omega} by each event in turn. The result is the atom set of the
/// algebra generated by `events`.
Partition generate_atoms(std::size_t universe_size, std::span<const Event> events);

/// True iff `a` is a union of blocks of `atoms`.
bool algebra_contains(const Partition& atoms, const Event& a);

/// Truth of `a` given that `b` holds. Throws ErrorCode::EmptyCondition for an
/// empty `b`.
TruthValue truth(const Event& a, const Event& b);

}  // namespace causalspace
