#include "causalspace/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>

#include "causalspace/error.hpp"

namespace causalspace::oracle {

JointTable oracle_joint(const CausalSpace& space) {
  const auto& seq = space.sequence();
  const std::size_t levels = seq.size();
  const std::size_t universe = space.universe_size();

  std::vector<std::pair<Event, Rational>> rows;
  for (std::uint64_t signs = 0; signs < (std::uint64_t{1} << levels); ++signs) {
    Event path = Event::all(universe);
    Rational product = Rational::one();
    bool reachable = true;
    for (std::size_t j = 1; j <= levels; ++j) {
      const bool positive = ((signs >> (j - 1)) & 1U) != 0;
      const Event literal = positive ? seq.event(j) : seq.event(j).complement();
      const Event next = path & literal;
      if (next.empty()) {
        reachable = false;
        break;
      }
      product *= cause(space, Literal{j, positive}, path);
      path = next;
    }
    if (reachable) rows.emplace_back(std::move(path), std::move(product));
  }
  std::sort(rows.begin(), rows.end(),
            [](const auto& x, const auto& y) { return *x.first.first() < *y.first.first(); });

  JointTable table;
  for (auto& [atom, mass] : rows) {
    table.atoms.push_back(std::move(atom));
    table.masses.push_back(std::move(mass));
  }
  return table;
}

Rational oracle_belief(const CausalSpace& space, const Event& a, const Event& b) {
  return oracle_belief(oracle_joint(space), a, b);
}

Rational oracle_belief(const JointTable& joint, const Event& a, const Event& b) {
  Rational numerator;
  Rational denominator;
  for (std::size_t i = 0; i < joint.atoms.size(); ++i) {
    const auto members = joint.atoms[i].members();
    const auto in_a = std::count_if(members.begin(), members.end(), [&](auto m) { return a.contains(m); });
    const auto in_b = std::count_if(members.begin(), members.end(), [&](auto m) { return b.contains(m); });
    const auto size = static_cast<std::ptrdiff_t>(members.size());
    if ((in_a != 0 && in_a != size) || (in_b != 0 && in_b != size)) {
      throw Error(ErrorCode::EventNotMeasurable, "oracle: argument splits atom " + joint.atoms[i].str());
    }
    if (in_b == size) {
      denominator += joint.masses[i];
      if (in_a == size) numerator += joint.masses[i];
    }
  }
  if (denominator.is_zero()) throw Error(ErrorCode::ZeroMassCondition, "oracle: conditioning event has zero mass");
  return numerator / denominator;
}

}  // namespace causalspace::oracle
