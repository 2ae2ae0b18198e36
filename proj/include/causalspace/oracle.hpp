#pragma once

#include <vector>

#include "causalspace/causal_space.hpp"
#include "causalspace/event.hpp"
#include "causalspace/rational.hpp"

// Brute-force reference computations for tests. Nothing here reuses the
// engine's atom bookkeeping: paths are enumerated from literal sign vectors
// and every product is formed from scratch.
namespace causalspace::oracle {

/// Finest atoms of the space with their unconditional masses, ordered by
/// smallest outcome.
struct JointTable {
  std::vector<Event> atoms;
  std::vector<Rational> masses;
};

JointTable oracle_joint(const CausalSpace& space);

/// mass(a & b) / mass(b) from the joint table. Throws
/// ErrorCode::ZeroMassCondition when mass(b) = 0 and EventNotMeasurable when an
/// argument is not a union of joint-table atoms.
Rational oracle_belief(const CausalSpace& space, const Event& a, const Event& b);
Rational oracle_belief(const JointTable& joint, const Event& a, const Event& b);

}  // namespace causalspace::oracle
