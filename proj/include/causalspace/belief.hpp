#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "causalspace/causal_space.hpp"
#include "causalspace/event.hpp"
#include "causalspace/rational.hpp"

namespace causalspace {

/// Whether `a` belongs to the algebra generated by the primitive events.
bool is_measurable(const CausalSpace& space, const Event& a);

/// Unconditional mass of a measurable event.
Rational mass(const CausalSpace& space, const Event& a);

/// Belief in `a` given `b` in the induced belief space.
///
/// Positive-mass conditions use the ratio mass(a & b) / mass(b). A zero-mass
/// condition is answered when `b` is an atom of some level (a path event) by
/// re-rooting the path products at `b`, or when the truth of `a` given `b` is
/// already resolved. Any other zero-mass condition throws
/// ErrorCode::UndeterminedConditional.
Rational belief(const CausalSpace& space, const Event& a, const Event& b);
Rational belief(const CausalSpace& space, const Event& a);

/// belief(b | given & D) in the space obtained by intervening on every
/// literal, where D is the intersection of the literals.
Rational belief_do(const CausalSpace& space, std::span<const Literal> do_literals, const Event& b,
                   const std::optional<Event>& given = std::nullopt);

/// Measurable, nonempty, pairwise disjoint events covering the universe.
class HypothesisSet {
 public:
  /// Throws ErrorCode::InvalidPartition.
  HypothesisSet(const CausalSpace& space, std::vector<Event> hypotheses);

  std::size_t size() const noexcept { return hypotheses_.size(); }
  const Event& operator[](std::size_t i) const { return hypotheses_[i]; }
  const std::vector<Event>& events() const noexcept { return hypotheses_; }

 private:
  std::vector<Event> hypotheses_;
};

using PosteriorVector = std::vector<Rational>;

PosteriorVector prior(const CausalSpace& space, const HypothesisSet& hyps);

/// Throws ErrorCode::ZeroEvidence when belief(d) = 0.
PosteriorVector bayes_posterior(const CausalSpace& space, const HypothesisSet& hyps, const Event& d);

/// One Bayes update per datum, each using the previous posterior as prior and
/// the likelihood conditioned on everything seen so far. Throws ZeroEvidence
/// with index() set to the zero-based step at which the evidence vanishes.
PosteriorVector sequential_posterior(const CausalSpace& space, const HypothesisSet& hyps,
                                     std::span<const Event> data);

/// Natural-log diagnostics. For the single-observation decomposition,
/// `likelihood[n]` is log belief(X_k|H_n), `prior[n]` log belief(H_n) and
/// `evidence` log belief(X_k). For the expected form the likelihood and
/// evidence entries are averages under belief(.|H_*).
struct DiagnosticsReport {
  std::vector<double> likelihood;
  std::vector<double> prior;
  double evidence = 0.0;

  /// likelihood[n] + prior[n] - evidence; -infinity whenever the prior is
  /// zero, including when the likelihood is undetermined (NaN).
  double log_posterior(std::size_t n) const {
    if (std::isinf(prior[n]) && prior[n] < 0) return prior[n];
    return likelihood[n] + prior[n] - evidence;
  }
};

DiagnosticsReport posterior_log_decomposition(const CausalSpace& space, const HypothesisSet& hyps,
                                              const Partition& observations, std::size_t k);

DiagnosticsReport expected_log_posterior(const CausalSpace& space, const HypothesisSet& hyps,
                                         const Partition& observations, std::size_t true_index);

}  // namespace causalspace
