#include "causalspace/belief.hpp"

#include <limits>
#include <string>

#include "causalspace/error.hpp"

namespace causalspace {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void require_measurable(const CausalSpace& space, const Event& a) {
  if (a.universe_size() != space.universe_size()) {
    throw Error(ErrorCode::UniverseMismatch, "event " + a.str() + " is not over the model's universe");
  }
  if (!is_measurable(space, a)) {
    throw Error(ErrorCode::EventNotMeasurable,
                a.str() + " is not expressible in terms of the primitive events");
  }
}

// Sum of leaf masses under a measurable event; a leaf is inside iff its first
// outcome is.
Rational leaf_sum(const CausalSpace& space, const Event& a) {
  const Partition& leaves = space.sequence().atoms(space.levels());
  const auto& masses = space.leaf_masses();
  Rational total;
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    if (a.contains(*leaves[i].first())) total += masses[i];
  }
  return total;
}

void require_observations(const CausalSpace& space, const HypothesisSet& hyps, const Partition& obs) {
  if (obs.universe_size() != space.universe_size()) {
    throw Error(ErrorCode::UniverseMismatch, "observation partition is not over the model's universe");
  }
  for (const auto& block : obs) {
    if (!is_measurable(space, block)) {
      throw Error(ErrorCode::InvalidPartition, "observation " + block.str() + " is not measurable");
    }
  }
  if (hyps.size() == 0) throw Error(ErrorCode::InvalidPartition, "empty hypothesis set");
}

// Zero-prior hypotheses off the causal paths have no likelihood; NaN marks it.
template <typename F>
double undetermined_or(F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() != ErrorCode::UndeterminedConditional) throw;
    return std::numeric_limits<double>::quiet_NaN();
  }
}

}  // namespace

bool is_measurable(const CausalSpace& space, const Event& a) {
  return algebra_contains(space.sequence().atoms(space.levels()), a);
}

Rational mass(const CausalSpace& space, const Event& a) {
  require_measurable(space, a);
  return leaf_sum(space, a);
}

Rational belief(const CausalSpace& space, const Event& a, const Event& b) {
  require_same_universe(a, b);
  if (b.empty()) throw Error(ErrorCode::EmptyCondition, "cannot condition on the empty event");
  require_measurable(space, a);
  require_measurable(space, b);

  const Rational condition_mass = leaf_sum(space, b);
  if (!condition_mass.is_zero()) return leaf_sum(space, a & b) / condition_mass;

  switch (truth(a, b)) {
    case TruthValue::True: return Rational::one();
    case TruthValue::False: return Rational::zero();
    case TruthValue::Uncertain: break;
  }
  if (!space.sequence().locate_atom(b)) {
    throw Error(ErrorCode::UndeterminedConditional,
                "belief given " + b.str() + " is undetermined: the condition has zero mass and is not a path event");
  }
  const Event joint = a & b;
  Rational total;
  for (const auto& leaf : space.sequence().atoms(space.levels())) {
    if (leaf.is_subset_of(joint)) total += atom_mass(space, leaf, b);
  }
  return total;
}

Rational belief(const CausalSpace& space, const Event& a) {
  return belief(space, a, Event::all(space.universe_size()));
}

Rational belief_do(const CausalSpace& space, std::span<const Literal> do_literals, const Event& b,
                   const std::optional<Event>& given) {
  const CausalSpace intervened = intervene_composite(space, do_literals);
  Event condition = given.value_or(Event::all(space.universe_size()));
  for (const auto& literal : do_literals) condition = condition & space.sequence().literal_event(literal);
  return belief(intervened, b, condition);
}

HypothesisSet::HypothesisSet(const CausalSpace& space, std::vector<Event> hypotheses)
    : hypotheses_(std::move(hypotheses)) {
  Partition::from_blocks(space.universe_size(), hypotheses_);
  for (const auto& h : hypotheses_) {
    if (!is_measurable(space, h)) {
      throw Error(ErrorCode::InvalidPartition, "hypothesis " + h.str() + " is not measurable");
    }
  }
}

PosteriorVector prior(const CausalSpace& space, const HypothesisSet& hyps) {
  PosteriorVector out;
  out.reserve(hyps.size());
  for (const auto& h : hyps.events()) out.push_back(belief(space, h));
  return out;
}

PosteriorVector bayes_posterior(const CausalSpace& space, const HypothesisSet& hyps, const Event& d) {
  require_measurable(space, d);
  if (leaf_sum(space, d).is_zero()) {
    throw Error(ErrorCode::ZeroEvidence, "the observation " + d.str() + " has zero belief");
  }
  PosteriorVector terms;
  terms.reserve(hyps.size());
  Rational evidence;
  for (const auto& h : hyps.events()) {
    const Rational p = belief(space, h);
    // A zero prior contributes nothing, even when belief(d|h) is undetermined.
    Rational term = p.is_zero() ? Rational::zero() : belief(space, d, h) * p;
    evidence += term;
    terms.push_back(std::move(term));
  }
  for (auto& t : terms) t /= evidence;
  return terms;
}

PosteriorVector sequential_posterior(const CausalSpace& space, const HypothesisSet& hyps,
                                     std::span<const Event> data) {
  PosteriorVector current = prior(space, hyps);
  Event seen = Event::all(space.universe_size());
  for (std::size_t t = 0; t < data.size(); ++t) {
    require_measurable(space, data[t]);
    PosteriorVector terms;
    terms.reserve(hyps.size());
    Rational evidence;
    for (std::size_t n = 0; n < hyps.size(); ++n) {
      Rational term = current[n].is_zero() ? Rational::zero()
                                           : belief(space, data[t], hyps[n] & seen) * current[n];
      evidence += term;
      terms.push_back(std::move(term));
    }
    if (evidence.is_zero()) {
      throw Error(ErrorCode::ZeroEvidence,
                  "the observations have zero belief after step " + std::to_string(t + 1), std::nullopt, t);
    }
    for (auto& term : terms) term /= evidence;
    current = std::move(terms);
    seen = seen & data[t];
  }
  return current;
}

DiagnosticsReport posterior_log_decomposition(const CausalSpace& space, const HypothesisSet& hyps,
                                              const Partition& observations, std::size_t k) {
  require_observations(space, hyps, observations);
  if (k >= observations.size()) {
    throw Error(ErrorCode::InvalidIndex, "observation index " + std::to_string(k) + " out of range",
                std::nullopt, k);
  }
  const Event& x = observations[k];
  const Rational evidence = belief(space, x);
  if (evidence.is_zero()) throw Error(ErrorCode::ZeroEvidence, "the observation " + x.str() + " has zero belief");

  DiagnosticsReport report;
  report.evidence = evidence.log();
  for (const auto& h : hyps.events()) {
    const Rational p = belief(space, h);
    report.prior.push_back(p.log());
    report.likelihood.push_back(p.is_zero() ? undetermined_or([&] { return belief(space, x, h).log(); })
                                            : belief(space, x, h).log());
  }
  return report;
}

DiagnosticsReport expected_log_posterior(const CausalSpace& space, const HypothesisSet& hyps,
                                         const Partition& observations, std::size_t true_index) {
  require_observations(space, hyps, observations);
  if (true_index >= hyps.size()) {
    throw Error(ErrorCode::InvalidIndex, "hypothesis index " + std::to_string(true_index) + " out of range",
                std::nullopt, true_index);
  }
  std::vector<Rational> weights;
  weights.reserve(observations.size());
  for (const auto& x : observations) weights.push_back(belief(space, x, hyps[true_index]));

  // sum_k w_k log f(X_k) with 0 log 0 = 0
  auto expectation = [&](auto&& f) {
    double total = 0.0;
    for (std::size_t k = 0; k < observations.size(); ++k) {
      if (weights[k].is_zero()) continue;
      const Rational q = f(observations[k]);
      if (q.is_zero()) return kNegInf;
      total += weights[k].to_double() * q.log();
    }
    return total;
  };

  DiagnosticsReport report;
  report.evidence = expectation([&](const Event& x) { return belief(space, x); });
  for (const auto& h : hyps.events()) {
    const Rational p = belief(space, h);
    auto expected = [&] { return expectation([&](const Event& x) { return belief(space, x, h); }); };
    report.prior.push_back(p.log());
    report.likelihood.push_back(p.is_zero() ? undetermined_or(expected) : expected());
  }
  return report;
}

}  // namespace causalspace
