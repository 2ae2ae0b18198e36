// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <sys/wait.h>
#include <string>
#include <vector>

#include "causalspace/belief.hpp"
#include "causalspace/cli.hpp"
#include "causalspace/dsl.hpp"
#include "causalspace/error.hpp"
#include "causalspace/oracle.hpp"
#include "support/spaces.hpp"

using namespace causalspace;
namespace ct = causalspace::testing;

namespace {

constexpr std::size_t kCorpusSize = 200;
constexpr std::size_t kGibbsSpaces = 100;
constexpr std::size_t kRoundTripSpaces = 50;
constexpr double kGibbsTolerance = 1e-12;
constexpr double kDiagnosticsTolerance = 1e-12;
constexpr double kAxiomRuntimeSeconds = 60.0;
constexpr std::uint64_t kCorpusSeed = 20240601;
constexpr std::uint64_t kGibbsSeed = 20240602;
constexpr std::uint64_t kRoundTripSeed = 20240603;

struct Verdict {
  bool pass = true;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (notes.size() < 5) notes.push_back(what);
    }
  }
};

int failures = 0;

void report(int number, const std::string& title, const Verdict& v, const std::string& detail) {
  std::cout << (v.pass ? "[PASS] " : "[FAIL] ") << number << ". " << title << ": " << detail << '\n';
  for (const auto& n : v.notes) std::cout << "         " << n << '\n';
  if (!v.pass) ++failures;
}

std::vector<CausalSpace> make_corpus(std::uint64_t seed, std::size_t count, const ct::RandomSpaceOptions& opts) {
  std::mt19937_64 rng(seed);
  std::vector<CausalSpace> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(ct::random_space(rng, opts));
  return out;
}

// Engine beliefs for every measurable pair, indexed by leaf bit masks;
// empty where the condition has zero mass.
struct BeliefTable {
  std::vector<Event> events;
  std::vector<Rational> masses;
  std::vector<std::vector<std::optional<Rational>>> value;  // [a][b]
};

BeliefTable tabulate(const CausalSpace& space) {
  BeliefTable t;
  t.events = ct::measurable_events(space);
  const std::size_t k = t.events.size();
  t.masses.reserve(k);
  for (const auto& e : t.events) t.masses.push_back(mass(space, e));
  t.value.assign(k, std::vector<std::optional<Rational>>(k));
  for (std::size_t b = 1; b < k; ++b) {
    if (t.masses[b].is_zero()) continue;
    for (std::size_t a = 0; a < k; ++a) t.value[a][b] = belief(space, t.events[a], t.events[b]);
  }
  return t;
}

std::string seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2fs", s);
  return buf;
}

// ---------------------------------------------------------------------------

void criterion_axioms(const std::vector<CausalSpace>& corpus, const std::vector<BeliefTable>& tables,
                      double tabulate_seconds) {
  const auto start = std::chrono::steady_clock::now();
  Verdict v;
  std::uint64_t pairs = 0;
  std::uint64_t triples = 0;
  for (std::size_t s = 0; s < corpus.size(); ++s) {
    const auto& t = tables[s];
    const std::size_t k = t.events.size();
    const std::size_t full = k - 1;
    for (std::size_t b = 1; b < k; ++b) {
      if (t.masses[b].is_zero()) continue;
      for (std::size_t a = 0; a < k; ++a) {
        const Rational& p = *t.value[a][b];
        ++pairs;
        const std::string where = "space " + std::to_string(s) + " pair (" + std::to_string(a) + "," +
                                  std::to_string(b) + ")";
        v.require(p.is_probability(), "B1 " + where);
        if ((b & ~a) == 0) v.require(p == 1, "B2 " + where);
        if ((a & b) == 0) v.require(p == 0, "B3 " + where);
        v.require(p + *t.value[full & ~a][b] == 1, "B4 " + where);
      }
    }
    // B5: belief(A&B|C) = belief(A|C) belief(B|A&C) with both conditions positive.
    for (std::size_t c = 1; c < k; ++c) {
      if (t.masses[c].is_zero()) continue;
      for (std::size_t a = 0; a < k; ++a) {
        const std::size_t ac = a & c;
        if (t.masses[ac].is_zero()) continue;
        const Rational& pa = *t.value[a][c];
        for (std::size_t b = 0; b < k; ++b) {
          ++triples;
          if (*t.value[a & b][c] != pa * *t.value[b][ac]) {
            v.require(false, "B5 space " + std::to_string(s) + " triple (" + std::to_string(a) + "," +
                                 std::to_string(b) + "," + std::to_string(c) + ")");
          }
        }
      }
    }
  }
  const double elapsed =
      tabulate_seconds + std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  v.require(elapsed < kAxiomRuntimeSeconds, "runtime " + seconds(elapsed) + " exceeds target");
  report(1, "belief axioms B1-B5", v,
         std::to_string(corpus.size()) + " spaces, " + std::to_string(pairs) + " pairs, " +
             std::to_string(triples) + " triples, exact; runtime " + seconds(elapsed) + " (< 60s)");
}

void criterion_oracle(const std::vector<CausalSpace>& corpus, const std::vector<BeliefTable>& tables) {
  Verdict v;
  std::uint64_t compared = 0;
  for (std::size_t s = 0; s < corpus.size(); ++s) {
    const auto joint = oracle::oracle_joint(corpus[s]);
    const auto& t = tables[s];
    for (std::size_t b = 1; b < t.events.size(); ++b) {
      if (!t.value[0][b]) continue;
      for (std::size_t a = 0; a < t.events.size(); ++a) {
        ++compared;
        if (oracle::oracle_belief(joint, t.events[a], t.events[b]) != *t.value[a][b]) {
          v.require(false, "space " + std::to_string(s) + " pair (" + std::to_string(a) + "," +
                               std::to_string(b) + ")");
        }
      }
    }
  }
  report(2, "oracle equivalence", v, std::to_string(compared) + " positive-mass pairs, zero tolerance");
}

void criterion_rx() {
  Verdict v;
  const auto rx = ct::make_rx();
  const Universe u(4);
  const Event e1 = u.event({0, 1});
  const Event e2 = u.event({0, 2});
  const Rational observed = belief(rx, e1, e2);
  const Rational intervened = belief_do(rx, std::vector{positive(2)}, e1);
  const Rational marginal = belief(rx, e1);
  v.require(observed == Rational(4, 7), "belief(E1|E2) = " + observed.str());
  v.require(intervened == Rational(1, 2), "belief(E1|do(E2)) = " + intervened.str());
  v.require(marginal == Rational(1, 2), "belief(E1) = " + marginal.str());
  v.require(oracle::oracle_belief(rx, e1, e2) == observed, "oracle disagrees on belief(E1|E2)");
  v.require(oracle::oracle_belief(intervene(rx, positive(2)), e1, e2) == intervened,
            "oracle disagrees on belief(E1|do(E2))");
  report(3, "fixture RX values", v,
         "belief(E1|E2) = " + observed.str() + ", belief(E1|do(E2)) = " + intervened.str() +
             ", belief(E1) = " + marginal.str());
}

void criterion_interventions(const std::vector<CausalSpace>& corpus) {
  Verdict v;
  std::uint64_t idempotent = 0;
  std::uint64_t commuting = 0;
  std::uint64_t marginal_checks = 0;
  std::uint64_t conditional_checks = 0;
  std::uint64_t conditional_violations = 0;
  std::uint64_t restricted_checks = 0;
  std::uint64_t restricted_violations = 0;
  std::string first_violation;

  for (std::size_t s = 0; s < corpus.size(); ++s) {
    const auto& space = corpus[s];
    const auto& seq = space.sequence();
    for (std::size_t n = 1; n <= seq.size(); ++n) {
      for (const Literal lit : {positive(n), negative(n)}) {
        const auto after = intervene(space, lit);
        ++idempotent;
        v.require(intervene(after, lit) == after, "idempotence, space " + std::to_string(s));
        for (std::size_t m = 1; m <= seq.size(); ++m) {
          if (m == n) continue;
          for (const Literal other : {positive(m), negative(m)}) {
            ++commuting;
            v.require(intervene(after, other) == intervene(intervene(space, other), lit),
                      "commutativity, space " + std::to_string(s));
          }
        }

        // Past invariance for C in the algebra of A_{n-1}.
        const Event a = seq.literal_event(lit);
        const bool a_positive = !mass(after, a).is_zero();
        bool uncertain_everywhere = true;
        for (const auto& block : seq.atoms(n - 1)) {
          if (truth(a, block) != TruthValue::Uncertain) uncertain_everywhere = false;
        }
        for (const auto& c : ct::all_unions(seq.atoms(n - 1))) {
          ++marginal_checks;
          const Rational before = belief(space, c);
          v.require(belief(after, c) == before, "belief'(C) != belief(C), space " + std::to_string(s));
          if (!a_positive) continue;
          ++conditional_checks;
          const bool holds = belief(after, c, a) == before;
          if (!holds) {
            ++conditional_violations;
            if (first_violation.empty()) {
              first_violation = "space " + std::to_string(s) + ", A = " + a.str() + " (level " +
                                std::to_string(n) + "), C = " + c.str() + ": belief'(C|A) = " +
                                belief(after, c, a).str() + ", belief(C) = " + before.str();
            }
          }
          if (uncertain_everywhere) {
            ++restricted_checks;
            if (!holds) ++restricted_violations;
          }
        }
      }
    }
  }
  if (conditional_violations > 0) {
    v.require(false, "belief'(C|A) = belief(C) fails in " + std::to_string(conditional_violations) + " of " +
                         std::to_string(conditional_checks) + " cases; first: " + first_violation);
  }
  report(4, "intervention laws", v,
         std::to_string(idempotent) + " idempotence, " + std::to_string(commuting) + " commutation, " +
             std::to_string(marginal_checks) + " belief'(C) and " + std::to_string(conditional_checks) +
             " belief'(C|A) checks");
  std::cout << "         info: when A is uncertain on every atom of the preceding level, belief'(C|A) = belief(C) "
            << "held in " << (restricted_checks - restricted_violations) << " of " << restricted_checks
            << " cases\n";
}

void criterion_zero_mass(const std::vector<CausalSpace>& corpus) {
  Verdict v;
  const Universe u(4);
  const Event e1 = u.event({0, 1});
  const Event e2 = u.event({0, 2});
  const auto rz = ct::make_rz();
  v.require(belief(rz, e1) == 0, "belief(E1) on RZ is not 0");
  const Rational conditional = belief(rz, e2, e1);
  v.require(conditional == Rational(1, 3), "belief(E2|E1) on RZ = " + conditional.str());

  auto raises_undetermined = [](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.code() == ErrorCode::UndeterminedConditional;
    }
    return false;
  };
  v.require(raises_undetermined([&] { belief(ct::make_rw(), e1, e2); }), "RW: belief(E1|E2) did not raise");

  // Corpus: every zero-mass condition is either a path event answered by its
  // re-rooted oracle, or raises (unless the truth value is resolved).
  std::uint64_t path_checks = 0;
  std::uint64_t raised = 0;
  for (std::size_t s = 0; s < corpus.size(); ++s) {
    const auto& space = corpus[s];
    const auto& seq = space.sequence();
    const auto events = ct::measurable_events(space);
    for (const auto& b : events) {
      if (b.empty() || !mass(space, b).is_zero()) continue;
      const auto located = seq.locate_atom(b);
      std::optional<CausalSpace> forced;
      if (located) forced = intervene_composite(space, dsl::atom_literals(seq, located->first, located->second));
      for (const auto& a : events) {
        if (located) {
          ++path_checks;
          v.require(belief(space, a, b) == oracle::oracle_belief(*forced, a, b),
                    "path conditioning, space " + std::to_string(s) + ", b = " + b.str());
        } else if (truth(a, b) == TruthValue::Uncertain) {
          ++raised;
          v.require(raises_undetermined([&] { belief(space, a, b); }),
                    "non-path condition answered, space " + std::to_string(s) + ", b = " + b.str());
        }
      }
    }
  }
  report(5, "zero-mass conditioning", v,
         "RZ belief(E2|E1) = " + conditional.str() + " with belief(E1) = 0; " + std::to_string(path_checks) +
             " path-event and " + std::to_string(raised) + " undetermined cases on the corpus");
}

void criterion_bayes(const std::vector<CausalSpace>& corpus, const std::vector<BeliefTable>& tables) {
  Verdict v;
  std::mt19937_64 rng(kCorpusSeed + 6);
  std::uint64_t posteriors = 0;
  std::uint64_t sequential = 0;
  std::uint64_t forced = 0;
  for (std::size_t s = 0; s < corpus.size(); ++s) {
    const auto& space = corpus[s];
    const auto& t = tables[s];
    const HypothesisSet hyps(space, ct::random_grouping(space, rng));
    for (std::size_t d = 1; d < t.events.size(); ++d) {
      if (t.masses[d].is_zero()) continue;
      const auto post = bayes_posterior(space, hyps, t.events[d]);
      ++posteriors;
      Rational total;
      for (std::size_t n = 0; n < hyps.size(); ++n) {
        v.require(post[n] == belief(space, hyps[n], t.events[d]), "posterior != belief(H|D), space " +
                                                                      std::to_string(s));
        total += post[n];
      }
      v.require(total == 1, "posterior does not sum to 1, space " + std::to_string(s));
      if (t.events[d].is_subset_of(hyps[0])) {
        ++forced;
        PosteriorVector unit(hyps.size(), Rational(0));
        unit[0] = 1;
        v.require(post == unit, "d inside H_1 did not force (1,0,...), space " + std::to_string(s));
      }
    }
    std::uniform_int_distribution<std::size_t> pick(1, t.events.size() - 1);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<Event> data;
      std::size_t joint = t.events.size() - 1;
      const int length = 1 + trial % 3;
      for (int i = 0; i < length; ++i) {
        const std::size_t d = pick(rng);
        data.push_back(t.events[d]);
        joint &= d;
      }
      if (t.masses[joint].is_zero()) continue;
      ++sequential;
      v.require(sequential_posterior(space, hyps, data) == bayes_posterior(space, hyps, t.events[joint]),
                "sequential != batch, space " + std::to_string(s));
    }
  }
  report(6, "Bayes coherence", v,
         std::to_string(posteriors) + " posteriors, " + std::to_string(forced) + " forced by d inside H_1, " +
             std::to_string(sequential) + " sequential/batch comparisons, exact");
}

void criterion_gibbs() {
  ct::RandomSpaceOptions opts;
  opts.interior_only = true;
  const auto spaces = make_corpus(kGibbsSeed, kGibbsSpaces, opts);
  std::mt19937_64 rng(kGibbsSeed + 1);
  Verdict v;
  std::uint64_t checks = 0;
  double worst = -INFINITY;
  for (std::size_t s = 0; s < spaces.size(); ++s) {
    const auto& space = spaces[s];
    const HypothesisSet hyps(space, ct::random_grouping(space, rng));
    const Partition obs = Partition::from_blocks(space.universe_size(), ct::random_grouping(space, rng));
    for (std::size_t star = 0; star < hyps.size(); ++star) {
      const auto report = expected_log_posterior(space, hyps, obs, star);
      for (std::size_t n = 0; n < hyps.size(); ++n) {
        ++checks;
        const double gap = report.likelihood[n] - report.likelihood[star];
        if (!std::isinf(gap)) worst = std::max(worst, gap);
        v.require(report.likelihood[star] >= report.likelihood[n] - kGibbsTolerance,
                  "space " + std::to_string(s) + ": L_* < L_n");
      }
    }
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", worst);
  report(7, "Gibbs property", v,
         std::to_string(spaces.size()) + " spaces, " + std::to_string(checks) +
             " comparisons, tolerance 1e-12, max L_n - L_* = " + buf);
}

void criterion_diagnostics(const std::vector<CausalSpace>& corpus) {
  std::mt19937_64 rng(kCorpusSeed + 8);
  Verdict v;
  std::uint64_t checks = 0;
  double worst = 0.0;
  for (std::size_t s = 0; s < corpus.size(); ++s) {
    const auto& space = corpus[s];
    const HypothesisSet hyps(space, ct::random_grouping(space, rng));
    const Partition obs = Partition::from_blocks(space.universe_size(), ct::random_grouping(space, rng));
    for (std::size_t k = 0; k < obs.size(); ++k) {
      if (mass(space, obs[k]).is_zero()) continue;
      const auto report = posterior_log_decomposition(space, hyps, obs, k);
      for (std::size_t n = 0; n < hyps.size(); ++n) {
        const Rational posterior = belief(space, hyps[n], obs[k]);
        if (posterior.is_zero()) {
          v.require(report.log_posterior(n) == -INFINITY, "zero posterior without -inf, space " + std::to_string(s));
          continue;
        }
        ++checks;
        const double error = std::abs(report.log_posterior(n) - posterior.log());
        worst = std::max(worst, error);
        v.require(error <= kDiagnosticsTolerance, "space " + std::to_string(s) + ": error " + std::to_string(error));
      }
    }
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", worst);
  report(8, "diagnostics consistency", v,
         std::to_string(checks) + " positive posteriors, tolerance 1e-12, max error " + buf);
}

int run_binary(const std::string& args) {
  const std::string command = std::string(CAUSALSPACE_BINARY) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(command.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void criterion_round_trip() {
  Verdict v;
  auto round_trip = [&](const dsl::Model& model, const std::string& label) {
    const std::string text = dsl::render_model(dsl::export_ast(model));
    const dsl::Model again = dsl::load_model(text);
    v.require(again.space == model.space, label + ": exported model differs");
    v.require(dsl::render_model(dsl::export_ast(again)) == text, label + ": export is not stable");
  };
  for (const char* name : {"rx.csp", "rz.csp"}) {
    const std::string path = std::string(CAUSALSPACE_FIXTURES) + "/" + name;
    std::ostringstream out, err;
    std::istringstream in;
    const char* argv[] = {"causalspace", "export", path.c_str()};
    v.require(cli::run(3, argv, in, out, err) == 0, std::string(name) + ": export failed");
    const dsl::Model exported = dsl::load_model(out.str());
    const auto fixture = std::string(name) == "rx.csp" ? ct::make_rx() : ct::make_rz();
    v.require(exported.space == fixture, std::string(name) + ": exported text does not reproduce the fixture");
    round_trip(exported, name);
  }
  const auto spaces = make_corpus(kRoundTripSeed, kRoundTripSpaces, {});
  for (std::size_t s = 0; s < spaces.size(); ++s) round_trip(ct::named(spaces[s]), "space " + std::to_string(s));

  struct Expectation {
    std::string args;
    int code;
  };
  const std::string dir = CAUSALSPACE_FIXTURES;
  const std::vector<Expectation> corpus{
      {"check " + dir + "/rx.csp", 0},
      {"check " + dir + "/rz.csp", 0},
      {"query " + dir + "/rx.csp 'belief E1 | E2'", 0},
      {"query " + dir + "/rx.csp 'belief E1 | {}'", 1},
      {"query " + dir + "/rx.csp 'belief E9'", 1},
      {"query " + dir + "/rx.csp garbage", 1},
      {"query " + dir + "/rz.csp 'bayes E1, ~E1 given E1'", 1},
      {"check " + dir + "/missing-entry.csp", 2},
      {"check " + dir + "/novelty.csp", 2},
      {"check " + dir + "/syntax-error.csp", 2},
      {"check " + dir + "/lex-error.csp", 2},
      {"check " + dir + "/out-of-range.csp", 2},
      {"check " + dir + "/bad-outcome.csp", 2},
      {"check " + dir + "/duplicate-entry.csp", 2},
      {"check " + dir + "/duplicate-name.csp", 2},
      {"check " + dir + "/stale-condition.csp", 2},
      {"check " + dir + "/ambiguous-condition.csp", 2},
      {"check " + dir + "/contradicts-truth.csp", 2},
      {"check " + dir + "/unknown-name.csp", 2},
      {"check " + dir + "/empty.csp", 2},
      {"check " + dir + "/nosuchfile.csp", 2},
      {"query " + dir + "/novelty.csp 'belief E1'", 2},
      {"", 3},
      {"check", 3},
      {"frobnicate " + dir + "/rx.csp", 3},
      {"query " + dir + "/rx.csp", 3},
      {"--render sideways check " + dir + "/rx.csp", 3},
  };
  for (const auto& e : corpus) {
    const int code = run_binary(e.args);
    v.require(code == e.code, "'" + e.args + "' exited " + std::to_string(code) + ", expected " +
                                  std::to_string(e.code));
  }
  report(9, "DSL/CLI round trip", v,
         "RX, RZ and " + std::to_string(spaces.size()) + " random spaces table-identical; " +
             std::to_string(corpus.size()) + " exit-code cases");
}

void criterion_normalization(const std::vector<CausalSpace>& corpus) {
  Verdict v;
  std::uint64_t levels = 0;
  for (std::size_t s = 0; s < corpus.size(); ++s) {
    const auto& space = corpus[s];
    for (std::size_t n = 0; n <= space.levels(); ++n) {
      ++levels;
      Rational total;
      for (const auto& a : space.sequence().atoms(n)) total += atom_mass(space, a);
      v.require(total == 1, "space " + std::to_string(s) + " level " + std::to_string(n) + " sums to " +
                                total.str());
    }
    Rational oracle_total;
    for (const auto& m : oracle::oracle_joint(space).masses) oracle_total += m;
    v.require(oracle_total == 1, "space " + std::to_string(s) + ": oracle joint sums to " + oracle_total.str());
  }
  report(10, "normalization", v, std::to_string(levels) + " levels over " + std::to_string(corpus.size()) +
                                      " spaces sum to exactly 1");
}

}  // namespace

int main() {
  const auto corpus = make_corpus(kCorpusSeed, kCorpusSize, {});

  const auto start = std::chrono::steady_clock::now();
  std::vector<BeliefTable> tables;
  tables.reserve(corpus.size());
  for (const auto& space : corpus) tables.push_back(tabulate(space));
  const double tabulate_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const std::vector<std::function<void()>> criteria{
      [&] { criterion_axioms(corpus, tables, tabulate_seconds); },
      [&] { criterion_oracle(corpus, tables); },
      [&] { criterion_rx(); },
      [&] { criterion_interventions(corpus); },
      [&] { criterion_zero_mass(corpus); },
      [&] { criterion_bayes(corpus, tables); },
      [&] { criterion_gibbs(); },
      [&] { criterion_diagnostics(corpus); },
      [&] { criterion_round_trip(); },
      [&] { criterion_normalization(corpus); },
  };
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    try {
      criteria[i]();
    } catch (const std::exception& e) {
      std::cout << "[FAIL] " << i + 1 << ". unexpected exception: " << e.what() << '\n';
      ++failures;
    }
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << '\n';
  return failures == 0 ? 0 : 1;
}
