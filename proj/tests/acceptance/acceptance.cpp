// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "../support/brute.hpp"
#include "ncimax/errors.hpp"
#include "ncimax/nilradical.hpp"
#include "ncimax/oracle.hpp"
#include "ncimax/poly.hpp"

using namespace ncimax;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

// A finished run plus what is needed to re-check it.
struct TracedRun {
  FiniteRing ring;
  Element r;
  PsiBuilder builder;
  NilpotencyResult result;
};

std::vector<TracedRun> g_runs;

PsiBuilder finite_builder() {
  return [](const Enumeration& en) { return make_psi_finite(en); };
}

Element e(std::uint32_t v) { return Element{v}; }

Outcome criterion_z4_replay() {
  Outcome o;
  const auto start = Clock::now();
  const auto z4 = mod_ring(4);
  const Polynomial f(z4, {e(1), e(2)});
  const PsiBuilder builder = [f](const Enumeration& en) { return psi_from_inverse(f, f, 1, en); };
  const auto result = nilpotent_coefficient_exponent(f, f, 1, default_max_iters(z4));
  const double elapsed = seconds_since(start);

  const auto& steps = result.trace.steps;
  const std::vector<Query> expected_queries{
      {1, WitnessCode{{e(0), e(2)}, 1}},
      {2, WitnessCode{{e(0), e(1)}, 1}},
      {0, WitnessCode{{e(1)}, 2}},
  };
  const std::vector<std::string> expected_verdicts{"1", "2", "(5,2,2,0)", "0"};
  if (steps.size() != 4) {
    o.fail("expected 4 queries, got " + std::to_string(steps.size()));
  } else {
    const std::vector<std::size_t> removals{1, 2, 0};
    for (std::size_t k = 0; k < 3; ++k) {
      if (steps[k].removed != removals[k]) o.fail("removal " + std::to_string(k) + " differs");
      if (steps[k].query.code.exponent != expected_queries[k].code.exponent) o.fail("exponent differs");
      if (steps[k].query.bound != expected_queries[k].bound) o.fail("bound differs");
      // At index 0 any coefficient works; only the exponent is fixed.
      if (k < 2 && steps[k].query != expected_queries[k]) o.fail("code differs at step " + std::to_string(k));
    }
    if (!steps[3].terminated()) o.fail("fourth query did not terminate");
    for (std::size_t k = 0; k < 4; ++k) {
      if (describe(result.witnesses[k].verdict) != expected_verdicts[k]) o.fail("verdict differs at step " + std::to_string(k));
    }
  }
  if (result.exponent != 2) o.fail("e = " + std::to_string(result.exponent));
  if (elapsed >= 1.0) o.fail("took " + std::to_string(elapsed) + " s");
  o.detail += (o.detail.empty() ? "" : "; ") + std::string("removals 1,2,0 exps 1,1,2, e=2, ") +
              std::to_string(elapsed) + " s";
  g_runs.push_back({z4, e(2), builder, result});
  return o;
}

Outcome criterion_soundness_sweep() {
  Outcome o;
  const auto start = Clock::now();
  std::size_t runs = 0;
  std::size_t max_steps = 0;
  for (std::uint64_t n = 2; n <= 64; ++n) {
    const auto ring = mod_ring(n);
    for (std::uint64_t v = 2; v < n; ++v) {
      // Nilpotent iff some power vanishes; checked on plain integers.
      std::uint64_t p = v;
      bool nil = false;
      for (std::uint64_t k = 0; k < 64 && !nil; ++k) {
        nil = p == 0;
        p = p * v % n;
      }
      if (!nil) continue;
      const Element r = e(static_cast<std::uint32_t>(v));
      try {
        auto result = nilpotency_exponent(ring, r, finite_builder(), 10 * n * n);
        std::uint64_t power = 1;
        for (std::uint64_t k = 0; k < result.exponent && power != 0; ++k) power = power * v % n;
        const auto minimum = min_nilpotency_exponent(ring, r);
        if (power != 0) o.fail("r^e != 0 for n=" + std::to_string(n) + " r=" + std::to_string(v));
        if (!minimum || result.exponent < *minimum) o.fail("e below oracle minimum for n=" + std::to_string(n));
        max_steps = std::max(max_steps, result.trace.steps.size());
        g_runs.push_back({ring, r, finite_builder(), std::move(result)});
        ++runs;
      } catch (const Error& err) {
        o.fail("n=" + std::to_string(n) + " r=" + std::to_string(v) + ": " + err.what());
      }
    }
  }
  const double elapsed = seconds_since(start);
  if (elapsed >= 60.0) o.fail("took " + std::to_string(elapsed) + " s");
  o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(runs) + " runs, max " + std::to_string(max_steps) +
              " steps, " + std::to_string(elapsed) + " s";
  return o;
}

Outcome criterion_oracle_equivalence() {
  Outcome o;
  const auto start = Clock::now();
  std::vector<FiniteRing> rings;
  for (std::uint64_t n = 2; n <= 30; ++n) rings.push_back(mod_ring(n));
  const auto z2 = mod_ring(2);
  const std::vector<FiniteRing> products{
      product_ring(z2, z2),
      product_ring(mod_ring(4), z2),
      product_ring(mod_ring(2), mod_ring(6)),
      product_ring(mod_ring(4), mod_ring(4)),
      product_ring(mod_ring(3), mod_ring(3)),
      product_ring(product_ring(z2, z2), z2),
      product_ring(mod_ring(8), z2),
  };
  rings.insert(rings.end(), products.begin(), products.end());
  for (const auto& ring : rings) {
    ElementSet nil_brute(ring.size());
    for (auto x : brute::nilpotents(ring)) nil_brute.insert(x);
    if (!prime_intersection_equals_nilradical(ring)) o.fail(ring.descriptor() + ": reported unequal");
    if (prime_intersection(ring) != nil_brute) o.fail(ring.descriptor() + ": prime intersection differs");
    if (nilradical(ring) != nil_brute) o.fail(ring.descriptor() + ": nilradical differs");
  }
  const double elapsed = seconds_since(start);
  if (elapsed >= 30.0) o.fail("took " + std::to_string(elapsed) + " s");
  o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(rings.size()) + " rings (" +
              std::to_string(products.size()) + " products), " + std::to_string(elapsed) + " s";
  return o;
}

Outcome criterion_invariants() {
  Outcome o;
  std::size_t states = 0;
  for (const auto& run : g_runs) {
    if (run.result.short_circuit) continue;
    const auto& en = *run.result.enumeration;
    const auto neg_r = make_neg_r(en);
    for (const auto& s : replay(run.result.trace)) {
      ++states;
      if (!check_domain_invariant(s, neg_r, en)) o.fail("domain invariant fails in " + run.ring.descriptor());
    }
    const auto fresh = make_omega_phi(run.builder(en), en);
    if (!verify_approx_max(run.result.final_state, fresh, neg_r, en)) {
      o.fail("terminal state not approximately maximal in " + run.ring.descriptor());
    }
  }
  o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(g_runs.size()) + " runs, " + std::to_string(states) +
              " states";
  return o;
}

Outcome criterion_psi_contract() {
  Outcome o;
  std::mt19937_64 rng(20261019);
  std::size_t sets = 0;
  for (const auto& ring : brute::rings_up_to(12)) {
    for (auto r : brute::nilpotents(ring)) {
      if (r == ring.zero() || r == ring.one()) continue;
      const auto en = make_enumeration(ring, r);
      const auto check = [&](const ElementSet& s) {
        for (auto search : {PsiSearch::LeastRemoval, PsiSearch::FirstHit}) {
          ++sets;
          try {
            if (!satisfies_contract(psi_finite(en, s, search), s, en)) o.fail("psi_finite contract in " + ring.descriptor());
          } catch (const Error& err) {
            o.fail(ring.descriptor() + ": " + err.what());
          }
        }
      };
      if (ring.size() <= 8) {
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << ring.size()); ++mask) check(brute::from_mask(ring, mask));
      } else {
        for (int t = 0; t < 1000; ++t) check(brute::random_subset(ring, rng));
      }
    }
  }

  std::size_t pairs = 0;
  std::size_t poly_sets = 0;
  for (std::uint64_t n : {4u, 8u, 9u, 16u, 27u}) {
    const auto ring = mod_ring(n);
    std::size_t here = 0;
    while (here < 45) {
      const auto pair = brute::random_unit_pair(ring, 4, rng);
      if (!is_inverse_pair(pair.f, pair.g)) {
        o.fail("generated pair is not inverse");
        break;
      }
      std::vector<std::size_t> indices;
      for (std::size_t i = 1; i <= pair.f.degree(); ++i) {
        if (pair.f.coefficient(i) != ring.zero()) indices.push_back(i);
      }
      if (indices.empty()) continue;
      ++here;
      for (auto i : indices) {
        const auto en = make_enumeration(ring, pair.f.coefficient(i));
        const auto psi = psi_from_inverse(pair.f, pair.g, i, en);
        const auto check = [&](const ElementSet& s) {
          ++poly_sets;
          try {
            if (!satisfies_contract(psi(s), s, en)) o.fail("psi_from_inverse contract for " + pair.f.format());
          } catch (const Error& err) {
            o.fail(pair.f.format() + ": " + err.what());
          }
        };
        if (n <= 9) {
          for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) check(brute::from_mask(ring, mask));
        } else {
          for (int t = 0; t < 500; ++t) check(brute::random_subset(ring, rng));
        }
      }
    }
    pairs += here;
  }
  if (pairs < 200) o.fail("only " + std::to_string(pairs) + " unit pairs");
  o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(sets) + " psi_finite queries, " + std::to_string(pairs) +
              " unit pairs / " + std::to_string(poly_sets) + " psi_from_inverse queries";
  return o;
}

Outcome criterion_certificates() {
  Outcome o;
  std::size_t certs = 0;
  std::size_t codes = 0;
  for (const auto& run : g_runs) {
    if (run.result.short_circuit) continue;
    const auto& en = *run.result.enumeration;
    for (const auto& w : run.result.witnesses) {
      if (w.certificate) {
        ++certs;
        if (!check_certificate(run.ring, *w.certificate, run.r)) o.fail("certificate fails in " + run.ring.descriptor());
      }
      if (!w.query.code.is_null()) {
        ++codes;
        const auto gens = w.state.segment_with(en, w.query.bound);
        if (!neg_R_holds(run.ring, gens, w.query.code, run.r)) o.fail("code fails in " + run.ring.descriptor());
      }
    }
  }
  o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(certs) + " certificates, " + std::to_string(codes) +
              " codes";
  return o;
}

Outcome criterion_greedy() {
  Outcome o;
  const auto start = Clock::now();
  std::size_t avoid_runs = 0;
  std::size_t ideal_runs = 0;
  for (std::uint64_t n = 2; n <= 20; ++n) {
    const auto ring = mod_ring(n);
    const auto all = all_ideals(ring);
    for (auto r : brute::all_elements(ring)) {
      if (brute::is_nilpotent(ring, r)) continue;
      const auto q = avoids_powers_of(ring, r);
      const auto m = r == ring.one() ? greedy_maximal(ring, brute::all_elements(ring), q)
                                     : greedy_maximal(make_enumeration(ring, r), q);
      ++avoid_runs;
      const auto tag = "Z_" + std::to_string(n) + " r=" + std::to_string(r.index);
      if (!brute::prime_axioms(ring, m)) o.fail(tag + ": not a prime ideal");
      for (auto x : m.elements()) {
        if (!q(x)) o.fail(tag + ": contains a power of r");
      }
      if (!check_maximal(ring, m, q).holds()) o.fail(tag + ": maximality clause fails");
      // No extension: every ideal strictly above m contains a power of r.
      for (const auto& ideal : all) {
        if (m.is_subset_of(ideal) && ideal != m) {
          bool hits = false;
          for (auto x : ideal.elements()) hits = hits || !q(x);
          if (!hits) o.fail(tag + ": extendable");
        }
      }
    }
    const auto m = greedy_maximal(ring, brute::all_elements(ring), not_one(ring));
    ++ideal_runs;
    if (!check_maximal(ring, m, not_one(ring)).holds()) o.fail("Z_" + std::to_string(n) + ": not maximal");
    for (const auto& ideal : all) {
      if (m.is_subset_of(ideal) && ideal != m && ideal != ElementSet::full(ring.size())) {
        o.fail("Z_" + std::to_string(n) + ": proper ideal above the result");
      }
    }
    if (m.contains(ring.one()) || !is_ideal(ring, m)) o.fail("Z_" + std::to_string(n) + ": not a proper ideal");
  }
  const double elapsed = seconds_since(start);
  if (elapsed >= 10.0) o.fail("took " + std::to_string(elapsed) + " s");
  o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(avoid_runs) + " avoid-powers runs, " +
              std::to_string(ideal_runs) + " maximal-ideal runs, " + std::to_string(elapsed) + " s";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> body;
  };
  const std::vector<Criterion> criteria{
      {"1 Z4 replay", criterion_z4_replay},
      {"2 soundness sweep Z_2..Z_64", criterion_soundness_sweep},
      {"3 prime intersection = nilradical", criterion_oracle_equivalence},
      {"4 domain invariant and approximate maximality", criterion_invariants},
      {"5 psi contract", criterion_psi_contract},
      {"6 certificate soundness", criterion_certificates},
      {"7 greedy maximality", criterion_greedy},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& err) {
      o.fail(std::string("exception: ") + err.what());
    }
    std::printf("[%s] criterion %s: %s\n", o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str());
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
