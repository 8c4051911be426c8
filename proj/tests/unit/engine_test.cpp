#include <gtest/gtest.h>

#include <random>

#include "../support/brute.hpp"
#include "ncimax/engine.hpp"
#include "ncimax/errors.hpp"
#include "ncimax/nilradical.hpp"
#include "ncimax/poly.hpp"

using namespace ncimax;

namespace {

Element e(std::uint32_t v) { return Element{v}; }
std::vector<Element> es(std::initializer_list<std::uint32_t> vs) {
  std::vector<Element> out;
  for (auto v : vs) out.push_back(e(v));
  return out;
}

struct Z4Run {
  FiniteRing ring = mod_ring(4);
  Enumeration en = make_enumeration(ring, e(2));
  Polynomial f{ring, es({1, 2})};
  OmegaPhi functionals = make_omega_phi(psi_from_inverse(f, f, 1, en), en);
  NegR neg_r = make_neg_r(en);
};

OmegaPhi constant_null() {
  return [](const State&) { return Query{0, WitnessCode::null()}; };
}

}  // namespace

TEST(State, Initial) {
  const auto s = initial_state();
  const auto en = make_enumeration(mod_ring(4), e(2));
  EXPECT_EQ(s.members(en), ElementSet::full(4));
  EXPECT_TRUE(s.entry(17).is_in());
  EXPECT_TRUE(s.prefix().empty());
}

TEST(State, TruncationDropsLaterEntries) {
  const auto en = make_enumeration(mod_ring(8), e(2));
  auto s = initial_state().truncated_with(5, WitnessCode{es({1}), 1});
  EXPECT_EQ(s.prefix().size(), 6u);
  EXPECT_TRUE(s.entry(5).is_out());
  EXPECT_TRUE(s.entry(6).is_in());
  const auto t = s.truncated_with(2, WitnessCode{es({3}), 2});
  EXPECT_EQ(t.prefix().size(), 3u);
  EXPECT_TRUE(t.entry(5).is_in());
  EXPECT_EQ(t.members_below(3), (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(t.segment_with(en, 4), (std::vector<Element>{en[0], en[1], en[3], en[4]}));
}

TEST(Step, Z4FirstRemoval) {
  Z4Run z;
  const auto result = step(initial_state(), z.functionals, z.neg_r, z.en);
  ASSERT_TRUE(std::holds_alternative<NextState>(result));
  const auto& next = std::get<NextState>(result);
  EXPECT_EQ(next.removed, 1u);
  ASSERT_EQ(next.state.prefix().size(), 2u);
  EXPECT_TRUE(next.state.entry(0).is_in());
  EXPECT_EQ(next.state.entry(1).code(), (WitnessCode{es({0, 2}), 1}));
}

TEST(Step, NullCodeTerminates) {
  const auto en = make_enumeration(mod_ring(4), e(2));
  EXPECT_TRUE(std::holds_alternative<Terminated>(step(initial_state(), constant_null(), make_neg_r(en), en)));
}

TEST(Step, Z4ThirdRemovalAtZero) {
  Z4Run z;
  auto s = initial_state();
  for (int k = 0; k < 2; ++k) s = std::get<NextState>(step(s, z.functionals, z.neg_r, z.en)).state;
  const auto result = step(s, z.functionals, z.neg_r, z.en);
  ASSERT_TRUE(std::holds_alternative<NextState>(result));
  const auto& next = std::get<NextState>(result);
  EXPECT_EQ(next.removed, 0u);
  ASSERT_EQ(next.state.prefix().size(), 1u);
  EXPECT_EQ(next.state.entry(0).code().exponent, 2u);
  EXPECT_EQ(next.state.entry(0).code().coefficients.size(), 1u);
}

TEST(Step, BoundOutsideEnumeration) {
  const auto en = make_enumeration(mod_ring(4), e(2));
  const OmegaPhi too_far = [](const State&) { return Query{4, WitnessCode{es({1}), 1}}; };
  EXPECT_THROW(step(initial_state(), too_far, make_neg_r(en), en), ContractViolation);
}

TEST(Run, Z4FourQueries) {
  Z4Run z;
  const auto result = run(z.functionals, z.neg_r, z.en, 100);
  EXPECT_EQ(result.trace.steps.size(), 4u);
  EXPECT_EQ(result.trace.removals(), (std::vector<std::size_t>{1, 2, 0}));
  EXPECT_TRUE(result.trace.steps.back().terminated());
  EXPECT_EQ(result.final_state.entry(0).code().exponent, 2u);
}

TEST(Run, ConstantNullStopsAtInitialState) {
  const auto en = make_enumeration(mod_ring(4), e(2));
  const auto result = run(constant_null(), make_neg_r(en), en, 1);
  EXPECT_EQ(result.final_state, initial_state());
  ASSERT_EQ(result.trace.steps.size(), 1u);
  EXPECT_TRUE(result.trace.steps[0].terminated());
}

TEST(Run, Z8FiniteRingPsi) {
  const auto ring = mod_ring(8);
  const auto en = make_enumeration(ring, e(2));
  const auto functionals = make_omega_phi(make_psi_finite(en), en);
  const auto neg_r = make_neg_r(en);
  const auto result = run(functionals, neg_r, en, 8 * 8);
  EXPECT_LE(result.trace.steps.size(), 64u);
  EXPECT_TRUE(result.final_state.entry(0).is_out());
  EXPECT_TRUE(verify_approx_max(result.final_state, functionals, neg_r, en));
  const auto exp = result.final_state.entry(0).code().exponent;
  EXPECT_EQ(ring.pow(e(2), exp), ring.zero());
  EXPECT_GE(exp, *brute::nil_exponent(ring, e(2)));
}

TEST(Run, CapAndArgumentErrors) {
  // Removes the first member at or beyond the current prefix length: never
  // terminates on its own before the bound leaves the enumeration.
  const auto en = make_enumeration(mod_ring(20), e(2));
  const OmegaPhi creep = [](const State& s) { return Query{s.prefix().size(), WitnessCode{{}, 1}}; };
  const NegR always = [](std::span<const Element>, const WitnessCode&) { return true; };
  EXPECT_THROW(run(creep, always, en, 5), CapExceeded);
  EXPECT_THROW(run(creep, always, en, 0), ContractViolation);
}

TEST(Run, ObserverSeesEveryState) {
  Z4Run z;
  std::vector<State> seen;
  const auto result = run(z.functionals, z.neg_r, z.en, 100, [&](std::size_t, const State& s) { seen.push_back(s); });
  EXPECT_EQ(seen, replay(result.trace));
}

TEST(Run, Deterministic) {
  for (std::uint64_t n : {8u, 16u, 27u, 36u}) {
    const auto ring = mod_ring(n);
    for (auto r : brute::nilpotents(ring)) {
      if (r == ring.zero()) continue;
      const auto en = make_enumeration(ring, r);
      const auto functionals = make_omega_phi(make_psi_finite(en), en);
      const auto a = run(functionals, make_neg_r(en), en, default_max_iters(ring));
      const auto b = run(functionals, make_neg_r(en), en, default_max_iters(ring));
      EXPECT_EQ(a.trace, b.trace);
      EXPECT_EQ(a.final_state, b.final_state);
      EXPECT_EQ(replay(a.trace).back(), a.final_state);
    }
  }
}

TEST(Replay, ReconstructsStates) {
  Z4Run z;
  const auto result = run(z.functionals, z.neg_r, z.en, 100);
  const auto states = replay(result.trace);
  ASSERT_EQ(states.size(), 4u);
  EXPECT_EQ(states.front(), initial_state());
  EXPECT_EQ(states.back(), result.final_state);
  EXPECT_EQ(states[1].members(z.en).elements(), es({0, 2, 3}));
  EXPECT_EQ(states[2].members(z.en).elements(), es({0, 3}));
  EXPECT_EQ(states[3].members(z.en).elements(), es({1, 2, 3}));
}

TEST(VerifyApproxMax, Examples) {
  Z4Run z;
  const auto result = run(z.functionals, z.neg_r, z.en, 100);
  EXPECT_TRUE(verify_approx_max(result.final_state, z.functionals, z.neg_r, z.en));
  EXPECT_TRUE(verify_approx_max(initial_state(), constant_null(), z.neg_r, z.en));
  // Non-terminal states fail: the functional still finds a removable member.
  EXPECT_FALSE(verify_approx_max(initial_state(), z.functionals, z.neg_r, z.en));

  auto code = result.final_state.entry(0).code();
  code.exponent = 0;
  const auto corrupted = result.final_state.truncated_with(0, code);
  EXPECT_FALSE(verify_approx_max(corrupted, z.functionals, z.neg_r, z.en));
}

TEST(DomainInvariant, Examples) {
  Z4Run z;
  EXPECT_TRUE(check_domain_invariant(initial_state(), z.neg_r, z.en));
  for (const auto& s : replay(run(z.functionals, z.neg_r, z.en, 100).trace)) {
    EXPECT_TRUE(check_domain_invariant(s, z.neg_r, z.en));
  }
  const auto bad = initial_state().truncated_with(1, WitnessCode{es({0, 3}), 1});
  EXPECT_FALSE(check_domain_invariant(bad, z.neg_r, z.en));
}

TEST(DomainInvariant, SmallRingSweep) {
  for (std::uint64_t n : {6u, 12u, 18u, 24u}) {
    const auto ring = mod_ring(n);
    for (auto r : brute::nilpotents(ring)) {
      if (r == ring.zero()) continue;
      const auto en = make_enumeration(ring, r);
      const auto neg_r = make_neg_r(en);
      const auto result = run(make_omega_phi(make_psi_finite(en), en), neg_r, en, default_max_iters(ring));
      for (const auto& s : replay(result.trace)) EXPECT_TRUE(check_domain_invariant(s, neg_r, en));
    }
  }
}

// neg_R requires |b| = |M restricted to n| + 1, and that length grows
// strictly with n over In entries, so at most one In index can match a code.
TEST(Step, LengthSelectsAtMostOneIndex) {
  std::mt19937_64 rng(3);
  const auto en = make_enumeration(mod_ring(16), e(4));
  for (int t = 0; t < 200; ++t) {
    State s = initial_state();
    for (std::size_t n = 0; n < 16; ++n) {
      if (rng() % 3 == 0) s = s.prefix().size() > n ? s : s.truncated_with(n, WitnessCode{{}, 1});
    }
    const std::size_t len = rng() % 17;
    std::size_t matches = 0;
    for (std::size_t n = 0; n < 16; ++n) {
      if (s.in_m(n) && s.segment_with(en, n).size() == len) ++matches;
    }
    EXPECT_LE(matches, 1u);
  }
}
