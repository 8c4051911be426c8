#include "ncimax/oracle.hpp"

#include <algorithm>
#include <set>

#include "ncimax/errors.hpp"
#include "ncimax/generation.hpp"

namespace ncimax {

namespace {

void require_bound(const FiniteRing& ring, std::size_t bound) {
  if (ring.size() > bound) {
    throw SizeBoundExceeded("ring " + ring.descriptor() + " has " + std::to_string(ring.size()) +
                            " elements; the oracle bound is " + std::to_string(bound));
  }
}

bool holds_on(const ElementSet& s, const ElementPredicate& q) {
  const auto members = s.elements();
  return std::all_of(members.begin(), members.end(), q);
}

}  // namespace

std::optional<std::uint64_t> min_nilpotency_exponent(const FiniteRing& ring, Element r) {
  // Powers r, r^2, ... are eventually periodic; a repeat without 0 proves r
  // is not nilpotent.
  ElementSet seen(ring.size());
  Element power = r;
  for (std::uint64_t e = 1;; ++e) {
    if (power == ring.zero()) return e;
    if (seen.contains(power)) return std::nullopt;
    seen.insert(power);
    power = ring.mul(power, r);
  }
}

ElementSet nilradical(const FiniteRing& ring) {
  ElementSet out(ring.size());
  for (std::size_t c = 0; c < ring.size(); ++c) {
    if (min_nilpotency_exponent(ring, ring.element(c))) out.insert(ring.element(c));
  }
  return out;
}

bool is_ideal(const FiniteRing& ring, const ElementSet& s) {
  if (!s.contains(ring.zero())) return false;
  const auto members = s.elements();
  for (const auto a : members) {
    for (const auto b : members) {
      if (!s.contains(ring.add(a, b))) return false;
    }
    for (std::size_t c = 0; c < ring.size(); ++c) {
      if (!s.contains(ring.mul(a, ring.element(c)))) return false;
    }
  }
  return true;
}

std::vector<ElementSet> all_ideals(const FiniteRing& ring, std::size_t bound) {
  require_bound(ring, bound);
  // Every ideal is reached from {0} by repeatedly adjoining one element and
  // closing, so a search over I + (x) visits all of them.
  std::set<ElementSet> found;
  std::vector<ElementSet> frontier{ideal_closure(ring, ElementSet(ring.size()))};
  found.insert(frontier.front());
  while (!frontier.empty()) {
    const ElementSet ideal = std::move(frontier.back());
    frontier.pop_back();
    for (std::size_t c = 0; c < ring.size(); ++c) {
      const auto x = ring.element(c);
      if (ideal.contains(x)) continue;
      ElementSet seed = ideal;
      seed.insert(x);
      auto next = ideal_closure(ring, seed);
      if (found.insert(next).second) frontier.push_back(std::move(next));
    }
  }
  std::vector<ElementSet> out(found.begin(), found.end());
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.count() < b.count(); });
  return out;
}

bool is_prime_ideal(const FiniteRing& ring, const ElementSet& ideal) {
  if (ideal.contains(ring.one())) return false;
  for (std::size_t a = 0; a < ring.size(); ++a) {
    for (std::size_t b = 0; b < ring.size(); ++b) {
      const auto x = ring.element(a);
      const auto y = ring.element(b);
      if (ideal.contains(ring.mul(x, y)) && !ideal.contains(x) && !ideal.contains(y)) return false;
    }
  }
  return true;
}

ElementSet prime_intersection(const FiniteRing& ring, std::size_t bound) {
  ElementSet out = ElementSet::full(ring.size());
  for (const auto& ideal : all_ideals(ring, bound)) {
    if (is_prime_ideal(ring, ideal)) out = out.intersect(ideal);
  }
  return out;
}

bool prime_intersection_equals_nilradical(const FiniteRing& ring, std::size_t bound) {
  return prime_intersection(ring, bound) == nilradical(ring);
}

ElementPredicate avoids_powers_of(const FiniteRing& ring, Element r) {
  ElementSet powers(ring.size());
  Element power = r;
  while (!powers.contains(power)) {
    powers.insert(power);
    power = ring.mul(power, r);
  }
  return [powers](Element x) { return !powers.contains(x); };
}

ElementPredicate not_one(const FiniteRing& ring) {
  return [one = ring.one()](Element x) { return x != one; };
}

ElementSet greedy_maximal(const FiniteRing& ring, std::span<const Element> order, const ElementPredicate& q) {
  if (!holds_on(ideal_closure(ring, ElementSet(ring.size())), q)) {
    throw ContractViolation("greedy_maximal: Q fails on the closure of the empty set");
  }
  ElementSet m(ring.size());
  for (const auto x : order) {
    ElementSet seed = m;
    seed.insert(x);
    if (holds_on(ideal_closure(ring, seed), q)) m.insert(x);
  }
  return m;
}

ElementSet greedy_maximal(const Enumeration& enumeration, const ElementPredicate& q) {
  return greedy_maximal(enumeration.ring(), enumeration.order(), q);
}

MaximalityReport check_maximal(const FiniteRing& ring, const ElementSet& m, const ElementPredicate& q) {
  MaximalityReport report;
  report.closed = ideal_closure(ring, m) == m;
  report.satisfies_q = holds_on(m, q);
  report.no_extension = true;
  for (std::size_t c = 0; c < ring.size(); ++c) {
    const auto x = ring.element(c);
    if (m.contains(x)) continue;
    ElementSet seed = m;
    seed.insert(x);
    if (holds_on(ideal_closure(ring, seed), q)) report.no_extension = false;
  }
  return report;
}

}  // namespace ncimax
