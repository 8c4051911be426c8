#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "ncimax/ring.hpp"

namespace ncimax {

// Brute-force ground truth on finite rings. Nothing here touches the engine.

inline constexpr std::size_t kDefaultOracleBound = 30;

/// Least e > 0 with r^e = 0, or nullopt once the powers of r start to cycle.
std::optional<std::uint64_t> min_nilpotency_exponent(const FiniteRing& ring, Element r);

/// { x : x^e = 0 for some e > 0 }.
ElementSet nilradical(const FiniteRing& ring);

/// Direct check: contains 0, closed under + and under multiplication by the ring.
bool is_ideal(const FiniteRing& ring, const ElementSet& s);

/// Every ideal, sorted by size then members. Throws SizeBoundExceeded for
/// rings larger than `bound`.
std::vector<ElementSet> all_ideals(const FiniteRing& ring, std::size_t bound = kDefaultOracleBound);

/// Proper, and x*y in I implies x in I or y in I. Precondition: I is an ideal.
bool is_prime_ideal(const FiniteRing& ring, const ElementSet& ideal);

/// Intersection of all prime ideals (the whole ring if there are none).
ElementSet prime_intersection(const FiniteRing& ring, std::size_t bound = kDefaultOracleBound);

bool prime_intersection_equals_nilradical(const FiniteRing& ring, std::size_t bound = kDefaultOracleBound);

/// Pointwise predicate Q(x); Q(S) means Q holds for every x in S.
using ElementPredicate = std::function<bool(Element)>;

/// Q(x) = x differs from every r^e, e > 0.
ElementPredicate avoids_powers_of(const FiniteRing& ring, Element r);
/// Q(x) = x != 1.
ElementPredicate not_one(const FiniteRing& ring);

/// Builds M along `order`: x_n joins M iff Q holds on the ideal generated by
/// M|n and x_n. Throws ContractViolation if Q fails on {0}.
ElementSet greedy_maximal(const FiniteRing& ring, std::span<const Element> order, const ElementPredicate& q);
ElementSet greedy_maximal(const Enumeration& enumeration, const ElementPredicate& q);

/// Clauses of maximality for M: closed, Q(M), and Q fails on the ideal
/// generated by M and x for every x outside M.
struct MaximalityReport {
  bool closed = false;
  bool satisfies_q = false;
  bool no_extension = false;

  bool holds() const { return closed && satisfies_q && no_extension; }
};
MaximalityReport check_maximal(const FiniteRing& ring, const ElementSet& m, const ElementPredicate& q);

}  // namespace ncimax
