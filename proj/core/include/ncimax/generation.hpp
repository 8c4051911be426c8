#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ncimax/ring.hpp"

namespace ncimax {

/// Ordered generators a_1..a_k. Duplicates are allowed; order only matters
/// for lining up with a coefficient list.
using GeneratorList = std::vector<Element>;

/// Evidence (b, e) that a generator list combines linearly to r^e.
/// The null code ([], 0) falsifies nothing.
struct WitnessCode {
  std::vector<Element> coefficients;
  std::uint64_t exponent = 0;

  static WitnessCode null() { return {}; }
  bool is_null() const { return exponent == 0 && coefficients.empty(); }

  friend bool operator==(const WitnessCode&, const WitnessCode&) = default;
};

/// Linear-combination certificate: sum generators[i] * coefficients[i] = r^exponent.
/// Nothing here is trusted; use check_certificate().
struct Certificate {
  GeneratorList generators;
  std::vector<Element> coefficients;
  std::uint64_t exponent = 0;

  friend bool operator==(const Certificate&, const Certificate&) = default;
};

/// Sum of gens[i] * coeffs[i]; 0 for empty lists. Throws on length mismatch.
Element lin_comb(const FiniteRing& ring, std::span<const Element> gens, std::span<const Element> coeffs);

/// Decides the negation of R_A(b, e): |b| = |A|, e > 0 and sum a_i b_i = r^e.
bool neg_R_holds(const FiniteRing& ring, std::span<const Element> gens, const WitnessCode& code, Element r);

/// Smallest ideal containing seed.
ElementSet ideal_closure(const FiniteRing& ring, const ElementSet& seed);

bool check_certificate(const FiniteRing& ring, const Certificate& cert, Element r);

}  // namespace ncimax
