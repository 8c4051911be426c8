#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "ncimax/nilradical.hpp"
#include "ncimax/ring.hpp"

namespace ncimax {

/// Univariate polynomial a_0 + a_1 T + ... over a finite ring. Trailing
/// zero coefficients may be stored; degree() ignores them.
class Polynomial {
 public:
  Polynomial(FiniteRing ring, std::vector<Element> coefficients);

  const FiniteRing& ring() const { return ring_; }
  const std::vector<Element>& coefficients() const { return coeffs_; }

  /// a_k, or 0 beyond the stored coefficients.
  Element coefficient(std::size_t k) const;
  /// Index of the last non-zero coefficient; 0 for constants and for 0.
  std::size_t degree() const;
  bool is_one() const;

  std::string format() const;

  friend bool operator==(const Polynomial& a, const Polynomial& b);

 private:
  FiniteRing ring_;
  std::vector<Element> coeffs_;
};

/// Comma-separated coefficients, constant term first: "1,2" is 1 + 2T.
Polynomial parse_polynomial(const FiniteRing& ring, std::string_view text);

Polynomial poly_mul(const Polynomial& f, const Polynomial& g);
bool is_inverse_pair(const Polynomial& f, const Polynomial& g);

/// psi for the target a_i of a unit f with inverse g, derived from
/// a_i = -a_0 * sum_{j<i} a_j b_{i-j} and from c_{k+l} = 0.
/// Throws PreconditionError unless f*g = 1, 1 <= i <= deg f and the
/// enumeration targets a_i. The returned functional throws ContractUnmet if
/// it ever fails to find a verdict.
PsiFunctional psi_from_inverse(const Polynomial& f, const Polynomial& g, std::size_t i,
                               const Enumeration& enumeration);

/// Exponent e with a_i^e = 0, extracted by running the engine on
/// psi_from_inverse. Throws PreconditionError for f*g != 1, i = 0 or
/// i > deg f.
NilpotencyResult nilpotent_coefficient_exponent(const Polynomial& f, const Polynomial& g, std::size_t i,
                                                std::size_t max_iters);

}  // namespace ncimax
