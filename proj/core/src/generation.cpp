#include "ncimax/generation.hpp"

#include <deque>

#include "ncimax/errors.hpp"

namespace ncimax {

Element lin_comb(const FiniteRing& ring, std::span<const Element> gens, std::span<const Element> coeffs) {
  if (gens.size() != coeffs.size()) {
    throw ContractViolation("lin_comb: " + std::to_string(gens.size()) + " generators but " +
                            std::to_string(coeffs.size()) + " coefficients");
  }
  Element sum = ring.zero();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    sum = ring.add(sum, ring.mul(gens[i], coeffs[i]));
  }
  return sum;
}

bool neg_R_holds(const FiniteRing& ring, std::span<const Element> gens, const WitnessCode& code, Element r) {
  if (code.coefficients.size() != gens.size() || code.exponent == 0) {
    return false;
  }
  return lin_comb(ring, gens, code.coefficients) == ring.pow(r, code.exponent);
}

bool check_certificate(const FiniteRing& ring, const Certificate& cert, Element r) {
  if (cert.generators.size() != cert.coefficients.size() || cert.exponent == 0) {
    return false;
  }
  return lin_comb(ring, cert.generators, cert.coefficients) == ring.pow(r, cert.exponent);
}

ElementSet ideal_closure(const FiniteRing& ring, const ElementSet& seed) {
  if (seed.universe() != ring.size()) {
    throw ContractViolation("ideal_closure: seed universe does not match ring size");
  }
  ElementSet closed(ring.size());
  std::vector<Element> members;
  std::deque<Element> pending;
  auto admit = [&](Element x) {
    if (!closed.contains(x)) {
      closed.insert(x);
      pending.push_back(x);
    }
  };

  admit(ring.zero());
  for (const auto x : seed.elements()) admit(x);

  // Each newly admitted element is combined once with everything admitted
  // before it (sums) and with every ring element (multiples).
  while (!pending.empty()) {
    const Element a = pending.front();
    pending.pop_front();
    for (std::size_t c = 0; c < ring.size(); ++c) {
      admit(ring.mul(a, ring.element(c)));
    }
    members.push_back(a);
    for (const auto b : members) {
      admit(ring.add(a, b));
    }
  }
  return closed;
}

}  // namespace ncimax
