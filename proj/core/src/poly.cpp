#include "ncimax/poly.hpp"

#include <algorithm>
#include <optional>

#include "ncimax/errors.hpp"

namespace ncimax {

Polynomial::Polynomial(FiniteRing ring, std::vector<Element> coefficients)
    : ring_(std::move(ring)), coeffs_(std::move(coefficients)) {
  for (const auto c : coeffs_) {
    if (!ring_.contains(c)) {
      throw ContractViolation("Polynomial: coefficient outside ring " + ring_.descriptor());
    }
  }
}

Element Polynomial::coefficient(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : ring_.zero(); }

std::size_t Polynomial::degree() const {
  for (std::size_t k = coeffs_.size(); k > 0; --k) {
    if (coeffs_[k - 1] != ring_.zero()) return k - 1;
  }
  return 0;
}

bool Polynomial::is_one() const { return degree() == 0 && coefficient(0) == ring_.one(); }

std::string Polynomial::format() const {
  std::string out;
  for (std::size_t k = 0; k <= degree(); ++k) {
    if (k > 0 && coefficient(k) == ring_.zero()) continue;
    if (!out.empty()) out += " + ";
    out += ring_.format(coefficient(k));
    if (k == 1) out += "T";
    if (k > 1) out += "T^" + std::to_string(k);
  }
  return out;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (!(a.ring_ == b.ring_)) return false;
  const auto n = std::max(a.coeffs_.size(), b.coeffs_.size());
  for (std::size_t k = 0; k < n; ++k) {
    if (a.coefficient(k) != b.coefficient(k)) return false;
  }
  return true;
}

Polynomial parse_polynomial(const FiniteRing& ring, std::string_view text) {
  std::vector<Element> coeffs;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i < text.size() && text[i] == '(') ++depth;
    if (i < text.size() && text[i] == ')') --depth;
    if (i == text.size() || (text[i] == ',' && depth == 0)) {
      coeffs.push_back(ring.parse_element(text.substr(start, i - start)));
      start = i + 1;
    }
  }
  return Polynomial(ring, std::move(coeffs));
}

Polynomial poly_mul(const Polynomial& f, const Polynomial& g) {
  if (!(f.ring() == g.ring())) {
    throw ContractViolation("poly_mul: polynomials over different rings");
  }
  const auto& ring = f.ring();
  const auto& a = f.coefficients();
  const auto& b = g.coefficients();
  if (a.empty() || b.empty()) return Polynomial(ring, {});
  std::vector<Element> c(a.size() + b.size() - 1, ring.zero());
  for (std::size_t p = 0; p < a.size(); ++p) {
    for (std::size_t q = 0; q < b.size(); ++q) {
      c[p + q] = ring.add(c[p + q], ring.mul(a[p], b[q]));
    }
  }
  return Polynomial(ring, std::move(c));
}

bool is_inverse_pair(const Polynomial& f, const Polynomial& g) { return poly_mul(f, g).is_one(); }

namespace {

// Walks a list of terms that all lie in S. Starting from 0 (in S), the
// running sum ends at a total that is not in S, so some step leaves S:
// u in S, t in S, u + t not in S.
std::optional<PsiVerdict> first_exit(const Enumeration& e, const ElementSet& s, std::span<const Element> terms) {
  const auto& ring = e.ring();
  Element u = ring.zero();
  for (const auto t : terms) {
    const Element next = ring.add(u, t);
    if (s.contains(u) && !s.contains(next)) {
      return AddViolation{e.index_of(u), e.index_of(t), e.index_of(next)};
    }
    u = next;
  }
  return std::nullopt;
}

class InversePsi {
 public:
  InversePsi(Polynomial f, Polynomial g, std::size_t i, Enumeration e)
      : f_(std::move(f)), g_(std::move(g)), i_(i), e_(std::move(e)) {}

  PsiVerdict operator()(const ElementSet& s) const {
    const auto& ring = e_.ring();
    if (!s.contains(ring.zero())) return ZeroAbsent{};
    if (s.contains(ring.one())) return OneIn{};
    if (s.contains(f_.coefficient(i_))) return TargetIn{};

    const std::size_t guard = std::min(i_, g_.degree());
    bool tail_in_s = true;
    for (std::size_t j = 1; j <= guard; ++j) tail_in_s = tail_in_s && s.contains(g_.coefficient(j));

    auto verdict = tail_in_s ? from_coefficient_identity(s) : from_product_coefficient(s);
    if (!verdict) {
      throw ContractUnmet("psi_from_inverse: no verdict found; is f*g really 1?");
    }
    return *verdict;
  }

 private:
  // b_1..b_i in S and a_i not in S: inspect a_i = sum_j (-a_0 a_j) b_{i-j}.
  std::optional<PsiVerdict> from_coefficient_identity(const ElementSet& s) const {
    const auto& ring = e_.ring();
    const Element minus_a0 = ring.neg(f_.coefficient(0));
    std::vector<Element> terms;
    for (std::size_t j = 0; j < i_; ++j) {
      const Element b = g_.coefficient(i_ - j);
      const Element factor = ring.mul(minus_a0, f_.coefficient(j));
      const Element t = ring.mul(b, factor);
      if (!s.contains(t)) {
        return AbsorbViolation{e_.index_of(b), e_.index_of(factor), e_.index_of(t)};
      }
      terms.push_back(t);
    }
    return first_exit(e_, s, terms);
  }

  // Some b_j not in S: take k, l maximal with a_k, b_l not in S and use
  // 0 = c_{k+l} = a_k b_l + sum of a_p b_q where a_p or b_q is in S.
  std::optional<PsiVerdict> from_product_coefficient(const ElementSet& s) const {
    const auto& ring = e_.ring();
    std::optional<std::size_t> k;
    std::optional<std::size_t> l;
    for (std::size_t p = 1; p <= f_.degree(); ++p) {
      if (!s.contains(f_.coefficient(p))) k = p;
    }
    for (std::size_t q = 1; q <= g_.degree(); ++q) {
      if (!s.contains(g_.coefficient(q))) l = q;
    }
    if (!k || !l) return std::nullopt;

    const Element ak = f_.coefficient(*k);
    const Element bl = g_.coefficient(*l);
    const Element w = ring.mul(ak, bl);
    if (s.contains(w)) {
      return PrimeViolation{e_.index_of(ak), e_.index_of(bl), e_.index_of(w)};
    }

    const std::size_t total = *k + *l;
    std::vector<Element> terms;
    for (std::size_t p = 0; p <= std::min(total, f_.degree()); ++p) {
      const std::size_t q = total - p;
      if (p == *k || q > g_.degree()) continue;
      const Element ap = f_.coefficient(p);
      const Element bq = g_.coefficient(q);
      const Element t = ring.mul(ap, bq);
      if (s.contains(ap)) {
        if (!s.contains(t)) return AbsorbViolation{e_.index_of(ap), e_.index_of(bq), e_.index_of(t)};
      } else if (s.contains(bq)) {
        if (!s.contains(t)) return AbsorbViolation{e_.index_of(bq), e_.index_of(ap), e_.index_of(t)};
      } else {
        return std::nullopt;  // maximality of k, l makes this unreachable
      }
      terms.push_back(t);
    }

    // The terms sum to -w. If -w were in S, then w = (-w)(-1) would be too.
    const Element minus_w = ring.neg(w);
    if (s.contains(minus_w)) {
      return AbsorbViolation{e_.index_of(minus_w), e_.index_of(ring.neg(ring.one())), e_.index_of(w)};
    }
    return first_exit(e_, s, terms);
  }

  Polynomial f_;
  Polynomial g_;
  std::size_t i_;
  Enumeration e_;
};

void require_pipeline_inputs(const Polynomial& f, const Polynomial& g, std::size_t i) {
  if (!(f.ring() == g.ring())) {
    throw PreconditionError("f and g are over different rings");
  }
  if (!is_inverse_pair(f, g)) {
    throw PreconditionError("f*g != 1: (" + f.format() + ")(" + g.format() + ") = " + poly_mul(f, g).format());
  }
  if (i == 0) {
    throw PreconditionError("i must be at least 1; a_0 is a unit");
  }
  if (i > f.degree()) {
    throw PreconditionError("i = " + std::to_string(i) + " exceeds deg f = " + std::to_string(f.degree()));
  }
}

}  // namespace

PsiFunctional psi_from_inverse(const Polynomial& f, const Polynomial& g, std::size_t i,
                               const Enumeration& enumeration) {
  require_pipeline_inputs(f, g, i);
  if (!(enumeration.ring() == f.ring()) || enumeration.target() != f.coefficient(i)) {
    throw PreconditionError("psi_from_inverse: enumeration must target a_" + std::to_string(i));
  }
  return InversePsi(f, g, i, enumeration);
}

NilpotencyResult nilpotent_coefficient_exponent(const Polynomial& f, const Polynomial& g, std::size_t i,
                                                std::size_t max_iters) {
  require_pipeline_inputs(f, g, i);
  return nilpotency_exponent(
      f.ring(), f.coefficient(i), [&](const Enumeration& e) { return psi_from_inverse(f, g, i, e); }, max_iters);
}

}  // namespace ncimax
