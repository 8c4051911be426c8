#include "ncimax/nilradical.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "ncimax/errors.hpp"

namespace ncimax {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool indices_valid(std::size_t i, std::size_t j, std::size_t k, const Enumeration& e) {
  return i < e.size() && j < e.size() && k < e.size();
}

const WitnessCode& stored_code(const State& s, std::size_t n, const char* role) {
  const auto& entry = s.entry(n);
  if (!entry.is_out()) {
    throw ContractViolation(std::string("combine_witness: entry ") + std::to_string(n) + " (" + role +
                            ") is In; the verdict contract requires it to be excluded");
  }
  return entry.code();
}

std::uint64_t add_exponents(std::uint64_t a, std::uint64_t b) {
  if (a > std::numeric_limits<std::uint64_t>::max() - b) {
    throw InternalInvariant("combine_witness: exponent overflow");
  }
  return a + b;
}

}  // namespace

int verdict_case(const PsiVerdict& verdict) { return static_cast<int>(verdict.index()); }

bool satisfies_contract(const PsiVerdict& verdict, const ElementSet& s, const Enumeration& e) {
  const auto& ring = e.ring();
  auto in = [&](std::size_t n) { return s.contains(e[n]); };
  return std::visit(
      overloaded{
          [&](const ZeroAbsent&) { return !s.contains(ring.zero()); },
          [&](const OneIn&) { return s.contains(ring.one()); },
          [&](const TargetIn&) { return s.contains(e.target()); },
          [&](const AddViolation& v) {
            return indices_valid(v.i, v.j, v.k, e) && ring.add(e[v.i], e[v.j]) == e[v.k] && in(v.i) && in(v.j) &&
                   !in(v.k);
          },
          [&](const AbsorbViolation& v) {
            return indices_valid(v.i, v.j, v.k, e) && ring.mul(e[v.i], e[v.j]) == e[v.k] && in(v.i) && !in(v.k);
          },
          [&](const PrimeViolation& v) {
            return indices_valid(v.i, v.j, v.k, e) && ring.mul(e[v.i], e[v.j]) == e[v.k] && !in(v.i) && !in(v.j) &&
                   in(v.k);
          },
      },
      verdict);
}

std::string describe(const PsiVerdict& verdict) {
  return std::visit(
      overloaded{
          [](const ZeroAbsent&) { return std::string("0"); },
          [](const OneIn&) { return std::string("1"); },
          [](const TargetIn&) { return std::string("2"); },
          [](const auto& v) {
            std::ostringstream out;
            out << "(" << (std::is_same_v<std::decay_t<decltype(v)>, AddViolation>      ? 3
                           : std::is_same_v<std::decay_t<decltype(v)>, AbsorbViolation> ? 4
                                                                                        : 5)
                << "," << v.i << "," << v.j << "," << v.k << ")";
            return out.str();
          },
      },
      verdict);
}

PsiVerdict psi_finite(const Enumeration& e, const ElementSet& s, PsiSearch search) {
  const auto& ring = e.ring();
  const std::size_t size = e.size();
  auto in = [&](std::size_t n) { return s.contains(e[n]); };

  if (!s.contains(ring.zero())) return ZeroAbsent{};
  if (s.contains(ring.one())) return OneIn{};
  if (s.contains(e.target())) return TargetIn{};

  // last_below[k]: largest m < k with x_m in S (0 is in S, so only k = 0
  // has no such m). findcont excludes the largest index a certificate uses,
  // and each verdict's certificate uses M|k (or M|i, M|j) plus the named
  // elements, so that index is known from S alone.
  std::vector<std::size_t> last_below(size + 1, 0);
  for (std::size_t k = 1; k <= size; ++k) last_below[k] = in(k - 1) ? k - 1 : last_below[k - 1];

  std::optional<PsiVerdict> best;
  std::size_t best_removal = size;
  // Returns true when the scan can stop.
  auto offer = [&](std::size_t removal, PsiVerdict verdict) {
    if (search == PsiSearch::FirstHit) {
      best = verdict;
      return true;
    }
    if (removal < best_removal) {
      best_removal = removal;
      best = verdict;
    }
    return best_removal == 0;
  };

  for (std::size_t i = 0; i < size; ++i) {
    if (!in(i)) continue;
    for (std::size_t j = 0; j < size; ++j) {
      if (!in(j)) continue;
      const auto k = e.index_of(ring.add(e[i], e[j]));
      if (!in(k) && offer(std::max({i, j, last_below[k]}), AddViolation{i, j, k})) return *best;
    }
  }
  for (std::size_t i = 0; i < size; ++i) {
    if (!in(i)) continue;
    for (std::size_t j = 0; j < size; ++j) {
      const auto k = e.index_of(ring.mul(e[i], e[j]));
      if (!in(k) && offer(std::max(i, last_below[k]), AbsorbViolation{i, j, k})) return *best;
    }
  }
  for (std::size_t i = 0; i < size; ++i) {
    if (in(i)) continue;
    for (std::size_t j = 0; j < size; ++j) {
      if (in(j)) continue;
      const auto k = e.index_of(ring.mul(e[i], e[j]));
      if (in(k) && offer(std::max({k, last_below[i], last_below[j]}), PrimeViolation{i, j, k})) return *best;
    }
  }
  if (best) return *best;
  throw NotInAllPrimes("the queried set is a prime ideal not containing " + ring.format(e.target()) + "; " +
                       ring.format(e.target()) + " is not nilpotent in " + ring.descriptor());
}

PsiFunctional make_psi_finite(Enumeration enumeration, PsiSearch search) {
  return [e = std::move(enumeration), search](const ElementSet& s) { return psi_finite(e, s, search); };
}

Certificate combine_witness(const PsiVerdict& verdict, const State& s, const Enumeration& e) {
  const auto& ring = e.ring();
  const Element r = e.target();
  auto listing_below = [&](std::size_t n) {
    GeneratorList out;
    for (const auto m : s.members_below(n)) out.push_back(e[m]);
    return out;
  };
  // Splits a stored code for entry n into its prefix part b'_1..b'_p and the
  // coefficient b'_{p+1} of x_n.
  auto split_code = [&](const WitnessCode& code, std::size_t p, std::size_t n) {
    if (code.coefficients.size() != p + 1) {
      throw ContractViolation("combine_witness: stored code at " + std::to_string(n) + " has " +
                              std::to_string(code.coefficients.size()) + " coefficients, expected " +
                              std::to_string(p + 1));
    }
    return code.coefficients.back();
  };

  Certificate cert = std::visit(
      overloaded{
          [&](const ZeroAbsent&) -> Certificate {
            throw ContractViolation("combine_witness: ZeroAbsent carries no witness");
          },
          [&](const OneIn&) { return Certificate{{e[1]}, {r}, 1}; },
          [&](const TargetIn&) { return Certificate{{e[2]}, {ring.one()}, 1}; },
          [&](const AddViolation& v) {
            if (!indices_valid(v.i, v.j, v.k, e)) throw ContractViolation("combine_witness: index out of range");
            const auto& code = stored_code(s, v.k, "k");
            auto gens = listing_below(v.k);
            const auto last = split_code(code, gens.size(), v.k);
            std::vector<Element> coeffs(code.coefficients.begin(), code.coefficients.end() - 1);
            gens.push_back(e[v.i]);
            gens.push_back(e[v.j]);
            coeffs.push_back(last);
            coeffs.push_back(last);
            return Certificate{std::move(gens), std::move(coeffs), code.exponent};
          },
          [&](const AbsorbViolation& v) {
            if (!indices_valid(v.i, v.j, v.k, e)) throw ContractViolation("combine_witness: index out of range");
            const auto& code = stored_code(s, v.k, "k");
            auto gens = listing_below(v.k);
            const auto last = split_code(code, gens.size(), v.k);
            std::vector<Element> coeffs(code.coefficients.begin(), code.coefficients.end() - 1);
            gens.push_back(e[v.i]);
            coeffs.push_back(ring.mul(e[v.j], last));
            return Certificate{std::move(gens), std::move(coeffs), code.exponent};
          },
          [&](const PrimeViolation& v) {
            if (!indices_valid(v.i, v.j, v.k, e)) throw ContractViolation("combine_witness: index out of range");
            // (sum_a a*b') r^{e_j} + x_i b'_last (sum_b b*b'') + x_i x_j b'_last b''_last = r^{e_i + e_j}
            const auto& code_i = stored_code(s, v.i, "i");
            const auto& code_j = stored_code(s, v.j, "j");
            const auto alphas = listing_below(v.i);
            const auto betas = listing_below(v.j);
            const auto last_i = split_code(code_i, alphas.size(), v.i);
            const auto last_j = split_code(code_j, betas.size(), v.j);
            const Element r_ej = ring.pow(r, code_j.exponent);
            const Element xi_last = ring.mul(e[v.i], last_i);

            Certificate out;
            for (std::size_t t = 0; t < alphas.size(); ++t) {
              out.generators.push_back(alphas[t]);
              out.coefficients.push_back(ring.mul(code_i.coefficients[t], r_ej));
            }
            for (std::size_t t = 0; t < betas.size(); ++t) {
              out.generators.push_back(betas[t]);
              out.coefficients.push_back(ring.mul(xi_last, code_j.coefficients[t]));
            }
            out.generators.push_back(ring.mul(e[v.i], e[v.j]));
            out.coefficients.push_back(ring.mul(last_i, last_j));
            out.exponent = add_exponents(code_i.exponent, code_j.exponent);
            return out;
          },
      },
      verdict);

  for (const auto g : cert.generators) {
    if (!s.in_m(e.index_of(g))) {
      throw ContractViolation("combine_witness: generator " + ring.format(g) + " is not in M[s]");
    }
  }
  if (!check_certificate(ring, cert, r)) {
    throw ContractViolation("combine_witness: assembled certificate for verdict " + describe(verdict) +
                            " does not check; the state violates the domain invariant");
  }
  return cert;
}

Query findcont(const Certificate& cert, const State& s, const Enumeration& e) {
  const auto& ring = e.ring();
  if (cert.generators.empty()) {
    throw ContractViolation("findcont: certificate has no generators");
  }
  if (!check_certificate(ring, cert, e.target())) {
    throw ContractViolation("findcont: certificate does not check");
  }
  std::size_t n = 0;
  for (const auto g : cert.generators) {
    const auto idx = e.index_of(g);
    if (!s.in_m(idx)) {
      throw ContractViolation("findcont: generator " + ring.format(g) + " is not in M[s]");
    }
    n = std::max(n, idx);
  }

  const auto below = s.members_below(n);
  std::vector<std::size_t> slot(e.size(), below.size());
  for (std::size_t p = 0; p < below.size(); ++p) slot[below[p]] = p;

  WitnessCode code{std::vector<Element>(below.size() + 1, ring.zero()), cert.exponent};
  for (std::size_t t = 0; t < cert.generators.size(); ++t) {
    auto& c = code.coefficients[slot[e.index_of(cert.generators[t])]];
    c = ring.add(c, cert.coefficients[t]);
  }

  if (!neg_R_holds(ring, s.segment_with(e, n), code, e.target())) {
    throw InternalInvariant("findcont: padded code does not refute its segment");
  }
  return Query{n, std::move(code)};
}

NegR make_neg_r(const Enumeration& enumeration) {
  return [ring = enumeration.ring(), r = enumeration.target()](std::span<const Element> gens,
                                                               const WitnessCode& code) {
    return neg_R_holds(ring, gens, code, r);
  };
}

OmegaPhi make_omega_phi(PsiFunctional psi, Enumeration enumeration, WitnessLog* log) {
  return [psi = std::move(psi), e = std::move(enumeration), log](const State& s) {
    const PsiVerdict verdict = psi(s.members(e));
    if (std::holds_alternative<ZeroAbsent>(verdict)) {
      if (log) log->push_back(WitnessEvent{s, verdict, std::nullopt, Query{0, WitnessCode::null()}});
      return Query{0, WitnessCode::null()};
    }
    auto cert = combine_witness(verdict, s, e);
    auto query = findcont(cert, s, e);
    if (log) log->push_back(WitnessEvent{s, verdict, std::move(cert), query});
    return query;
  };
}

std::size_t default_max_iters(const FiniteRing& ring) { return 10 * ring.size() * ring.size(); }

NilpotencyResult nilpotency_exponent(const FiniteRing& ring, Element r, const PsiBuilder& psi_builder,
                                     std::size_t max_iters) {
  if (!ring.contains(r)) {
    throw ContractViolation("nilpotency_exponent: target is not an element of " + ring.descriptor());
  }
  NilpotencyResult result;
  if (r == ring.zero()) {
    result.exponent = 1;
    result.short_circuit = true;
    return result;
  }
  if (r == ring.one()) {
    throw NotInAllPrimes("1 is not nilpotent in the nontrivial ring " + ring.descriptor());
  }

  Enumeration e = make_enumeration(ring, r);
  auto functionals = make_omega_phi(psi_builder(e), e, &result.witnesses);
  auto outcome = run(functionals, make_neg_r(e), e, max_iters);

  const auto& head = outcome.final_state.entry(0);
  if (!head.is_out()) {
    throw InternalInvariant("terminal state keeps 0 in M; no exponent can be read off");
  }
  const auto exponent = head.code().exponent;
  if (exponent == 0 || ring.pow(r, exponent) != ring.zero()) {
    throw InternalInvariant("terminal exponent " + std::to_string(exponent) + " does not annihilate " +
                            ring.format(r));
  }
  result.exponent = exponent;
  result.enumeration = std::move(e);
  result.trace = std::move(outcome.trace);
  result.final_state = std::move(outcome.final_state);
  return result;
}

RunAudit audit_run(const FiniteRing& ring, Element r, const NilpotencyResult& result, const PsiBuilder& psi_builder) {
  RunAudit audit;
  audit.exponent_annihilates = result.exponent > 0 && ring.pow(r, result.exponent) == ring.zero();
  if (result.short_circuit || !result.enumeration) {
    audit.approx_max = true;
    return audit;
  }
  const auto& e = *result.enumeration;
  const auto neg_r = make_neg_r(e);

  const auto states = replay(result.trace);
  for (const auto& s : states) {
    ++audit.states_checked;
    if (!check_domain_invariant(s, neg_r, e)) ++audit.domain_failures;
  }
  if (states.back() != result.final_state) ++audit.domain_failures;

  audit.approx_max = verify_approx_max(result.final_state, make_omega_phi(psi_builder(e), e), neg_r, e);

  for (const auto& event : result.witnesses) {
    if (event.certificate) {
      ++audit.certificates_checked;
      const auto& cert = *event.certificate;
      bool good = check_certificate(ring, cert, r);
      for (const auto g : cert.generators) good = good && event.state.in_m(e.index_of(g));
      if (!good) ++audit.certificate_failures;
      const auto& q = event.query;
      if (q.bound >= e.size() || !event.state.in_m(q.bound) ||
          !neg_R_holds(ring, event.state.segment_with(e, q.bound), q.code, r)) {
        ++audit.code_failures;
      }
    } else if (!event.query.code.is_null()) {
      ++audit.code_failures;
    }
  }
  return audit;
}

}  // namespace ncimax
