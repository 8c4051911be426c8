#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ncimax/engine.hpp"
#include "ncimax/generation.hpp"
#include "ncimax/ring.hpp"

namespace ncimax {

// Verdicts of a counterexample functional psi for a queried set S. Indices
// are enumeration indices. Each verdict either reports that the target r is
// in S or names a specific prime-ideal axiom that S breaks.

/// 0 is not in S.
struct ZeroAbsent {
  friend bool operator==(const ZeroAbsent&, const ZeroAbsent&) = default;
};
/// 1 is in S.
struct OneIn {
  friend bool operator==(const OneIn&, const OneIn&) = default;
};
/// r is in S.
struct TargetIn {
  friend bool operator==(const TargetIn&, const TargetIn&) = default;
};
/// x_i + x_j = x_k with x_i, x_j in S and x_k not in S.
struct AddViolation {
  std::size_t i, j, k;
  friend bool operator==(const AddViolation&, const AddViolation&) = default;
};
/// x_i * x_j = x_k with x_i in S and x_k not in S.
struct AbsorbViolation {
  std::size_t i, j, k;
  friend bool operator==(const AbsorbViolation&, const AbsorbViolation&) = default;
};
/// x_i * x_j = x_k with x_i, x_j not in S and x_k in S.
struct PrimeViolation {
  std::size_t i, j, k;
  friend bool operator==(const PrimeViolation&, const PrimeViolation&) = default;
};

using PsiVerdict = std::variant<ZeroAbsent, OneIn, TargetIn, AddViolation, AbsorbViolation, PrimeViolation>;

/// Numeric case code 0..5 of a verdict.
int verdict_case(const PsiVerdict& verdict);

/// Checks a verdict against its case contract for the queried set S.
bool satisfies_contract(const PsiVerdict& verdict, const ElementSet& s, const Enumeration& enumeration);

/// Human-readable rendering, e.g. "(5,2,2,0)" or "1".
std::string describe(const PsiVerdict& verdict);

using PsiFunctional = std::function<PsiVerdict(const ElementSet&)>;

/// How psi_finite picks among the violations a set exhibits.
enum class PsiSearch {
  /// The violation whose certificate would exclude the smallest enumeration
  /// index; ties go to the FirstHit order.
  LeastRemoval,
  /// The first violation in the fixed order: addition, then absorption,
  /// then primality, each over index pairs (i, j) ascending.
  FirstHit,
};

/// Exhaustive-search psi on a finite ring. Checks 0 absent, 1 present and r
/// present in that order, then searches the pair violations according to
/// `search`. Throws NotInAllPrimes when S is a proper prime ideal missing r.
PsiVerdict psi_finite(const Enumeration& enumeration, const ElementSet& s,
                      PsiSearch search = PsiSearch::LeastRemoval);
PsiFunctional make_psi_finite(Enumeration enumeration, PsiSearch search = PsiSearch::LeastRemoval);

/// Assembles a checked certificate from a non-zero verdict and the excluded
/// entries' stored codes. All generators lie in M[s]. Throws
/// ContractViolation when the verdict is ZeroAbsent, when a needed entry is
/// In, or when the assembled certificate does not check.
Certificate combine_witness(const PsiVerdict& verdict, const State& s, const Enumeration& enumeration);

/// Pads a certificate onto the segment ending at its highest-indexed
/// generator x_n. Coefficients of repeated generators are summed.
Query findcont(const Certificate& cert, const State& s, const Enumeration& enumeration);

/// not-R for generator listings: neg_R_holds against the enumeration target.
NegR make_neg_r(const Enumeration& enumeration);

/// Record of one functional query, kept for auditing a run.
struct WitnessEvent {
  State state;
  PsiVerdict verdict;
  std::optional<Certificate> certificate;  // absent for ZeroAbsent
  Query query;
};
using WitnessLog = std::vector<WitnessEvent>;

/// (omega, phi) built from psi: findcont(combine_witness(psi(M[s]))) when
/// the verdict is not ZeroAbsent, (0, null code) otherwise. When `log` is
/// given every query is appended to it.
OmegaPhi make_omega_phi(PsiFunctional psi, Enumeration enumeration, WitnessLog* log = nullptr);

using PsiBuilder = std::function<PsiFunctional(const Enumeration&)>;

struct NilpotencyResult {
  std::uint64_t exponent = 0;
  /// True when r = 0 was answered without running the engine.
  bool short_circuit = false;
  std::optional<Enumeration> enumeration;
  Trace trace;
  State final_state;
  WitnessLog witnesses;
};

/// 10 * |ring|^2.
std::size_t default_max_iters(const FiniteRing& ring);

/// Runs the engine on the functionals derived from psi and reads the
/// exponent e > 0 with r^e = 0 off the terminal state's entry 0.
/// r = 0 short-circuits to e = 1; r = 1 in a nontrivial ring and any
/// non-nilpotent r raise NotInAllPrimes.
NilpotencyResult nilpotency_exponent(const FiniteRing& ring, Element r, const PsiBuilder& psi_builder,
                                     std::size_t max_iters);

/// Post-hoc checks over a finished run: the domain invariant at every
/// replayed state, approximate maximality at the terminal state, and every
/// logged certificate and padded code.
struct RunAudit {
  std::size_t states_checked = 0;
  std::size_t domain_failures = 0;
  bool approx_max = false;
  std::size_t certificates_checked = 0;
  std::size_t certificate_failures = 0;
  std::size_t code_failures = 0;
  bool exponent_annihilates = false;

  bool ok() const {
    return domain_failures == 0 && approx_max && certificate_failures == 0 && code_failures == 0 &&
           exponent_annihilates;
  }
};

/// `psi_builder` must be the builder the run used. Short-circuited results
/// only have their exponent checked.
RunAudit audit_run(const FiniteRing& ring, Element r, const NilpotencyResult& result, const PsiBuilder& psi_builder);

}  // namespace ncimax
