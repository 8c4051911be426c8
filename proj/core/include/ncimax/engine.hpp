#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "ncimax/generation.hpp"
#include "ncimax/ring.hpp"

namespace ncimax {

/// One entry of a state: In (element currently in M) or Out(code), the
/// stored evidence for excluding it.
class StateEntry {
 public:
  static StateEntry in() { return StateEntry{}; }
  static StateEntry out(WitnessCode code) { return StateEntry{std::move(code)}; }

  bool is_in() const { return !code_.has_value(); }
  bool is_out() const { return code_.has_value(); }
  /// Precondition: is_out().
  const WitnessCode& code() const { return *code_; }

  friend bool operator==(const StateEntry&, const StateEntry&) = default;

 private:
  StateEntry() = default;
  explicit StateEntry(WitnessCode code) : code_(std::move(code)) {}

  std::optional<WitnessCode> code_;
};

/// Approximation of an explicit maximal object. The explicit prefix is
/// followed by an implicit tail of In entries, and a non-empty prefix
/// always ends in an Out entry.
///
/// M[s] = { x_n : entry(n) is In },  f[s](n) = code of entry(n) when Out.
class State {
 public:
  State() = default;

  const StateEntry& entry(std::size_t n) const;
  bool in_m(std::size_t n) const { return entry(n).is_in(); }
  std::span<const StateEntry> prefix() const { return prefix_; }

  /// s|n :: Out(code) :: In, In, ...
  State truncated_with(std::size_t n, WitnessCode code) const;

  /// M[s] as a subset of the ring.
  ElementSet members(const Enumeration& enumeration) const;
  /// Enumeration indices of M[s] below n, ascending.
  std::vector<std::size_t> members_below(std::size_t n) const;
  /// Ascending-index listing of M[s]|n followed by x_n.
  GeneratorList segment_with(const Enumeration& enumeration, std::size_t n) const;

  friend bool operator==(const State&, const State&) = default;

 private:
  explicit State(std::vector<StateEntry> prefix) : prefix_(std::move(prefix)) {}

  std::vector<StateEntry> prefix_;
};

State initial_state();

/// The pair (omega, phi)(s): a search bound and a candidate witness code.
struct Query {
  std::size_t bound = 0;
  WitnessCode code;

  friend bool operator==(const Query&, const Query&) = default;
};

using OmegaPhi = std::function<Query(const State&)>;
/// Decides not-R for a generator listing and a code.
using NegR = std::function<bool(std::span<const Element> gens, const WitnessCode& code)>;

struct Terminated {};
struct NextState {
  std::size_t removed;
  State state;
};
using StepResult = std::variant<Terminated, NextState>;

/// One update: query the functionals, then scan n = 0..bound for the first
/// In entry whose segment is refuted by the queried code.
/// Throws ContractViolation if the bound lies outside the enumeration.
StepResult step(const State& s, const OmegaPhi& functionals, const NegR& neg_r, const Enumeration& enumeration);

/// The scan-and-update half of step() for an already computed query.
StepResult advance(const State& s, const Query& query, const NegR& neg_r, const Enumeration& enumeration);

struct TraceStep {
  std::size_t i = 0;
  Query query;
  std::optional<std::size_t> removed;  // nullopt: terminated

  bool terminated() const { return !removed.has_value(); }
  friend bool operator==(const TraceStep&, const TraceStep&) = default;
};

struct Trace {
  std::vector<TraceStep> steps;

  std::vector<std::size_t> removals() const;
  friend bool operator==(const Trace&, const Trace&) = default;
};

struct RunResult {
  State final_state;
  Trace trace;
};

/// Called with s_0 and with every later state, before it is queried.
using StateObserver = std::function<void(std::size_t i, const State&)>;

/// Iterates step() from s_0. At most max_iters queries are made; a run
/// that has not terminated by then throws CapExceeded.
RunResult run(const OmegaPhi& functionals, const NegR& neg_r, const Enumeration& enumeration, std::size_t max_iters,
              const StateObserver& observer = {});

/// Rebuilds s_0, s_1, ..., s_j from a trace without re-querying anything.
std::vector<State> replay(const Trace& trace);

/// With (bound, p) = functionals(s), checks for every n <= bound:
/// In entries are not refuted by p, Out entries are refuted by their code.
bool verify_approx_max(const State& s, const OmegaPhi& functionals, const NegR& neg_r,
                       const Enumeration& enumeration);

/// Every Out entry at n is refuted by its stored code against M[s]|n + x_n.
bool check_domain_invariant(const State& s, const NegR& neg_r, const Enumeration& enumeration);

}  // namespace ncimax
