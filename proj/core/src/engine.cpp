#include "ncimax/engine.hpp"

#include <string>

#include "ncimax/errors.hpp"

namespace ncimax {

namespace {

const StateEntry& in_entry() {
  static const StateEntry entry = StateEntry::in();
  return entry;
}

void require_bound(std::size_t bound, const Enumeration& enumeration) {
  if (bound >= enumeration.size()) {
    throw ContractViolation("functionals returned bound " + std::to_string(bound) +
                            " outside the enumeration (size " + std::to_string(enumeration.size()) + ")");
  }
}

}  // namespace

const StateEntry& State::entry(std::size_t n) const { return n < prefix_.size() ? prefix_[n] : in_entry(); }

State State::truncated_with(std::size_t n, WitnessCode code) const {
  std::vector<StateEntry> next;
  next.reserve(n + 1);
  for (std::size_t m = 0; m < n; ++m) next.push_back(entry(m));
  next.push_back(StateEntry::out(std::move(code)));
  return State(std::move(next));
}

ElementSet State::members(const Enumeration& enumeration) const {
  ElementSet m(enumeration.size());
  for (std::size_t n = 0; n < enumeration.size(); ++n) {
    if (in_m(n)) m.insert(enumeration[n]);
  }
  return m;
}

std::vector<std::size_t> State::members_below(std::size_t n) const {
  std::vector<std::size_t> out;
  for (std::size_t m = 0; m < n; ++m) {
    if (in_m(m)) out.push_back(m);
  }
  return out;
}

GeneratorList State::segment_with(const Enumeration& enumeration, std::size_t n) const {
  GeneratorList gens;
  for (const auto m : members_below(n)) gens.push_back(enumeration.at(m));
  gens.push_back(enumeration.at(n));
  return gens;
}

State initial_state() { return State{}; }

StepResult advance(const State& s, const Query& query, const NegR& neg_r, const Enumeration& enumeration) {
  require_bound(query.bound, enumeration);

  // The listing of M[s]|n grows by one element each time the scan passes an
  // In entry, so it is built incrementally.
  GeneratorList segment;
  for (std::size_t n = 0; n <= query.bound; ++n) {
    if (!s.in_m(n)) continue;
    segment.push_back(enumeration[n]);
    if (neg_r(segment, query.code)) {
      return NextState{n, s.truncated_with(n, query.code)};
    }
  }
  return Terminated{};
}

StepResult step(const State& s, const OmegaPhi& functionals, const NegR& neg_r, const Enumeration& enumeration) {
  return advance(s, functionals(s), neg_r, enumeration);
}

std::vector<std::size_t> Trace::removals() const {
  std::vector<std::size_t> out;
  for (const auto& st : steps) {
    if (st.removed) out.push_back(*st.removed);
  }
  return out;
}

RunResult run(const OmegaPhi& functionals, const NegR& neg_r, const Enumeration& enumeration, std::size_t max_iters,
              const StateObserver& observer) {
  if (max_iters == 0) {
    throw ContractViolation("run: max_iters must be at least 1");
  }
  RunResult result{initial_state(), {}};
  for (std::size_t i = 0; i < max_iters; ++i) {
    if (observer) observer(i, result.final_state);
    Query query = functionals(result.final_state);
    auto outcome = advance(result.final_state, query, neg_r, enumeration);
    if (std::holds_alternative<Terminated>(outcome)) {
      result.trace.steps.push_back(TraceStep{i, std::move(query), std::nullopt});
      return result;
    }
    auto& next = std::get<NextState>(outcome);
    result.trace.steps.push_back(TraceStep{i, std::move(query), next.removed});
    result.final_state = std::move(next.state);
  }
  throw CapExceeded("run: no termination after " + std::to_string(max_iters) + " steps");
}

std::vector<State> replay(const Trace& trace) {
  std::vector<State> states{initial_state()};
  for (const auto& st : trace.steps) {
    if (st.terminated()) break;
    states.push_back(states.back().truncated_with(*st.removed, st.query.code));
  }
  return states;
}

bool verify_approx_max(const State& s, const OmegaPhi& functionals, const NegR& neg_r,
                       const Enumeration& enumeration) {
  const Query query = functionals(s);
  require_bound(query.bound, enumeration);
  for (std::size_t n = 0; n <= query.bound; ++n) {
    const auto segment = s.segment_with(enumeration, n);
    const auto& e = s.entry(n);
    if (e.is_in() && neg_r(segment, query.code)) return false;
    if (e.is_out() && !neg_r(segment, e.code())) return false;
  }
  return true;
}

bool check_domain_invariant(const State& s, const NegR& neg_r, const Enumeration& enumeration) {
  for (std::size_t n = 0; n < s.prefix().size(); ++n) {
    const auto& e = s.entry(n);
    if (e.is_out()) {
      if (n >= enumeration.size() || !neg_r(s.segment_with(enumeration, n), e.code())) return false;
    }
  }
  return true;
}

}  // namespace ncimax
