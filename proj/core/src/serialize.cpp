#include "ncimax/serialize.hpp"

#include <string>

#include "ncimax/errors.hpp"

namespace ncimax {

namespace {

using nlohmann::json;

json elements_to_json(std::span<const Element> xs) {
  json out = json::array();
  for (const auto x : xs) out.push_back(x.index);
  return out;
}

std::vector<Element> elements_from_json(const json& j, const FiniteRing& ring) {
  if (!j.is_array()) throw ParseError("expected an array of element indices");
  std::vector<Element> out;
  for (const auto& v : j) {
    if (!v.is_number_unsigned()) throw ParseError("element index must be a non-negative integer");
    const auto idx = v.get<std::uint64_t>();
    if (idx >= ring.size()) throw ParseError("element index " + std::to_string(idx) + " outside " + ring.descriptor());
    out.push_back(ring.element(idx));
  }
  return out;
}

std::uint64_t unsigned_field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key) || !j.at(key).is_number_unsigned()) {
    throw ParseError(std::string("missing or invalid field '") + key + "'");
  }
  return j.at(key).get<std::uint64_t>();
}

}  // namespace

json to_json(const Certificate& cert) {
  return json{{"gens", elements_to_json(cert.generators)},
              {"coeffs", elements_to_json(cert.coefficients)},
              {"e", cert.exponent}};
}

Certificate certificate_from_json(const json& j, const FiniteRing& ring) {
  if (!j.is_object() || !j.contains("gens") || !j.contains("coeffs")) throw ParseError("malformed certificate");
  return Certificate{elements_from_json(j.at("gens"), ring), elements_from_json(j.at("coeffs"), ring),
                     unsigned_field(j, "e")};
}

json to_json(const WitnessCode& code) {
  return json{{"coeffs", elements_to_json(code.coefficients)}, {"e", code.exponent}};
}

WitnessCode witness_code_from_json(const json& j, const FiniteRing& ring) {
  if (!j.is_object() || !j.contains("coeffs")) throw ParseError("malformed witness code");
  return WitnessCode{elements_from_json(j.at("coeffs"), ring), unsigned_field(j, "e")};
}

json to_json(const TraceStep& step) {
  json out{{"i", step.i}, {"n_i", step.query.bound}, {"p", to_json(step.query.code)}};
  if (step.terminated()) {
    out["outcome"] = "terminated";
  } else {
    out["outcome"] = json{{"removed", *step.removed}};
  }
  return out;
}

TraceStep trace_step_from_json(const json& j, const FiniteRing& ring) {
  if (!j.is_object() || !j.contains("p") || !j.contains("outcome")) throw ParseError("malformed trace step");
  TraceStep step;
  step.i = unsigned_field(j, "i");
  step.query.bound = unsigned_field(j, "n_i");
  step.query.code = witness_code_from_json(j.at("p"), ring);
  const auto& outcome = j.at("outcome");
  if (outcome == "terminated") {
    step.removed = std::nullopt;
  } else {
    step.removed = unsigned_field(outcome, "removed");
  }
  return step;
}

json to_json(const PsiVerdict& verdict) {
  const auto c = static_cast<unsigned>(verdict_case(verdict));
  if (c <= 2) return c;
  return std::visit(
      [c](const auto& v) -> json {
        if constexpr (requires { v.k; }) {
          return json{{"case", c}, {"i", v.i}, {"j", v.j}, {"k", v.k}};
        } else {
          return c;
        }
      },
      verdict);
}

PsiVerdict verdict_from_json(const json& j) {
  if (j.is_number_integer()) {
    switch (j.get<int>()) {
      case 0: return ZeroAbsent{};
      case 1: return OneIn{};
      case 2: return TargetIn{};
      default: break;
    }
    throw ParseError("verdict code must be 0, 1 or 2 when given as a number");
  }
  const auto c = unsigned_field(j, "case");
  const auto i = unsigned_field(j, "i");
  const auto jj = unsigned_field(j, "j");
  const auto k = unsigned_field(j, "k");
  switch (c) {
    case 3: return AddViolation{i, jj, k};
    case 4: return AbsorbViolation{i, jj, k};
    case 5: return PrimeViolation{i, jj, k};
    default: break;
  }
  throw ParseError("verdict case must be 3, 4 or 5");
}

void write_trace_jsonl(std::ostream& out, const Trace& trace) {
  for (const auto& step : trace.steps) out << to_json(step).dump() << '\n';
}

Trace read_trace_jsonl(std::istream& in, const FiniteRing& ring) {
  Trace trace;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& err) {
      throw ParseError(std::string("trace line is not JSON: ") + err.what());
    }
    trace.steps.push_back(trace_step_from_json(j, ring));
  }
  return trace;
}

}  // namespace ncimax
