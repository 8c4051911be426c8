#include "ncimax_cli/commands.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ncimax/errors.hpp"
#include "ncimax/nilradical.hpp"
#include "ncimax/oracle.hpp"
#include "ncimax/poly.hpp"
#include "ncimax/ring.hpp"
#include "ncimax/serialize.hpp"

namespace ncimax::cli {

namespace {

using nlohmann::json;

std::string format_set(const FiniteRing& ring, const ElementSet& s) {
  std::string out = "{";
  bool first = true;
  for (const auto x : s.elements()) {
    if (!first) out += ", ";
    out += ring.format(x);
    first = false;
  }
  return out + "}";
}

// "0*0 + 1*2 = 2^1" for the code a run stored when excluding x_n.
std::string format_evidence(const Enumeration& e, const State& s, const Query& q) {
  const auto& ring = e.ring();
  const auto gens = s.segment_with(e, q.bound);
  std::string out;
  for (std::size_t t = 0; t < gens.size(); ++t) {
    if (t > 0) out += " + ";
    out += ring.format(gens[t]) + "*" + ring.format(q.code.coefficients.at(t));
  }
  return out + " = " + ring.format(e.target()) + "^" + std::to_string(q.code.exponent);
}

std::size_t max_iters_for(const RunConfig& config, const FiniteRing& ring) {
  return config.max_iters.value_or(default_max_iters(ring));
}

void write_trace_file(const RunConfig& config, const Trace& trace) {
  if (!config.trace_path) return;
  std::ofstream file(*config.trace_path);
  if (!file) throw PreconditionError("cannot open trace file " + *config.trace_path);
  write_trace_jsonl(file, trace);
}

// Per-step summary: the state's M, psi's verdict, and the removal with its
// evidence, one line per query.
void print_steps(std::ostream& out, const FiniteRing& ring, const NilpotencyResult& result) {
  const auto& e = *result.enumeration;
  out << "enumeration:";
  for (std::size_t n = 0; n < e.size(); ++n) out << " x_" << n << "=" << ring.format(e[n]);
  out << "\n";
  for (std::size_t i = 0; i < result.trace.steps.size(); ++i) {
    const auto& step = result.trace.steps[i];
    const auto& event = result.witnesses.at(i);
    out << "s_" << i << ": M = " << format_set(ring, event.state.members(e)) << "; psi = " << describe(event.verdict);
    if (step.terminated()) {
      out << "; terminated\n";
    } else {
      out << "; remove x_" << *step.removed << " = " << ring.format(e[*step.removed]) << " with evidence "
          << format_evidence(e, event.state, step.query) << "\n";
    }
  }
}

json steps_json(const NilpotencyResult& result) {
  json steps = json::array();
  if (!result.enumeration) return steps;
  const auto& e = *result.enumeration;
  for (std::size_t i = 0; i < result.trace.steps.size(); ++i) {
    json step = to_json(result.trace.steps[i]);
    const auto& event = result.witnesses.at(i);
    json members = json::array();
    for (const auto x : event.state.members(e).elements()) members.push_back(x.index);
    step["M"] = members;
    step["verdict"] = to_json(event.verdict);
    if (event.certificate) step["certificate"] = to_json(*event.certificate);
    steps.push_back(step);
  }
  return steps;
}

// Oracle cross-check of a finished run; returns true when everything holds.
bool cross_check(std::ostream& out, const FiniteRing& ring, Element r, const NilpotencyResult& result,
                 const PsiBuilder& builder) {
  const auto audit = audit_run(ring, r, result, builder);
  const auto minimum = min_nilpotency_exponent(ring, r);
  const bool above_min = minimum && result.exponent >= *minimum;
  out << "verify: r^e = 0 " << (audit.exponent_annihilates ? "ok" : "FAIL") << "; e >= oracle minimum "
      << (minimum ? std::to_string(*minimum) : "none") << " " << (above_min ? "ok" : "FAIL")
      << "; domain invariant " << (audit.domain_failures == 0 ? "ok" : "FAIL") << " (" << audit.states_checked
      << " states); approximate maximality " << (audit.approx_max ? "ok" : "FAIL") << "; certificates "
      << (audit.certificate_failures == 0 && audit.code_failures == 0 ? "ok" : "FAIL") << " ("
      << audit.certificates_checked << ")\n";
  return audit.ok() && above_min;
}

int report(const RunConfig& config, std::ostream& out, const FiniteRing& ring, Element r,
           const NilpotencyResult& result, const PsiBuilder& builder, json header) {
  write_trace_file(config, result.trace);
  bool verified = true;
  if (config.format == Format::Json) {
    header["e"] = result.exponent;
    header["short_circuit"] = result.short_circuit;
    header["steps"] = steps_json(result);
    if (config.verify) {
      const auto audit = audit_run(ring, r, result, builder);
      const auto minimum = min_nilpotency_exponent(ring, r);
      verified = audit.ok() && minimum && result.exponent >= *minimum;
      header["verified"] = verified;
    }
    out << header.dump(2) << "\n";
  } else {
    if (result.short_circuit) {
      out << "r = 0: short-circuit, no engine run\n";
    } else {
      print_steps(out, ring, result);
    }
    out << "e = " << result.exponent << "\n";
    if (config.verify) verified = cross_check(out, ring, r, result, builder);
  }
  return verified ? kExitOk : kExitInternal;
}

}  // namespace

int cmd_element(const RunConfig& config, std::ostream& out, std::ostream& /*err*/) {
  const auto ring = parse_ring(config.ring);
  if (!config.r) throw ParseError("element mode needs --r");
  const auto r = ring.parse_element(*config.r);
  const PsiBuilder builder = [](const Enumeration& e) { return make_psi_finite(e); };
  const auto result = nilpotency_exponent(ring, r, builder, max_iters_for(config, ring));
  if (config.format == Format::Text) {
    out << "ring " << ring.descriptor() << ", r = " << ring.format(r) << "\n";
  }
  return report(config, out, ring, r, result, builder,
                json{{"mode", "element"}, {"ring", ring.descriptor()}, {"r", r.index}});
}

int cmd_poly(const RunConfig& config, std::ostream& out, std::ostream& /*err*/) {
  const auto ring = parse_ring(config.ring);
  if (!config.f || !config.g || !config.i) throw ParseError("poly mode needs --f, --g and --i");
  const auto f = parse_polynomial(ring, *config.f);
  const auto g = parse_polynomial(ring, *config.g);
  const auto i = *config.i;
  const auto result = nilpotent_coefficient_exponent(f, g, i, max_iters_for(config, ring));
  const auto r = f.coefficient(i);
  const PsiBuilder builder = [&](const Enumeration& e) { return psi_from_inverse(f, g, i, e); };
  if (config.format == Format::Text) {
    out << "ring " << ring.descriptor() << ", f = " << f.format() << ", g = " << g.format() << ", a_" << i << " = "
        << ring.format(r) << "\n";
  }
  return report(config, out, ring, r, result, builder,
                json{{"mode", "poly"}, {"ring", ring.descriptor()}, {"i", i}, {"r", r.index}});
}

int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& /*err*/) {
  const auto ring = parse_ring(config.ring);
  const bool nil_ok = prime_intersection_equals_nilradical(ring, config.oracle_bound);
  bool all_ok = nil_ok;
  json rows = json::array();

  const bool text = config.format == Format::Text;
  if (text) {
    out << "ring " << ring.descriptor() << "\n";
    out << "nilradical = intersection of prime ideals: " << (nil_ok ? "PASS" : "FAIL") << "\n";
    out << "r\tmin_e\te\tsteps\tdomain\tapprox\tcerts\tresult\n";
  }
  const PsiBuilder builder = [](const Enumeration& e) { return make_psi_finite(e); };
  for (std::size_t c = 0; c < ring.size(); ++c) {
    const auto r = ring.element(c);
    const auto minimum = min_nilpotency_exponent(ring, r);
    if (!minimum) continue;
    const auto result = nilpotency_exponent(ring, r, builder, max_iters_for(config, ring));
    const auto audit = audit_run(ring, r, result, builder);
    const bool ok = audit.ok() && result.exponent >= *minimum;
    all_ok = all_ok && ok;
    if (text) {
      out << ring.format(r) << "\t" << *minimum << "\t" << result.exponent << "\t" << result.trace.steps.size()
          << "\t" << (audit.domain_failures == 0 ? "ok" : "FAIL") << "\t" << (audit.approx_max ? "ok" : "FAIL")
          << "\t" << (audit.certificate_failures + audit.code_failures == 0 ? "ok" : "FAIL") << "\t"
          << (ok ? "PASS" : "FAIL") << "\n";
    } else {
      rows.push_back(json{{"r", r.index},
                          {"min_e", *minimum},
                          {"e", result.exponent},
                          {"steps", result.trace.steps.size()},
                          {"pass", ok}});
    }
  }
  if (text) {
    out << (all_ok ? "all pass" : "FAILURES") << "\n";
  } else {
    out << json{{"mode", "verify"}, {"ring", ring.descriptor()}, {"nilradical", nil_ok}, {"rows", rows},
                {"pass", all_ok}}
               .dump(2)
        << "\n";
  }
  return all_ok ? kExitOk : kExitInternal;
}

int dispatch(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    switch (config.mode) {
      case Mode::Element: return cmd_element(config, out, err);
      case Mode::Poly: return cmd_poly(config, out, err);
      case Mode::Verify: return cmd_verify(config, out, err);
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NotInAllPrimes& e) {
    err << "not nilpotent: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const PreconditionError& e) {
    err << "precondition failed: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const SizeBoundExceeded& e) {
    err << "size bound exceeded: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const Error& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"ncimax: nilpotency exponents from prime-ideal evidence"};
  RunConfig config;
  std::string command;
  std::string format = "text";

  app.add_option("command", command, "element | poly | verify (inferred from --r / --f when omitted)")
      ->check(CLI::IsMember({"element", "poly", "verify"}));
  app.add_option("--ring", config.ring, "ring descriptor: zn:<n> or prod:<desc>,<desc>")->required();
  app.add_option("--r", config.r, "target element (element mode)");
  app.add_option("--f", config.f, "unit polynomial, constant term first, e.g. 1,2");
  app.add_option("--g", config.g, "inverse of f");
  app.add_option("--i", config.i, "coefficient index of f to analyse (>= 1)");
  app.add_option("--max-iters", config.max_iters, "iteration cap (default 10*|ring|^2)")
      ->check(CLI::PositiveNumber);
  app.add_option("--trace", config.trace_path, "write the run's trace as JSON lines");
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"text", "json"}));
  app.add_flag("--verify", config.verify, "cross-check the run against the brute-force oracle");
  app.add_option("--bound", config.oracle_bound, "largest ring the verify command enumerates ideals of");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, eo;
    const int code = app.exit(e, o, eo);
    out << o.str();
    err << eo.str();
    return code == 0 ? kExitOk : kExitUsage;
  }

  config.format = format == "json" ? Format::Json : Format::Text;
  if (command.empty()) {
    if (config.f || config.g || config.i) {
      command = "poly";
    } else if (config.r) {
      command = "element";
    } else {
      err << "error: give a command or one of --r / --f\n";
      return kExitUsage;
    }
  }
  config.mode = command == "poly" ? Mode::Poly : command == "verify" ? Mode::Verify : Mode::Element;
  if (config.mode == Mode::Element && (config.f || config.g || config.i)) {
    err << "error: --f/--g/--i belong to poly mode\n";
    return kExitUsage;
  }
  if (config.mode == Mode::Poly && config.r) {
    err << "error: --r belongs to element mode\n";
    return kExitUsage;
  }
  return dispatch(config, out, err);
}

}  // namespace ncimax::cli
