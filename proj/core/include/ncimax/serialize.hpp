#pragma once

#include <istream>
#include <ostream>

#include <nlohmann/json.hpp>

#include "ncimax/engine.hpp"
#include "ncimax/generation.hpp"
#include "ncimax/nilradical.hpp"

namespace ncimax {

// Elements are written as canonical indices.

/// {"gens":[...], "coeffs":[...], "e":k}
nlohmann::json to_json(const Certificate& cert);
Certificate certificate_from_json(const nlohmann::json& j, const FiniteRing& ring);

/// {"coeffs":[...], "e":k}
nlohmann::json to_json(const WitnessCode& code);
WitnessCode witness_code_from_json(const nlohmann::json& j, const FiniteRing& ring);

/// {"i":k, "n_i":n, "p":{...}, "outcome":"terminated" | {"removed":n}}
nlohmann::json to_json(const TraceStep& step);
TraceStep trace_step_from_json(const nlohmann::json& j, const FiniteRing& ring);

/// 0 | 1 | 2 | {"case":3|4|5, "i":..., "j":..., "k":...}
nlohmann::json to_json(const PsiVerdict& verdict);
PsiVerdict verdict_from_json(const nlohmann::json& j);

/// One JSON object per line.
void write_trace_jsonl(std::ostream& out, const Trace& trace);
Trace read_trace_jsonl(std::istream& in, const FiniteRing& ring);

}  // namespace ncimax
