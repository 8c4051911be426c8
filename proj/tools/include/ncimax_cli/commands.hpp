#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>

namespace ncimax::cli {

enum class Mode { Element, Poly, Verify };
enum class Format { Text, Json };

/// Exit codes of the ncimax tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitPrecondition = 2;
inline constexpr int kExitInternal = 3;

struct RunConfig {
  std::string ring;
  Mode mode = Mode::Element;
  std::optional<std::string> r;
  std::optional<std::string> f;
  std::optional<std::string> g;
  std::optional<std::size_t> i;
  std::optional<std::size_t> max_iters;  // default 10 * |ring|^2
  std::optional<std::string> trace_path;
  Format format = Format::Text;
  bool verify = false;
  std::size_t oracle_bound = 30;  // size bound for ideal enumeration in verify
};

int cmd_element(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_poly(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Runs the command selected by config.mode and maps library errors to exit
/// codes, printing a diagnostic to `err`.
int dispatch(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv and dispatches.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ncimax::cli
