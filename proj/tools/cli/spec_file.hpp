#pragma once

#include <map>
#include <optional>
#include <string>

#include "aimlinsys/coefficient.hpp"
#include "aimlinsys/expression.hpp"
#include "aimlinsys/families.hpp"

namespace aimlinsys::cli {

struct SpecEntry {
  std::string value;
  int line = 0;
  /// Column of the first character of the value.
  int column = 0;
};

/// Key-value text with [system], [params] and [run] sections; '#' starts a comment.
struct SpecFile {
  std::map<std::string, SpecEntry> system;
  std::map<std::string, SpecEntry> params;
  std::map<std::string, SpecEntry> run;
  int system_line = 0;
};

SpecFile parse_spec_file(const std::string& text);
SpecFile load_spec_file(const std::string& path);

struct RunConfig {
  EvalMode mode = EvalMode::exact;
  Domain domain{0.0, 1.0};
  std::optional<double> anchor;
  int n_max = 30;
  std::optional<double> tol;
  Params params;
  std::string out;
  std::string path = "auto";
  Complex C1 = 1.0;
  Complex C2 = 1.0;
};

/// Overrides from the command line; unset fields keep the file's values.
struct CliOverrides {
  std::optional<std::string> mode;
  std::optional<std::string> domain;
  std::optional<double> anchor;
  std::optional<int> n_max;
  std::optional<double> tol;
  std::optional<std::string> out;
  std::optional<std::string> params;
  std::optional<std::string> path;
};

RunConfig resolve_config(const SpecFile& spec, const CliOverrides& cli);

/// "LO:HI".
Domain parse_domain(const std::string& text);
/// "k=v,k=v" with rational values.
Params parse_params(const std::string& text);
Rational parse_constant(const std::string& text, int line = 1, int column = 1);

LinearSystem build_system(const SpecFile& spec, const RunConfig& config);
/// The optional [run] alpha expression.
std::optional<CoefficientFn> user_alpha(const SpecFile& spec, const RunConfig& config);

}  // namespace aimlinsys::cli
