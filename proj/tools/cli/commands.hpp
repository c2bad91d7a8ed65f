#pragma once

#include <exception>
#include <iosfwd>
#include <optional>
#include <string>

#include "aimlinsys/closed_form.hpp"
#include "spec_file.hpp"

namespace aimlinsys::cli {

enum ExitCode : int { kOk = 0, kNoPath = 1, kConfigError = 2, kVerifyFailed = 3, kResourceGuard = 4 };

/// JSON goes to `out`, human-readable text to `err`.
struct Streams {
  std::ostream& out;
  std::ostream& err;
};

int cmd_analyze(const SpecFile& spec, const RunConfig& config, Streams io);
int cmd_solve(const SpecFile& spec, const RunConfig& config, Streams io);
/// `source` is a CSV written by solve or a solution path name ("auto", "aim-alpha", ...).
int cmd_verify(const SpecFile& spec, const RunConfig& config, const std::string& source, Streams io);
int cmd_tables(const std::string& selector, bool catalog, bool oracle, Streams io);

/// Full command line, argv[0] included.
int run(int argc, const char* const* argv, Streams io);

int exit_code_for(const std::exception& e);

inline constexpr int kCsvPoints = 201;

void write_csv(const SolutionEvaluator& sol, int points, std::ostream& out);
/// Degree-5 Lagrange interpolation through the tabulated basis columns.
SolutionEvaluator read_csv(std::istream& in, Complex C1, Complex C2, std::optional<double> anchor);

}  // namespace aimlinsys::cli
