/// @file commands.hpp
/// @brief Subcommand orchestration for the sheetlimit tool.
#pragma once

#include "sheetlimit/cli/config.hpp"

#include <iosfwd>
#include <optional>

namespace sheetlimit::cli {

struct GlobalOptions {
  std::optional<std::string> out;
  int jobs = 1;
  std::optional<std::uint64_t> seed;
  int kmax = 32;
};

/// Fixture builders shared by the subcommands.
Curve make_curve(const GeometryConfig& g, double filter_threshold);
Vec make_potential(const Curve& c, int mode, cplx amplitude);
CVec make_tracers(const Curve& c, int count, std::uint64_t seed);
SheetState initial_sheet(const RunConfig& cfg, double rho_minus);
BlobState initial_blob(const RunConfig& cfg);

/// SHEETLIMIT_OUT, then --out, then outputs.directory.
std::filesystem::path output_root(const RunConfig& cfg, const GlobalOptions& g);

/// Runs one subcommand and writes <root>/<command>/; returns the exit code.
int run_command(const std::string& command, RunConfig cfg, const GlobalOptions& g, std::ostream& log);

/// Full entry point: argument parsing, config loading, dispatch, error mapping.
int main_entry(int argc, char** argv);

}  // namespace sheetlimit::cli
