/// @file io.hpp
/// @brief CSV/JSON emission of curves, operators, runs and reports, plus MANIFEST hashing.
#pragma once

#include "sheetlimit/curvature.hpp"
#include "sheetlimit/energy.hpp"
#include "sheetlimit/limits.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace sheetlimit::io {

using json = nlohmann::ordered_json;

/// Shortest round-trip decimal form ("%.17g").
std::string format_double(double x);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  void add_row(std::vector<double> row);  ///< LayoutMismatch on width mismatch
  std::string str() const;
};

CsvTable read_csv(const std::filesystem::path& path);
void write_csv(const std::filesystem::path& path, const CsvTable& t);
void write_json(const std::filesystem::path& path, const json& j);
void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

/// theta,x,y
CsvTable curve_table(const Curve& c);
/// M, nodes and Fourier coefficients as [re, im] pairs.
json curve_json(const Curve& c);
Curve curve_from_json(const json& j);

/// Dense operator, one row per line, header c0..c{M-1}.
CsvTable operator_table(const Mat& A);
json eigenvalues_json(const Vec& eigenvalues);

/// t,area,circulation,energy,jump_residual
CsvTable trajectory_table(const Trajectory& traj);
/// t,area,energy,rt_indicator
CsvTable blob_trajectory_table(const BlobTrajectory& traj);
/// t,E1,E2,E_ex,E0,E_total
CsvTable energy_table(const EnergyRun& run);
/// k_wave,a_sym,r_sym,sigma over k = 1..kmax
CsvTable kh_table(int kmax, double rho_plus, double rho_minus, double V, double epsilon);
/// rho_minus,R_m,R_star,residual_ratio
CsvTable curvature_table(const LimitTable& t);
/// rho_minus followed by the error columns
CsvTable convergence_table(const ConvergenceReport& r);
json convergence_json(const ConvergenceReport& r);
json energy_audit_json(const EnergyAudit& a);

std::string sha256_hex(const std::string& bytes);
/// Writes MANIFEST with "sha256  relative/path" for every regular file, sorted by path.
void write_manifest(const std::filesystem::path& dir);
/// True when every MANIFEST entry matches the file on disk.
bool verify_manifest(const std::filesystem::path& dir);

}  // namespace sheetlimit::io
