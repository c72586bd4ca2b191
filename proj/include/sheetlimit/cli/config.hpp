/// @file config.hpp
/// @brief Run configuration of the sheetlimit command-line tool.
#pragma once

#include "sheetlimit/io.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace sheetlimit::cli {

struct GeometryConfig {
  std::string shape = "circle";  ///< circle | ellipse | perturbed_circle
  double radius = 1.0;
  double a = 1.5, b = 1.0;  ///< ellipse semi-axes
  int mode = 2;
  double amplitude = 0.05;
  int M = 128;
  int tracers = 4;  ///< interior tracers placed from the seed
};

struct PhysicsConfig {
  std::string model = "twofluid";  ///< twofluid | onefluid
  double rho_plus = 1.0;
  std::vector<double> rho_minus{1.0};  ///< one value, or a strictly decreasing sweep list
  double epsilon = 1.0;
  int k = 3;
  double shear = 1.0;  ///< tangential jump V for dispersion tables
  int potential_mode = 2;
  double potential_amplitude = 0.0;
  double circulation = 0.0;  ///< exterior circulation of the initial sheet
  std::vector<int> probe_modes{3, 2};  ///< potential modes of v and w for curvature forms
};

struct NumericsConfig {
  std::optional<double> dt;
  std::optional<int> steps;
  std::optional<double> T;
  double c_stab = 0.5;
  double c_adv = 0.5;
  double filter_threshold = 1e-13;
  double r_inf = -1.0;
  int record_every = 1;
  bool lambda0 = false;
  double lambda0_delta = 0.1;
  double lambda0_L = 10.0;
};

struct OutputsConfig {
  std::string directory = "out";
  std::vector<std::string> formats{"csv", "json"};
};

struct RunConfig {
  GeometryConfig geometry;
  PhysicsConfig physics;
  NumericsConfig numerics;
  OutputsConfig outputs;
  std::uint64_t seed = 0;

  double l() const { return 1.5 * physics.k; }
  bool sweep() const { return physics.rho_minus.size() > 1; }
};

/// Parses and validates; ConfigParse, UnknownKey, SchemaViolation.
RunConfig parse_config_text(const std::string& text);
RunConfig parse_config(const std::filesystem::path& path);
/// Normalized form with all defaults filled in.
io::json to_json(const RunConfig& cfg);

}  // namespace sheetlimit::cli
