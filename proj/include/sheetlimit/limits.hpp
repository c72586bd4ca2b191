/// @file limits.hpp
/// @brief Small-density sweeps of the two-fluid problem against the one-fluid blob.
#pragma once

#include "sheetlimit/onefluid.hpp"

#include <string>
#include <vector>

namespace sheetlimit {

/// Error entries of one comparison (all nonnegative).
struct ErrorRecord {
  double marker_l2 = 0.0;       ///< L^2 over the parameter circle of marker displacement
  double marker_h = 0.0;        ///< discrete H^{l'} of the same difference
  double tracer = 0.0;          ///< max tracer displacement
  double velocity = 0.0;        ///< interior velocity at markers (L^2) and tracers (max), larger of the two
  double interface = 0.0;       ///< H^{l-1/2} interface distance
  double pressure_minus = 0.0;  ///< H^{l-1/2} of p_minus on the probe rings
  double normal = 0.0;          ///< L^2 normal difference at markers
  double curvature = 0.0;       ///< L^2 curvature difference at markers
  double pressure_plus = 0.0;   ///< L^2 of p_plus trace minus eps^2 kappa of the reference

  /// Entry-wise maximum.
  void absorb(const ErrorRecord& o);
};

/// Column names in ErrorRecord field order.
const std::vector<std::string>& error_columns();
std::vector<double> error_values(const ErrorRecord& r);

struct CompareOptions {
  double l = 4.5;                          ///< regularity index, 3k/2
  double l_prime = 4.0;                    ///< velocity and map regularity, default l - 1/2
  std::vector<double> probe_radii{2.0, 3.0};  ///< multiples of the curve's max centroid distance
  int probe_nodes = 64;
};

/// Discrete H^s distance of two closed marker sets on the parameter circle.
double interface_distance(const CVec& a, const CVec& b, double s);

/// Two-fluid state against a one-fluid state with matching layouts (LayoutMismatch otherwise).
ErrorRecord compare_states(const SheetState& two, const BlobState& one, const CompareOptions& opts = {});
/// Two one-fluid states (noise-floor measurement).
ErrorRecord compare_states(const BlobState& a, const BlobState& b, const CompareOptions& opts = {});

/// Time horizon one tenth of the capillary period of mode n on a disk of radius R.
double default_horizon(int mode, double radius, double rho_plus, double epsilon);

struct SweepConfig {
  Curve curve;
  Vec phi;  ///< interior potential on S
  CVec tracers;
  double rho_plus = 1.0;
  double epsilon = 1.0;
  std::vector<double> rho_sequence;
  double T = 0.0;
  double dt = 0.0;
  int k = 3;
  CompareOptions compare;
  EvolveOptions evolve;
  int jobs = 1;
};

struct SweepRow {
  double rho_minus = 0.0;
  ErrorRecord sup;  ///< sup over the recorded times
};

struct ConvergenceReport {
  std::vector<double> rho_sequence;
  std::vector<SweepRow> rows;
  ErrorRecord noise_floor;  ///< one-fluid at dt against dt / 2
  std::vector<double> slopes;  ///< log-log slope of each column against rho_minus
  std::vector<bool> monotone;  ///< column strictly decreasing along the sequence
  double T = 0.0, dt = 0.0;
  int steps = 0;
  int k = 3;
  double l = 4.5, l_prime = 4.0;
};

/// Raised when a sweep member stops before T.
class SweepFailure : public Error {
 public:
  SweepFailure(const std::string& what, double rho_minus, int step)
      : Error(ErrorKind::SweepRunFailed, what), rho_minus_(rho_minus), step_(step) {}
  double rho_minus() const { return rho_minus_; }
  int step() const { return step_; }

 private:
  double rho_minus_;
  int step_;
};

/// Runs the one-fluid reference and every rho_minus member, then reduces.
ConvergenceReport rho_sweep(const SweepConfig& cfg);

/// Least-squares slope of log y against log x over entries with y > 0.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace sheetlimit
