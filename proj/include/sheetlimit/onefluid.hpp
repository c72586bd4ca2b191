/// @file onefluid.hpp
/// @brief Free-boundary Euler for a single liquid blob in vacuum.
#pragma once

#include "sheetlimit/error.hpp"
#include "sheetlimit/twofluid.hpp"

namespace sheetlimit {

/// Velocity potential phi on S; the flow inside is grad of its harmonic extension.
struct BlobState {
  Curve curve;
  Vec phi;
  double rho_plus = 1.0;
  double epsilon = 1.0;
  CVec tracers;
  double time = 0.0;
};

BlobState make_blob_state(const Curve& c, const Vec& phi, double rho_plus, double epsilon,
                          const CVec& tracers = CVec());

PhaseVelocity blob_velocity(const BlobState& s);
PhaseVelocity blob_velocity(const BlobState& s, const LayerPotentials& lp);

/// 1/2 rho+ int phi d_N phi dS + eps^2 |S|.
double blob_energy(const BlobState& s);

/// Dirichlet-zero velocity pressure p* of a potential flow: H[v.w/2] - v.w/2.
PressureSolution solve_pressure_star(const LayerPotentials& lp, const PhaseVelocity& v, const PhaseVelocity& w);
PressureSolution solve_pressure_star(const Curve& c, const PhaseVelocity& v);

/// Physical pressure eps^2 H[kappa] + rho+ p*(v, v).
PressureSolution solve_blob_pressure(const BlobState& s);

/// Minimum over S of -rho+ d_N p*(v, v).
double rayleigh_taylor_indicator(const BlobState& s);

struct BlobDiagnostics {
  double time = 0.0;
  double area = 0.0;
  double energy = 0.0;
  double rt_indicator = 0.0;
};

struct BlobTrajectory {
  std::vector<BlobState> states;
  std::vector<BlobDiagnostics> diagnostics;
  std::string termination = "completed";
};

class BlobEvolutionStopped : public Error {
 public:
  BlobEvolutionStopped(const Error& cause, BlobTrajectory partial) : Error(cause), partial_(std::move(partial)) {}
  const BlobTrajectory& partial() const { return partial_; }

 private:
  BlobTrajectory partial_;
};

double max_stable_dt(const BlobState& s, double c_stab = 0.5, double c_adv = 0.5);

BlobTrajectory evolve_onefluid(const BlobState& s0, double dt, int steps, const EvolveOptions& opts = {});

}  // namespace sheetlimit
