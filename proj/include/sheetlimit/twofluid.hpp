/// @file twofluid.hpp
/// @brief Two-phase incompressible irrotational flow with a vortex sheet on S.
#pragma once

#include "sheetlimit/error.hpp"
#include "sheetlimit/flow.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace sheetlimit {

struct FluidParams {
  double rho_plus = 1.0;
  double rho_minus = 1.0;
  double epsilon = 1.0;  ///< surface tension coefficient, pressure jump eps^2 kappa
};

void validate(const FluidParams& p);

/// Markers are the curve nodes; tracers are passive points in either phase.
struct SheetState {
  Curve curve;
  Vec gamma;
  FluidParams params;
  CVec tracers;
  double time = 0.0;
};

SheetState make_sheet_state(const Curve& c, const Vec& gamma, const FluidParams& p, const CVec& tracers = CVec());

SheetField velocities(const SheetState& s);

/// z_theta . (rho_plus v_plus - rho_minus v_minus), the evolved variable.
Vec sheet_momentum(const Curve& c, const Vec& gamma, const FluidParams& p);
/// Inverse of sheet_momentum (dense solve of the second-kind equation).
Vec sheet_strength_from_momentum(const Curve& c, const Vec& m, const FluidParams& p);

/// Integral of gamma over the parameter circle.
double sheet_circulation(const SheetState& s);

struct EnergyParts {
  double kinetic_plus = 0.0;
  double kinetic_minus = 0.0;  ///< renormalized when the exterior carries circulation
  double surface = 0.0;
  double total() const { return kinetic_plus + kinetic_minus + surface; }
};

EnergyParts two_fluid_energy(const SheetState& s);
EnergyParts two_fluid_energy(const SheetState& s, const LayerPotentials& lp);

struct StepDiagnostics {
  double time = 0.0;
  double area = 0.0;
  double circulation = 0.0;
  double energy = std::numeric_limits<double>::quiet_NaN();
  double jump_residual = std::numeric_limits<double>::quiet_NaN();
};

struct EvolveOptions {
  double c_stab = 0.5;
  double c_adv = 0.5;
  int record_every = 1;
  bool energy_diagnostics = true;
  bool pressure_diagnostics = false;
  bool check_simplicity = true;
  std::optional<Lambda0Params> lambda0;
};

struct Trajectory {
  std::vector<SheetState> states;
  std::vector<StepDiagnostics> diagnostics;
  std::string termination = "completed";
};

/// Raised when a run stops early; carries the trajectory up to the stop.
class SheetEvolutionStopped : public Error {
 public:
  SheetEvolutionStopped(const Error& cause, Trajectory partial) : Error(cause), partial_(std::move(partial)) {}
  const Trajectory& partial() const { return partial_; }

 private:
  Trajectory partial_;
};

/// Largest admissible step: capillary bound c_stab (s_min h)^(3/2) sqrt((rho+ + rho-)/eps^2)
/// together with an advective bound c_adv (s_min h) / max|v|.
double max_stable_dt(const SheetState& s, double c_stab = 0.5, double c_adv = 0.5);

/// Fixed-step RK4; records the initial state and every record_every-th step.
Trajectory evolve(const SheetState& s0, double dt, int steps, const EvolveOptions& opts = {});

/// Pressure of one phase: scale (H[g](x) - v.w/2 (x)) + offset.
class PhasePressure {
 public:
  PhasePressure() = default;
  PhasePressure(double scale, double offset, HarmonicField h, std::optional<std::pair<PhaseVelocity, PhaseVelocity>> vw);

  double value(cplx x) const;
  cplx gradient(cplx x) const;
  double offset() const { return offset_; }

 private:
  double scale_ = 1.0, offset_ = 0.0;
  HarmonicField h_;
  std::optional<std::pair<PhaseVelocity, PhaseVelocity>> vw_;
};

struct PressureSolution {
  /// Zero-mean boundary traces of each phase.
  Vec trace_plus, trace_minus;
  /// Normal derivatives along each phase's outward normal.
  Vec dn_plus, dn_minus;
  /// trace_plus - trace_minus with the mean restored (physical jump).
  Vec jump;
  /// Max deviation of the zero-mean jump from its prescribed value.
  double jump_residual = 0.0;
  /// Constants turning zero-mean traces into the physical pressure.
  double offset_plus = 0.0, offset_minus = 0.0;
  PhasePressure plus, minus;
};

/// Physical pressure of a two-fluid state, normalized so p_minus vanishes at infinity.
PressureSolution solve_pressure(const SheetState& s);
PressureSolution solve_pressure(const SheetState& s, const LayerPotentials& lp, const WeightedOperators& ops,
                                const SheetField& field);

/// Velocity part of the pressure, symmetric bilinear in (v, w).
PressureSolution solve_p_vw(const SheetField& v, const SheetField& w, double rho_plus, double rho_minus);
PressureSolution solve_p_vw(const LayerPotentials& lp, const WeightedOperators& ops, const SheetField& v,
                            const SheetField& w);

/// Curvature part of the pressure (unit surface tension).
PressureSolution solve_p_kappa(const Curve& c, double rho_plus, double rho_minus);
PressureSolution solve_p_kappa(const LayerPotentials& lp, const WeightedOperators& ops);

}  // namespace sheetlimit
