/// @file energy.hpp
/// @brief High-order energies of a two-fluid state and sweep audits.
#pragma once

#include "sheetlimit/twofluid.hpp"

#include <vector>

namespace sheetlimit {

struct EnergyReport {
  int k = 3;
  double E1 = 0.0;
  double E2 = 0.0;
  double E_ex = 0.0;
  double E0 = 0.0;
  double vorticity_term = 0.0;
  double E_total = 0.0;
  /// Contributions of parameter modes 0..M/2 (E1_modes sums to E1).
  Vec E1_modes, E2_modes;
};

/// Operators shared by the energy forms: surface Laplacian and N-bar.
struct EnergyOperators {
  Mat laplacian;
  Mat n_bar;
  Vec weights;
};

EnergyOperators energy_operators(const Curve& c, double rho_plus, double rho_minus);

/// E1 = 1/2 <theta, (-Lap Nbar)^(k-1) (-Lap) theta>, E2 = 1/2 <kappa, Nbar (-Lap Nbar)^(k-1) kappa>.
EnergyReport compute_energy(const SheetState& s, int k = 3);
double compute_extra_energy(const SheetState& s, int k = 3);

/// Quadratic forms on given data (operator-level entry points).
double energy_form_e1(const EnergyOperators& ops, const Vec& normal_velocity, int k);
double energy_form_e2(const EnergyOperators& ops, const Vec& kappa, int k);

/// Guard for the vorticity contribution; rotational fields are rejected.
double vorticity_term(const SheetField& field);

/// Energies along one trajectory of a density sweep.
struct EnergyRun {
  double rho_minus = 0.0;
  int k = 3;
  CVec initial_nodes;
  CVec initial_velocity;  ///< interior trace at t = 0
  std::vector<double> times;
  std::vector<EnergyReport> reports;
  /// ||kappa||^2_{H^(l-1)} / (1 + E) with l = 3k/2.
  std::vector<double> curvature_ratio;
  /// (||v+||^2 + ||v-||^2)_{H^(l-1/2)(S)} / (1 + E + E0)^2.
  std::vector<double> velocity_ratio;

  double sup_energy() const;
};

EnergyRun energy_run(const Trajectory& traj, int k = 3);

struct EnergyAudit {
  std::vector<double> rho_minus;
  std::vector<double> sup_energy;
  double max_over_min = 1.0;
  double max_over_median = 1.0;
  /// Successive increments of sup E (ordered by decreasing rho_minus) do not grow.
  bool saturating = true;
  /// sup E never increases by more than the tolerance as rho_minus decreases.
  bool monotone_nonincreasing = true;
  double curvature_ratio_spread = 1.0;  ///< max/min over the sweep of sup_t ratio
  double velocity_ratio_spread = 1.0;
};

/// Runs must share initial data and k (InconsistentSweep otherwise).
EnergyAudit audit_energy(const std::vector<EnergyRun>& runs);

}  // namespace sheetlimit
