#ifndef CHPEED_MODEL_UNITS_HPP
#define CHPEED_MODEL_UNITS_HPP

#include <optional>
#include <string>
#include <vector>

#include "chpeed/types.hpp"

namespace chpeed {

// Conventional thermal unit. Cost is a polynomial in power plus an optional
// rectified-sinusoid valve-point ripple; emission combines a quadratic
// polynomial with an exponential term.
struct PowerOnlyUnit {
  std::string name;
  Scalar p_min_mw = 0.0;
  Scalar p_max_mw = 0.0;

  // cost = a + b*P + d*P^2 + cubic*P^3 + |e * sin(zeta * (p_min - P))|
  Scalar cost_a = 0.0;
  Scalar cost_b = 0.0;
  Scalar cost_d = 0.0;
  Scalar cost_cubic = 0.0;
  std::optional<Scalar> vple_e;
  Scalar vple_zeta = 0.0;

  // emission = mu + kappa*P + pi*P^2 + sigma*exp(nu*P) + co2_theta*P
  Scalar em_mu = 0.0;
  Scalar em_kappa = 0.0;
  Scalar em_pi = 0.0;
  Scalar em_sigma = 0.0;
  Scalar em_nu = 0.0;
  Scalar co2_theta = 0.0;

  std::optional<Scalar> ramp_up_mw;    // UR, MW per interval
  std::optional<Scalar> ramp_down_mw;  // DR, MW per interval
};

// Cogeneration unit. Power and heat are coupled through a convex feasible
// operation region stored as a counter-clockwise vertex loop in the
// (power, heat) plane.
struct ChpUnit {
  std::string name;

  // cost = alpha + beta*O + gamma*O^2 + delta*H + epsilon*H^2 + xi*O*H
  Scalar cost_alpha = 0.0;
  Scalar cost_beta = 0.0;
  Scalar cost_gamma = 0.0;
  Scalar cost_delta = 0.0;
  Scalar cost_epsilon = 0.0;
  Scalar cost_xi = 0.0;

  Scalar em_tau = 0.0;    // SO2/NOx, kg per MW
  Scalar co2_psi = 0.0;   // CO2, kg per MW

  // CCW (power_mw, heat_mwth) vertices; convex, >= 3 vertices.
  std::vector<Vec2> for_vertices;
  std::string for_provenance;

  std::optional<Scalar> ramp_up_mw;
  std::optional<Scalar> ramp_down_mw;

  Scalar power_min() const;
  Scalar power_max() const;
  Scalar heat_min() const;
  Scalar heat_max() const;
};

struct HeatOnlyUnit {
  std::string name;
  Scalar h_min_mwth = 0.0;
  Scalar h_max_mwth = 0.0;

  // cost = phi + eta*T + lambda*T^2
  Scalar cost_phi = 0.0;
  Scalar cost_eta = 0.0;
  Scalar cost_lambda = 0.0;

  Scalar em_rho = 0.0;      // SO2/NOx, kg per MWth
  Scalar co2_varpi = 0.0;   // CO2, kg per MWth
};

// Quadratic B-coefficient transmission-loss model over all
// electricity-producing units (power-only first, then CHP), applied in MW.
struct LossModel {
  bool present = false;
  Mat b_matrix;   // 1/MW, symmetric, dim N_p + N_c
  Vec b_linear;   // dimensionless
  Scalar b_const = 0.0;  // MW
};

struct DispatchCase {
  std::string name;
  std::vector<PowerOnlyUnit> power_units;
  std::vector<ChpUnit> chp_units;
  std::vector<HeatOnlyUnit> heat_units;
  LossModel loss;

  // Static case: single demand, n_intervals == 1. Dynamic case: per-interval
  // profiles of length n_intervals.
  int n_intervals = 1;
  std::vector<Scalar> p_demand_mw;    // length n_intervals
  std::vector<Scalar> h_demand_mwth;  // length n_intervals

  int n_power() const { return static_cast<int>(power_units.size()); }
  int n_chp() const { return static_cast<int>(chp_units.size()); }
  int n_heat() const { return static_cast<int>(heat_units.size()); }

  Scalar p_demand(int interval = 0) const { return p_demand_mw.at(interval); }
  Scalar h_demand(int interval = 0) const { return h_demand_mwth.at(interval); }

  // Throws std::invalid_argument naming the offending field on violation of
  // any structural invariant.
  void validate() const;
};

// Per-constraint residuals of one dispatch point. All residuals are >= 0;
// zero (within tolerance) means satisfied.
struct FeasibilityReport {
  Scalar power_balance_mw = 0.0;   // |Sum P + Sum O - P_D - P_L|
  Scalar heat_balance_mwth = 0.0;  // |Sum H + Sum T - H_D|
  Scalar bound_violation = 0.0;    // max box-bound violation
  Scalar for_violation = 0.0;      // max distance outside any FOR polygon
  bool repair_failed = false;

  bool feasible() const {
    return !repair_failed && power_balance_mw <= 1e-3 &&
           heat_balance_mwth <= 1e-6 && for_violation <= 1e-6 &&
           bound_violation <= 1e-9;
  }
};

// One dispatch point with cached objective values. The cached values are
// always produced by the evaluators in evaluate.hpp.
struct DispatchSolution {
  Vec p;   // power-only outputs, MW
  Vec op;  // CHP power outputs, MW
  Vec hp;  // CHP heat outputs, MWth
  Vec th;  // heat-only outputs, MWth
  Scalar cost = 0.0;
  Scalar emission = 0.0;
  Scalar loss_mw = 0.0;
  FeasibilityReport report;

  Objectives objectives() const { return {cost, emission}; }

  // All electric outputs in loss-model order (power-only, then CHP).
  Vec electric_outputs() const;
};

}  // namespace chpeed

#endif
