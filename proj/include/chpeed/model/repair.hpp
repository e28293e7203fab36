#ifndef CHPEED_MODEL_REPAIR_HPP
#define CHPEED_MODEL_REPAIR_HPP

#include "chpeed/model/units.hpp"

namespace chpeed {

// Equality-constraint repair operators. Both mutate the slack unit's output
// in place and return true on success. On clamping or divergence the caller
// keeps the honest residual (filled in by evaluate()) and falls back to the
// penalty route.

// Solves the heat balance exactly: slack heat = H_D - sum(other heats),
// clamped to the slack unit's bounds. slack_heat_index addresses a heat-only
// unit when < n_heat(); the value n_heat() + j addresses CHP unit j's heat
// (its power held fixed, heat clamped to the FOR slice at that power).
bool repair_heat_balance(const DispatchCase& cs, DispatchSolution& sol,
                         int slack_heat_index, int interval = 0);

// Fixed-point iteration on the slack power-only unit:
//   P_slack <- P_D + P_L(all powers) - sum(other powers)
// until the balance residual <= 1e-6 MW or 50 iterations. Result clamped to
// the slack bounds. Returns false on divergence (residual growing for 5
// consecutive iterations) or clamping that leaves residual > 1e-6.
bool repair_power_balance(const DispatchCase& cs, DispatchSolution& sol,
                          int slack_power_index, int interval = 0);

// Per-unit, per-transition ramp residuals of a schedule (one solution per
// interval): max(0, P_t - P_{t-1} - UR) and max(0, P_{t-1} - P_t - DR).
// Row t-1 holds the transition into interval t; columns are units in
// loss-model order. All-zero means ramp-feasible.
struct RampReport {
  Mat up_residual;    // (n_intervals-1) x (N_p + N_c)
  Mat down_residual;
  bool feasible(Scalar tol = 1e-9) const;
};

RampReport check_ramp(const DispatchCase& cs,
                      const std::vector<DispatchSolution>& schedule);

}  // namespace chpeed

#endif
