#include "chpeed/model/repair.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "chpeed/model/evaluate.hpp"
#include "chpeed/model/geometry.hpp"

namespace chpeed {

bool repair_heat_balance(const DispatchCase& cs, DispatchSolution& sol,
                         int slack_heat_index, int interval) {
  const Scalar demand = cs.h_demand(interval);
  Scalar others = sol.hp.sum() + sol.th.sum();
  Scalar lo, hi;
  if (slack_heat_index < cs.n_heat()) {
    others -= sol.th[slack_heat_index];
    lo = cs.heat_units[slack_heat_index].h_min_mwth;
    hi = cs.heat_units[slack_heat_index].h_max_mwth;
  } else {
    const int j = slack_heat_index - cs.n_heat();
    if (j < 0 || j >= cs.n_chp())
      throw std::invalid_argument("repair_heat_balance: bad slack index");
    others -= sol.hp[j];
    std::tie(lo, hi) =
        polygon_slice_y(cs.chp_units[j].for_vertices, sol.op[j]);
    if (lo > hi) return false;  // power outside the FOR slice
  }

  const Scalar want = demand - others;
  const Scalar value = std::clamp(want, lo, hi);
  if (slack_heat_index < cs.n_heat())
    sol.th[slack_heat_index] = value;
  else
    sol.hp[slack_heat_index - cs.n_heat()] = value;
  return value == want;
}

bool repair_power_balance(const DispatchCase& cs, DispatchSolution& sol,
                          int slack_power_index, int interval) {
  if (slack_power_index < 0 || slack_power_index >= cs.n_power())
    throw std::invalid_argument("repair_power_balance: slack must be a "
                                "power-only unit");
  const auto& slack = cs.power_units[slack_power_index];
  const Scalar demand = cs.p_demand(interval);

  Scalar prev_residual = std::numeric_limits<Scalar>::max();
  int growth_streak = 0;
  for (int it = 0; it < 50; ++it) {
    const Vec powers = sol.electric_outputs();
    const Scalar others = powers.sum() - sol.p[slack_power_index];
    const Scalar want =
        demand + transmission_loss(cs, powers) - others;
    sol.p[slack_power_index] = std::clamp(want, slack.p_min_mw, slack.p_max_mw);

    const Vec updated = sol.electric_outputs();
    const Scalar residual = std::abs(
        updated.sum() - demand - transmission_loss(cs, updated));
    if (residual <= 1e-6) return true;
    if (sol.p[slack_power_index] != want) return false;  // clamped, honest

    growth_streak = residual > prev_residual ? growth_streak + 1 : 0;
    if (growth_streak >= 5) return false;  // diverging
    prev_residual = residual;
  }
  return false;
}

bool RampReport::feasible(Scalar tol) const {
  if (up_residual.size() == 0) return true;
  return up_residual.maxCoeff() <= tol && down_residual.maxCoeff() <= tol;
}

RampReport check_ramp(const DispatchCase& cs,
                      const std::vector<DispatchSolution>& schedule) {
  if (static_cast<int>(schedule.size()) != cs.n_intervals)
    throw std::invalid_argument("check_ramp: schedule length must equal "
                                "n_intervals");
  const int n_units = cs.n_power() + cs.n_chp();
  const int n_steps = std::max(cs.n_intervals - 1, 0);
  RampReport rep;
  rep.up_residual = Mat::Zero(n_steps, n_units);
  rep.down_residual = Mat::Zero(n_steps, n_units);

  auto ramp_up = [&](int u) {
    return u < cs.n_power() ? cs.power_units[u].ramp_up_mw
                            : cs.chp_units[u - cs.n_power()].ramp_up_mw;
  };
  auto ramp_down = [&](int u) {
    return u < cs.n_power() ? cs.power_units[u].ramp_down_mw
                            : cs.chp_units[u - cs.n_power()].ramp_down_mw;
  };

  for (int t = 1; t < cs.n_intervals; ++t) {
    const Vec prev = schedule[t - 1].electric_outputs();
    const Vec cur = schedule[t].electric_outputs();
    for (int u = 0; u < n_units; ++u) {
      if (const auto ur = ramp_up(u))
        rep.up_residual(t - 1, u) = std::max(0.0, cur[u] - prev[u] - *ur);
      if (const auto dr = ramp_down(u))
        rep.down_residual(t - 1, u) = std::max(0.0, prev[u] - cur[u] - *dr);
    }
  }
  return rep;
}

}  // namespace chpeed
