#include "chpeed/model/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "chpeed/model/geometry.hpp"

namespace chpeed {

namespace {

void check_dimensions(const DispatchCase& cs, const DispatchSolution& sol) {
  if (sol.p.size() != cs.n_power() || sol.op.size() != cs.n_chp() ||
      sol.hp.size() != cs.n_chp() || sol.th.size() != cs.n_heat())
    throw std::invalid_argument("decision vector dimensions do not match case");
  if (!sol.p.allFinite() || !sol.op.allFinite() || !sol.hp.allFinite() ||
      !sol.th.allFinite())
    throw std::domain_error("non-finite decision variable");
}

}  // namespace

Scalar unit_cost(const PowerOnlyUnit& u, Scalar p) {
  Scalar c = u.cost_a + u.cost_b * p + u.cost_d * p * p +
             u.cost_cubic * p * p * p;
  if (u.vple_e)
    c += std::abs(*u.vple_e * std::sin(u.vple_zeta * (u.p_min_mw - p)));
  return c;
}

Scalar unit_cost(const ChpUnit& u, Scalar power, Scalar heat) {
  return u.cost_alpha + u.cost_beta * power + u.cost_gamma * power * power +
         u.cost_delta * heat + u.cost_epsilon * heat * heat +
         u.cost_xi * power * heat;
}

Scalar unit_cost(const HeatOnlyUnit& u, Scalar heat) {
  return u.cost_phi + u.cost_eta * heat + u.cost_lambda * heat * heat;
}

Scalar unit_emission(const PowerOnlyUnit& u, Scalar p) {
  return u.em_mu + u.em_kappa * p + u.em_pi * p * p +
         u.em_sigma * std::exp(u.em_nu * p) + u.co2_theta * p;
}

Scalar unit_emission(const ChpUnit& u, Scalar power) {
  return u.em_tau * power + u.co2_psi * power;
}

Scalar unit_emission(const HeatOnlyUnit& u, Scalar heat) {
  return u.em_rho * heat + u.co2_varpi * heat;
}

Scalar evaluate_cost(const DispatchCase& cs, const DispatchSolution& sol) {
  check_dimensions(cs, sol);
  Scalar total = 0.0;
  for (int i = 0; i < cs.n_power(); ++i)
    total += unit_cost(cs.power_units[i], sol.p[i]);
  for (int j = 0; j < cs.n_chp(); ++j)
    total += unit_cost(cs.chp_units[j], sol.op[j], sol.hp[j]);
  for (int k = 0; k < cs.n_heat(); ++k)
    total += unit_cost(cs.heat_units[k], sol.th[k]);
  return total;
}

Scalar evaluate_emission(const DispatchCase& cs, const DispatchSolution& sol) {
  check_dimensions(cs, sol);
  Scalar total = 0.0;
  for (int i = 0; i < cs.n_power(); ++i)
    total += unit_emission(cs.power_units[i], sol.p[i]);
  for (int j = 0; j < cs.n_chp(); ++j)
    total += unit_emission(cs.chp_units[j], sol.op[j]);
  for (int k = 0; k < cs.n_heat(); ++k)
    total += unit_emission(cs.heat_units[k], sol.th[k]);
  return total;
}

Scalar transmission_loss(const DispatchCase& cs, const Vec& powers) {
  if (!cs.loss.present) return 0.0;
  if (powers.size() != cs.n_power() + cs.n_chp())
    throw std::invalid_argument("loss: powers length must be n_power + n_chp");
  return powers.dot(cs.loss.b_matrix * powers) +
         cs.loss.b_linear.dot(powers) + cs.loss.b_const;
}

void evaluate(const DispatchCase& cs, DispatchSolution& sol, int interval) {
  check_dimensions(cs, sol);
  sol.cost = evaluate_cost(cs, sol);
  sol.emission = evaluate_emission(cs, sol);

  const Vec powers = sol.electric_outputs();
  sol.loss_mw = transmission_loss(cs, powers);

  auto& rep = sol.report;
  rep.power_balance_mw =
      std::abs(powers.sum() - cs.p_demand(interval) - sol.loss_mw);
  rep.heat_balance_mwth =
      std::abs(sol.hp.sum() + sol.th.sum() - cs.h_demand(interval));

  rep.bound_violation = 0.0;
  for (int i = 0; i < cs.n_power(); ++i) {
    rep.bound_violation = std::max(
        {rep.bound_violation, cs.power_units[i].p_min_mw - sol.p[i],
         sol.p[i] - cs.power_units[i].p_max_mw});
  }
  for (int k = 0; k < cs.n_heat(); ++k) {
    rep.bound_violation = std::max(
        {rep.bound_violation, cs.heat_units[k].h_min_mwth - sol.th[k],
         sol.th[k] - cs.heat_units[k].h_max_mwth});
  }

  rep.for_violation = 0.0;
  for (int j = 0; j < cs.n_chp(); ++j) {
    rep.for_violation = std::max(
        rep.for_violation,
        polygon_distance(cs.chp_units[j].for_vertices, {sol.op[j], sol.hp[j]}));
  }
}

}  // namespace chpeed
