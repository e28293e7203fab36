#include "chpeed/optimizer/encoding.hpp"

#include <algorithm>
#include <cmath>

#include "chpeed/model/evaluate.hpp"
#include "chpeed/model/geometry.hpp"
#include "chpeed/model/repair.hpp"

namespace chpeed {

namespace {

std::pair<Scalar, Scalar> ramp_window(Scalar prev,
                                      const std::optional<Scalar>& ur,
                                      const std::optional<Scalar>& dr) {
  const Scalar lo = dr ? prev - *dr : std::numeric_limits<Scalar>::lowest();
  const Scalar hi = ur ? prev + *ur : std::numeric_limits<Scalar>::max();
  return {lo, hi};
}

}  // namespace

Encoding::Encoding(const DispatchCase& cs, int interval,
                   const DispatchSolution* prev)
    : case_(cs), interval_(interval) {
  // Widest-range units take the slack roles.
  slack_power_ = -1;
  Scalar best_span = -1.0;
  for (int i = 0; i < cs.n_power(); ++i) {
    const Scalar span = cs.power_units[i].p_max_mw - cs.power_units[i].p_min_mw;
    if (span > best_span) {
      best_span = span;
      slack_power_ = i;
    }
  }

  slack_heat_ = -1;
  best_span = -1.0;
  for (int k = 0; k < cs.n_heat(); ++k) {
    const Scalar span =
        cs.heat_units[k].h_max_mwth - cs.heat_units[k].h_min_mwth;
    if (span > best_span) {
      best_span = span;
      slack_heat_ = k;
    }
  }
  if (slack_heat_ < 0) {
    for (int j = 0; j < cs.n_chp(); ++j) {
      const Scalar span =
          cs.chp_units[j].heat_max() - cs.chp_units[j].heat_min();
      if (span > best_span) {
        best_span = span;
        slack_heat_ = cs.n_heat() + j;
      }
    }
  }

  std::vector<Scalar> lo, hi;
  for (int i = 0; i < cs.n_power(); ++i) {
    const auto& u = cs.power_units[i];
    Scalar l = u.p_min_mw, h = u.p_max_mw;
    if (prev) {
      const auto [wl, wh] =
          ramp_window(prev->p[i], u.ramp_up_mw, u.ramp_down_mw);
      l = std::max(l, wl);
      h = std::min(h, wh);
      if (l > h)
        throw InfeasibleCaseError("ramp window empty for power unit " +
                                  std::to_string(i + 1));
    }
    if (i == slack_power_) {
      if (prev) slack_power_window_ = {l, h};
      continue;
    }
    lo.push_back(l);
    hi.push_back(h);
  }
  for (int j = 0; j < cs.n_chp(); ++j) {
    const auto& u = cs.chp_units[j];
    Scalar l = u.power_min(), h = u.power_max();
    if (prev) {
      const auto [wl, wh] =
          ramp_window(prev->op[j], u.ramp_up_mw, u.ramp_down_mw);
      l = std::max(l, wl);
      h = std::min(h, wh);
      if (l > h)
        throw InfeasibleCaseError("ramp window empty for CHP unit " +
                                  std::to_string(j + 1));
    }
    lo.push_back(l);
    hi.push_back(h);
    if (slack_heat_ != cs.n_heat() + j) {
      lo.push_back(u.heat_min());
      hi.push_back(u.heat_max());
    }
  }
  for (int k = 0; k < cs.n_heat(); ++k) {
    if (k == slack_heat_) continue;
    lo.push_back(cs.heat_units[k].h_min_mwth);
    hi.push_back(cs.heat_units[k].h_max_mwth);
  }

  lower_ = Eigen::Map<const Vec>(lo.data(), lo.size());
  upper_ = Eigen::Map<const Vec>(hi.data(), hi.size());
}

DispatchSolution Encoding::decode(const Vec& genes) const {
  if (genes.size() != n_genes())
    throw std::invalid_argument("decode: gene count mismatch");

  const Vec g = genes.cwiseMax(lower_).cwiseMin(upper_);
  const DispatchCase& cs = case_;

  DispatchSolution sol;
  sol.p = Vec::Zero(cs.n_power());
  sol.op = Vec::Zero(cs.n_chp());
  sol.hp = Vec::Zero(cs.n_chp());
  sol.th = Vec::Zero(cs.n_heat());

  int idx = 0;
  for (int i = 0; i < cs.n_power(); ++i) {
    if (i == slack_power_) {
      sol.p[i] = cs.power_units[i].p_min_mw;
      continue;
    }
    sol.p[i] = g[idx++];
  }
  for (int j = 0; j < cs.n_chp(); ++j) {
    const auto& u = cs.chp_units[j];
    const Scalar power = g[idx++];
    Scalar heat;
    if (slack_heat_ == cs.n_heat() + j) {
      // Heat solved by repair; keep the power on a nonempty FOR slice.
      sol.op[j] = std::clamp(power, u.power_min(), u.power_max());
      sol.hp[j] = 0.0;
      continue;
    }
    heat = g[idx++];
    const Vec2 projected = polygon_project(u.for_vertices, {power, heat});
    sol.op[j] = projected.x();
    sol.hp[j] = projected.y();
  }
  for (int k = 0; k < cs.n_heat(); ++k) {
    if (k == slack_heat_) continue;
    sol.th[k] = g[idx++];
  }

  bool ok = true;
  if (slack_heat_ >= 0)
    ok = repair_heat_balance(cs, sol, slack_heat_, interval_) && ok;
  if (slack_power_ >= 0) {
    ok = repair_power_balance(cs, sol, slack_power_, interval_) && ok;
    if (slack_power_window_) {
      const Scalar clamped =
          std::clamp(sol.p[slack_power_], slack_power_window_->first,
                     slack_power_window_->second);
      if (clamped != sol.p[slack_power_]) {
        sol.p[slack_power_] = clamped;
        ok = false;  // window clamp reopened the balance
      }
    }
  }

  evaluate(cs, sol, interval_);
  if (sol.report.power_balance_mw <= 1e-6 &&
      sol.report.heat_balance_mwth <= 1e-6)
    ok = true;  // clamped during iteration but closed anyway
  sol.report.repair_failed = !ok;
  return sol;
}

Vec Encoding::encode(const DispatchSolution& sol) const {
  const DispatchCase& cs = case_;
  std::vector<Scalar> g;
  for (int i = 0; i < cs.n_power(); ++i)
    if (i != slack_power_) g.push_back(sol.p[i]);
  for (int j = 0; j < cs.n_chp(); ++j) {
    g.push_back(sol.op[j]);
    if (slack_heat_ != cs.n_heat() + j) g.push_back(sol.hp[j]);
  }
  for (int k = 0; k < cs.n_heat(); ++k)
    if (k != slack_heat_) g.push_back(sol.th[k]);
  return Eigen::Map<const Vec>(g.data(), g.size());
}

void Encoding::diagnose_feasibility() const {
  const DispatchCase& cs = case_;
  Vec pmin(cs.n_power() + cs.n_chp()), pmax(cs.n_power() + cs.n_chp());
  for (int i = 0; i < cs.n_power(); ++i) {
    pmin[i] = cs.power_units[i].p_min_mw;
    pmax[i] = cs.power_units[i].p_max_mw;
  }
  for (int j = 0; j < cs.n_chp(); ++j) {
    pmin[cs.n_power() + j] = cs.chp_units[j].power_min();
    pmax[cs.n_power() + j] = cs.chp_units[j].power_max();
  }
  const Scalar demand = cs.p_demand(interval_);
  if (pmax.sum() - transmission_loss(cs, pmax) < demand)
    throw InfeasibleCaseError(
        "aggregate power capacity below demand (" +
        std::to_string(pmax.sum()) + " MW max vs " + std::to_string(demand) +
        " MW)");
  if (pmin.sum() - transmission_loss(cs, pmin) > demand)
    throw InfeasibleCaseError("aggregate minimum output above power demand");

  Scalar hmin = 0.0, hmax = 0.0;
  for (const auto& u : cs.chp_units) {
    hmin += u.heat_min();
    hmax += u.heat_max();
  }
  for (const auto& u : cs.heat_units) {
    hmin += u.h_min_mwth;
    hmax += u.h_max_mwth;
  }
  const Scalar hd = cs.h_demand(interval_);
  if (hmax < hd)
    throw InfeasibleCaseError("aggregate heat capacity below demand");
  if (hmin > hd)
    throw InfeasibleCaseError("aggregate minimum heat above demand");
}

}  // namespace chpeed
