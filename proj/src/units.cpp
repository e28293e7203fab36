#include "chpeed/model/units.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "chpeed/model/geometry.hpp"

namespace chpeed {

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw std::invalid_argument(field + ": " + what);
}

}  // namespace

Scalar ChpUnit::power_min() const {
  Scalar m = for_vertices.front().x();
  for (const auto& v : for_vertices) m = std::min(m, v.x());
  return m;
}

Scalar ChpUnit::power_max() const {
  Scalar m = for_vertices.front().x();
  for (const auto& v : for_vertices) m = std::max(m, v.x());
  return m;
}

Scalar ChpUnit::heat_min() const {
  Scalar m = for_vertices.front().y();
  for (const auto& v : for_vertices) m = std::min(m, v.y());
  return m;
}

Scalar ChpUnit::heat_max() const {
  Scalar m = for_vertices.front().y();
  for (const auto& v : for_vertices) m = std::max(m, v.y());
  return m;
}

void DispatchCase::validate() const {
  if (n_power() + n_chp() < 1) fail("case", "needs at least one electric unit");
  if (n_intervals < 1) fail("case.n_intervals", "must be >= 1");
  if (static_cast<int>(p_demand_mw.size()) != n_intervals)
    fail("case.p_demand_mw", "profile length must equal n_intervals");
  if (static_cast<int>(h_demand_mwth.size()) != n_intervals)
    fail("case.h_demand_mwth", "profile length must equal n_intervals");
  for (int t = 0; t < n_intervals; ++t) {
    if (!std::isfinite(p_demand_mw[t]) || p_demand_mw[t] < 0.0)
      fail("case.p_demand_mw", "must be finite and nonnegative");
    if (!std::isfinite(h_demand_mwth[t]) || h_demand_mwth[t] < 0.0)
      fail("case.h_demand_mwth", "must be finite and nonnegative");
    if (h_demand_mwth[t] > 0.0 && n_chp() + n_heat() < 1)
      fail("case.h_demand_mwth", "positive heat demand with no heat source");
  }

  for (int i = 0; i < n_power(); ++i) {
    const auto& u = power_units[i];
    const std::string tag = "power_units[" + std::to_string(i) + "]";
    if (!(u.p_min_mw < u.p_max_mw))
      fail(tag + ".p_min_mw", "requires p_min < p_max");
    if (!std::isfinite(u.p_min_mw) || !std::isfinite(u.p_max_mw))
      fail(tag, "limits must be finite");
    if (u.vple_e && *u.vple_e < 0.0)
      fail(tag + ".vple_e", "must be nonnegative");
  }

  for (int j = 0; j < n_chp(); ++j) {
    const auto& u = chp_units[j];
    const std::string tag = "chp_units[" + std::to_string(j) + "].for_vertices";
    if (u.for_vertices.size() < 3) fail(tag, "needs at least 3 vertices");
    for (const auto& v : u.for_vertices) {
      if (v.x() < 0.0 || v.y() < 0.0) fail(tag, "coordinates must be >= 0");
    }
    if (!is_convex_ccw(u.for_vertices))
      fail(tag, "must be a convex counter-clockwise polygon");
  }

  for (int k = 0; k < n_heat(); ++k) {
    const auto& u = heat_units[k];
    const std::string tag = "heat_units[" + std::to_string(k) + "]";
    if (u.h_min_mwth < 0.0) fail(tag + ".h_min_mwth", "must be >= 0");
    if (u.h_min_mwth > u.h_max_mwth)
      fail(tag + ".h_min_mwth", "requires h_min <= h_max");
  }

  if (loss.present) {
    const int dim = n_power() + n_chp();
    const std::string tag = "loss.b_matrix";
    if (loss.b_matrix.rows() != dim || loss.b_matrix.cols() != dim)
      fail(tag, "dimension must equal n_power + n_chp");
    if (loss.b_linear.size() != dim)
      fail("loss.b_linear", "dimension must equal n_power + n_chp");
    for (int r = 0; r < dim; ++r) {
      for (int c = r + 1; c < dim; ++c) {
        if (std::abs(loss.b_matrix(r, c) - loss.b_matrix(c, r)) > 1e-12)
          fail(tag + "[" + std::to_string(r) + "][" + std::to_string(c) + "]",
               "matrix must be symmetric");
      }
    }
  }

  if (n_intervals > 1) {
    for (int i = 0; i < n_power(); ++i) {
      if (!power_units[i].ramp_up_mw || !power_units[i].ramp_down_mw)
        fail("power_units[" + std::to_string(i) + "]",
             "ramp limits required on a multi-interval case");
    }
    for (int j = 0; j < n_chp(); ++j) {
      if (!chp_units[j].ramp_up_mw || !chp_units[j].ramp_down_mw)
        fail("chp_units[" + std::to_string(j) + "]",
             "ramp limits required on a multi-interval case");
    }
  }
}

Vec DispatchSolution::electric_outputs() const {
  Vec out(p.size() + op.size());
  out << p, op;
  return out;
}

}  // namespace chpeed
