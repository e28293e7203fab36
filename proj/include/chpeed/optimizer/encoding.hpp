#ifndef CHPEED_OPTIMIZER_ENCODING_HPP
#define CHPEED_OPTIMIZER_ENCODING_HPP

#include <optional>

#include "chpeed/model/units.hpp"

namespace chpeed {

// Real-coded decision encoding. Free genes are all power-only outputs except
// one slack, every CHP (power, heat) pair, and all heat-only outputs except
// one slack; both equality balances are closed by repair, so they never
// appear in the search space.
class Encoding {
 public:
  // prev_point, when set, intersects electric-output bounds with the ramp
  // window [prev - DR, prev + UR] for the given interval of a dynamic case.
  Encoding(const DispatchCase& cs, int interval = 0,
           const DispatchSolution* prev_point = nullptr);

  int n_genes() const { return static_cast<int>(lower_.size()); }
  const Vec& lower() const { return lower_; }
  const Vec& upper() const { return upper_; }
  int slack_power_index() const { return slack_power_; }
  int slack_heat_index() const { return slack_heat_; }

  // Clips genes to bounds, projects CHP points into their FORs, repairs both
  // balances and evaluates. Returns the repair-failure flag in the report.
  DispatchSolution decode(const Vec& genes) const;

  // Inverse mapping (slack outputs dropped); decode(encode(s)) reproduces a
  // balanced solution.
  Vec encode(const DispatchSolution& sol) const;

  // Throws InfeasibleCaseError when aggregate capacity cannot meet demand.
  void diagnose_feasibility() const;

 private:
  const DispatchCase& case_;
  int interval_;
  int slack_power_;  // power-only index, -1 when none exists
  int slack_heat_;   // heat-only index, or n_heat + j for CHP j, -1 when none
  Vec lower_, upper_;
  // Ramp window on the slack power unit, when dynamic.
  std::optional<std::pair<Scalar, Scalar>> slack_power_window_;
};

struct InfeasibleCaseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace chpeed

#endif
