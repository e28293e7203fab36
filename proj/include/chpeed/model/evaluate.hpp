#ifndef CHPEED_MODEL_EVALUATE_HPP
#define CHPEED_MODEL_EVALUATE_HPP

#include "chpeed/model/units.hpp"

namespace chpeed {

// Objective and constraint evaluators. All functions here are pure: same
// inputs give bit-identical outputs, and a DispatchCase is never mutated.

// Single-unit terms.
Scalar unit_cost(const PowerOnlyUnit& u, Scalar p);
Scalar unit_cost(const ChpUnit& u, Scalar power, Scalar heat);
Scalar unit_cost(const HeatOnlyUnit& u, Scalar heat);
Scalar unit_emission(const PowerOnlyUnit& u, Scalar p);
Scalar unit_emission(const ChpUnit& u, Scalar power);
Scalar unit_emission(const HeatOnlyUnit& u, Scalar heat);

// Total fuel cost ($) of a decision vector. Throws std::invalid_argument on
// dimension mismatch and std::domain_error on non-finite inputs.
Scalar evaluate_cost(const DispatchCase& cs, const DispatchSolution& sol);

// Total gas emission (kg), SO2/NOx plus CO2.
Scalar evaluate_emission(const DispatchCase& cs, const DispatchSolution& sol);

// B-coefficient transmission loss (MW) for electric outputs in loss-model
// order (power-only, then CHP). Returns 0 when no loss model is present.
Scalar transmission_loss(const DispatchCase& cs, const Vec& powers);

// Fills cost/emission/loss and the feasibility residuals of `sol` in place
// (repair_failed is left untouched).
void evaluate(const DispatchCase& cs, DispatchSolution& sol, int interval = 0);

}  // namespace chpeed

#endif
