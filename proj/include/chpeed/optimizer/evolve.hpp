#ifndef CHPEED_OPTIMIZER_EVOLVE_HPP
#define CHPEED_OPTIMIZER_EVOLVE_HPP

#include <random>
#include <vector>

#include "chpeed/casedata/run_config.hpp"
#include "chpeed/model/units.hpp"
#include "chpeed/optimizer/encoding.hpp"
#include "chpeed/optimizer/reference.hpp"

namespace chpeed {

using Rng = std::mt19937_64;

// One population member: genes plus the decoded, evaluated dispatch point.
// Constraint handling is repair-first; when repair fails the residual sum is
// penalized into the objectives used for selection only (cached objective
// values stay equal to the evaluators).
struct Individual {
  Vec genes;
  DispatchSolution sol;
  Scalar penalty = 0.0;   // 1e6 per MW/MWth of unrepaired residual
  int cluster = -1;       // reference line from the last selection
  Scalar upsilon = 0.0;   // theta-fitness from the last selection
  int rank = 0;           // NSGA-II level
  Scalar crowding = 0.0;

  Objectives selection_objectives() const {
    return sol.objectives() + Objectives{penalty, penalty};
  }
};

// Final nondominated set with its normalization anchors.
struct ParetoArchive {
  std::vector<DispatchSolution> solutions;  // mutually Pareto-nondominated
  NormalizationAnchors anchors;
  int iterations = 0;
};

// SBX crossover (index 30, p = 1.0) and polynomial mutation (index 20,
// p = 1/n) over parents chosen by binary tournament; children are decoded
// (bound clip + FOR projection + balance repair) before return.
struct VariationParams {
  Scalar crossover_prob = 1.0;
  Scalar crossover_index = 30.0;
  Scalar mutation_prob = -1.0;  // < 0 means 1 / n_genes
  Scalar mutation_index = 20.0;
};

std::vector<Individual> vary(
    const std::vector<Individual>& parents, const Encoding& enc, Rng& rng,
    const VariationParams& params = {},
    bool nsga2_tournament = false);

// Steps 6-13 of the selection loop: Pareto levels fill S, S is normalized
// and clustered, theta-levels fill the next population, the boundary level
// is seeded-shuffled. Writes cluster/upsilon back into the survivors.
std::vector<Individual> environmental_selection(
    std::vector<Individual> combined, const Mat& refs, Scalar theta,
    int target_size, NormalizationAnchors& anchors, Rng& rng);

// Crowding-distance selection of NSGA-II (writes rank/crowding back).
std::vector<Individual> nsga2_selection(std::vector<Individual> combined,
                                        int target_size);

// Full runs. `prev_point` carries the previous interval's dispatch of a
// dynamic case (ramp windows are applied around it).
ParetoArchive run_theta_dea(const DispatchCase& cs, const RunConfig& config,
                            int interval = 0,
                            const DispatchSolution* prev_point = nullptr);
ParetoArchive run_nsga2(const DispatchCase& cs, const RunConfig& config,
                        int interval = 0,
                        const DispatchSolution* prev_point = nullptr);
ParetoArchive run_algorithm(const DispatchCase& cs, const RunConfig& config,
                            int interval = 0,
                            const DispatchSolution* prev_point = nullptr);

}  // namespace chpeed

#endif
