#ifndef CHPEED_DECISION_GRP_HPP
#define CHPEED_DECISION_GRP_HPP

#include <vector>

#include "chpeed/casedata/run_config.hpp"
#include "chpeed/model/units.hpp"
#include "chpeed/optimizer/evolve.hpp"

namespace chpeed {

// Min-max standardization to benefit orientation: for minimized columns,
// x' = (max - x) / (max - min), so 1 is best. A constant column becomes
// all-1 and is flagged.
struct StandardizedMatrix {
  Mat values;  // in [0, 1]
  std::vector<bool> degenerate_column;
};
StandardizedMatrix standardize_matrix(const Mat& schemes);

// Deng grey relational coefficients of every scheme row against the
// positive ideal (per-column maxima) and negative ideal (per-column minima).
// Delta_min/Delta_max are global over the matrix; resolution rho defaults
// to 0.5.
struct GrcMatrices {
  Mat plus;   // Grc+ against the positive ideal
  Mat minus;  // Grc- against the negative ideal
};
GrcMatrices grey_relation_coefficients(const Mat& standardized,
                                       Scalar resolution = 0.5);

// Prj+- per scheme with weight factor r_i^2 / sqrt(sum r_i^2), and the
// relative projection RP = Prj+ / (Prj+ + Prj-), in [0, 1].
std::vector<Scalar> relative_projection(const Mat& grc_plus,
                                        const Mat& grc_minus,
                                        const std::vector<Scalar>& weights);

// Full stage-2 report: one ranked block per FCM cluster plus the chosen
// best-compromise solution of each.
struct BcsCluster {
  int label = 0;                  // 1 = lower-cost cluster, 2 = the other
  Objectives center{0.0, 0.0};    // in raw objective units
  std::vector<int> archive_rows;  // member indices, RP-descending
  std::vector<Scalar> rp;         // matching RP scores
  Mat grc_plus, grc_minus;        // rows in archive_rows order
  std::vector<Scalar> prj_plus, prj_minus;
  DispatchSolution best;          // the BCS of this cluster
};

struct BcsReport {
  std::vector<BcsCluster> clusters;  // BCS 1 first
};

// FCM (2 clusters by default) on min-max-normalized objectives, then per
// cluster standardize -> Grc -> RP. The lower-cost-center cluster is
// labeled BCS 1. RP ties break toward lower cost.
BcsReport select_bcs(const ParetoArchive& archive, const RunConfig& config);

// Text report mirroring a dispatch-table layout (objectives, loss, unit
// outputs per BCS).
std::string format_bcs_report(const DispatchCase& cs, const BcsReport& report);

}  // namespace chpeed

#endif
