#ifndef CHPEED_DECISION_FCM_HPP
#define CHPEED_DECISION_FCM_HPP

#include <cstdint>
#include <vector>

#include "chpeed/casedata/run_config.hpp"
#include "chpeed/types.hpp"

namespace chpeed {

struct FcmResult {
  Mat membership;            // N x n_clusters, rows sum to 1
  Mat centers;               // n_clusters x dim
  Scalar loss = 0.0;         // final J
  int iterations = 0;
  std::vector<Scalar> loss_history;  // non-increasing
  std::vector<int> hard_assignment() const;  // argmax, ties to lower index
};

// Alternating-minimization fuzzy c-means on the rows of `points`.
// Memberships start from the seeded generator; one deterministic restart
// from spread-out extreme centers is also run and the lower-loss result
// kept. Terminates when |J_cur - J_pre| < epsilon or at max_iter.
// Throws std::invalid_argument with fewer distinct points than clusters.
FcmResult fcm_cluster(const Mat& points, const FcmConfig& config,
                      std::uint64_t seed);

}  // namespace chpeed

#endif
