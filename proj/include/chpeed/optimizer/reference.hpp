#ifndef CHPEED_OPTIMIZER_REFERENCE_HPP
#define CHPEED_OPTIMIZER_REFERENCE_HPP

#include <vector>

#include "chpeed/types.hpp"

namespace chpeed {

// Simplex-lattice reference directions (rows sum to 1). Count for divisions
// H over M objectives is C(H + M - 1, M - 1).
Mat das_dennis_points(int divisions, int m_objectives);

// Ideal/nadir anchors for objective normalization. The ideal point only
// improves (componentwise min over everything seen); the nadir is
// re-estimated each iteration from the first nondominated level.
struct NormalizationAnchors {
  Objectives ideal{0.0, 0.0};
  Objectives nadir{1.0, 1.0};
  bool initialized = false;
  bool degenerate = false;  // set when a span collapsed and 1e-12 was used

  void absorb_ideal(const Objectives& f);
  void set_nadir(const Objectives& f) { nadir = f; }
};

// (f - ideal) / (nadir - ideal), clamped below at 0; values above 1 are
// allowed. A collapsed span is replaced by 1e-12 and flagged.
Objectives normalize(const Objectives& f, NormalizationAnchors& anchors);

// Upsilon = Dis1 + theta * Dis2: norm of the projection of f_norm onto the
// line through the origin and lambda, plus the penalized perpendicular
// distance from that line.
Scalar theta_fitness(const Objectives& f_norm, const Objectives& lambda,
                     Scalar theta);

// Perpendicular distance of f_norm from the reference line of lambda.
Scalar perpendicular_distance(const Objectives& f_norm,
                              const Objectives& lambda);

// Assigns every row of `normalized` to the reference line with minimum
// perpendicular distance; ties go to the lowest reference index.
std::vector<int> cluster_to_reference(const Mat& normalized, const Mat& refs);

// Definition of theta-dominance: same cluster and strictly smaller Upsilon.
bool theta_dominates(int cluster1, Scalar upsilon1, int cluster2,
                     Scalar upsilon2);

}  // namespace chpeed

#endif
