#include "chpeed/optimizer/reference.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace chpeed {

namespace {

void enumerate(int divisions, int m, int pos, int left, std::vector<int>& acc,
               std::vector<std::vector<int>>& out) {
  if (pos == m - 1) {
    acc[pos] = left;
    out.push_back(acc);
    return;
  }
  for (int k = left; k >= 0; --k) {
    acc[pos] = k;
    enumerate(divisions, m, pos + 1, left - k, acc, out);
  }
}

}  // namespace

Mat das_dennis_points(int divisions, int m_objectives) {
  if (divisions < 1)
    throw std::invalid_argument("das_dennis_points: divisions must be >= 1");
  if (m_objectives < 2)
    throw std::invalid_argument("das_dennis_points: needs >= 2 objectives");

  std::vector<std::vector<int>> lattice;
  std::vector<int> acc(m_objectives, 0);
  enumerate(divisions, m_objectives, 0, divisions, acc, lattice);

  Mat refs(static_cast<int>(lattice.size()), m_objectives);
  for (int i = 0; i < refs.rows(); ++i)
    for (int j = 0; j < m_objectives; ++j)
      refs(i, j) = static_cast<Scalar>(lattice[i][j]) / divisions;
  return refs;
}

void NormalizationAnchors::absorb_ideal(const Objectives& f) {
  if (!initialized) {
    ideal = f;
    nadir = f;
    initialized = true;
    return;
  }
  ideal = ideal.cwiseMin(f);
}

Objectives normalize(const Objectives& f, NormalizationAnchors& anchors) {
  Objectives out;
  for (int i = 0; i < 2; ++i) {
    Scalar span = anchors.nadir[i] - anchors.ideal[i];
    if (span <= 0.0) {
      span = 1e-12;
      anchors.degenerate = true;
    }
    out[i] = std::max(0.0, (f[i] - anchors.ideal[i]) / span);
  }
  return out;
}

Scalar theta_fitness(const Objectives& f_norm, const Objectives& lambda,
                     Scalar theta) {
  const Scalar lnorm = lambda.norm();
  const Scalar dis1 = std::abs(f_norm.dot(lambda)) / lnorm;
  const Objectives along = (f_norm.dot(lambda) / (lnorm * lnorm)) * lambda;
  const Scalar dis2 = (f_norm - along).norm();
  return dis1 + theta * dis2;
}

Scalar perpendicular_distance(const Objectives& f_norm,
                              const Objectives& lambda) {
  const Scalar lnorm2 = lambda.squaredNorm();
  const Objectives along = (f_norm.dot(lambda) / lnorm2) * lambda;
  return (f_norm - along).norm();
}

std::vector<int> cluster_to_reference(const Mat& normalized, const Mat& refs) {
  if (refs.rows() == 0)
    throw std::invalid_argument("cluster_to_reference: empty reference set");
  std::vector<int> assignment(normalized.rows(), 0);
  for (int i = 0; i < normalized.rows(); ++i) {
    const Objectives f = normalized.row(i);
    Scalar best = std::numeric_limits<Scalar>::max();
    for (int j = 0; j < refs.rows(); ++j) {
      const Scalar d = perpendicular_distance(f, refs.row(j));
      if (d < best) {
        best = d;
        assignment[i] = j;
      }
    }
  }
  return assignment;
}

bool theta_dominates(int cluster1, Scalar upsilon1, int cluster2,
                     Scalar upsilon2) {
  return cluster1 == cluster2 && upsilon1 < upsilon2;
}

}  // namespace chpeed
