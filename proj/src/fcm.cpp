#include "chpeed/decision/fcm.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <stdexcept>

namespace chpeed {

std::vector<int> FcmResult::hard_assignment() const {
  std::vector<int> out(membership.rows(), 0);
  for (int i = 0; i < membership.rows(); ++i) {
    Scalar best = membership(i, 0);
    for (int j = 1; j < membership.cols(); ++j) {
      if (membership(i, j) > best) {
        best = membership(i, j);
        out[i] = j;
      }
    }
  }
  return out;
}

namespace {

void normalize_rows(Mat& u) {
  for (int i = 0; i < u.rows(); ++i) {
    const Scalar s = u.row(i).sum();
    u.row(i) /= s;
  }
}

// One alternating-minimization descent from the given membership matrix.
FcmResult descend(const Mat& points, Mat u, const FcmConfig& cfg) {
  const int n = static_cast<int>(points.rows());
  const int c = cfg.n_clusters;
  const Scalar m = cfg.fuzziness;

  FcmResult res;
  res.centers = Mat::Zero(c, points.cols());
  Scalar prev_loss = std::numeric_limits<Scalar>::max();

  for (int iter = 0; iter < cfg.max_iter; ++iter) {
    // Center update: weighted means with weights mu^m.
    const Mat w = u.array().pow(m).matrix();
    for (int j = 0; j < c; ++j) {
      const Scalar denom = w.col(j).sum();
      res.centers.row(j) = (w.col(j).transpose() * points) / denom;
    }

    // Membership update from squared distances.
    Mat d2(n, c);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < c; ++j)
        d2(i, j) = (points.row(i) - res.centers.row(j)).squaredNorm();

    for (int i = 0; i < n; ++i) {
      // A point sitting on a center gets full membership there (ties split
      // evenly across coincident centers).
      std::vector<int> zero;
      for (int j = 0; j < c; ++j)
        if (d2(i, j) == 0.0) zero.push_back(j);
      if (!zero.empty()) {
        u.row(i).setZero();
        for (int j : zero) u(i, j) = 1.0 / zero.size();
        continue;
      }
      for (int j = 0; j < c; ++j) {
        Scalar sum = 0.0;
        for (int k = 0; k < c; ++k)
          sum += std::pow(d2(i, j) / d2(i, k), 1.0 / (m - 1.0));
        u(i, j) = 1.0 / sum;
      }
    }

    Scalar loss = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < c; ++j) loss += std::pow(u(i, j), m) * d2(i, j);

    res.loss = loss;
    res.loss_history.push_back(loss);
    res.iterations = iter + 1;
    if (std::abs(prev_loss - loss) < cfg.epsilon) break;
    prev_loss = loss;
  }
  res.membership = std::move(u);
  return res;
}

}  // namespace

FcmResult fcm_cluster(const Mat& points, const FcmConfig& cfg,
                      std::uint64_t seed) {
  const int n = static_cast<int>(points.rows());
  const int c = cfg.n_clusters;
  if (c < 1) throw std::invalid_argument("fcm: n_clusters must be >= 1");
  if (cfg.fuzziness <= 1.0)
    throw std::invalid_argument("fcm: fuzziness m must be > 1");

  std::set<std::vector<Scalar>> distinct;
  for (int i = 0; i < n; ++i)
    distinct.insert(std::vector<Scalar>(points.row(i).begin(),
                                        points.row(i).end()));
  // All-identical input degenerates cleanly onto one center; anything in
  // between is a caller error.
  if (static_cast<int>(distinct.size()) < c && distinct.size() != 1)
    throw std::invalid_argument("fcm: fewer distinct points than clusters");

  // Seeded random start.
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<Scalar> uni(0.01, 1.0);
  Mat u_random(n, c);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < c; ++j) u_random(i, j) = uni(rng);
  normalize_rows(u_random);
  FcmResult best = descend(points, u_random, cfg);

  // Deterministic restart: memberships from distances to spread-out extreme
  // points, so acceptance runs do not depend on initialization luck.
  if (n >= c && distinct.size() > 1) {
    Mat u_det = Mat::Constant(n, c, 1e-6);
    for (int i = 0; i < n; ++i) {
      // Anchor j is the point at quantile j/(c-1) along the first coordinate.
      int anchor_cluster = 0;
      Scalar lo = points.col(0).minCoeff(), hi = points.col(0).maxCoeff();
      if (hi > lo && c > 1) {
        const Scalar t = (points(i, 0) - lo) / (hi - lo);
        anchor_cluster = std::min(c - 1, static_cast<int>(t * c));
      }
      u_det(i, anchor_cluster) = 1.0;
    }
    normalize_rows(u_det);
    FcmResult alt = descend(points, u_det, cfg);
    if (alt.loss < best.loss) best = std::move(alt);
  }
  return best;
}

}  // namespace chpeed
