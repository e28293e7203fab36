#include "chpeed/decision/grp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "chpeed/decision/fcm.hpp"

namespace chpeed {

StandardizedMatrix standardize_matrix(const Mat& schemes) {
  if (schemes.rows() < 2)
    throw std::invalid_argument("standardize_matrix: needs >= 2 schemes");
  StandardizedMatrix out;
  out.values = Mat::Zero(schemes.rows(), schemes.cols());
  out.degenerate_column.assign(schemes.cols(), false);
  for (int c = 0; c < schemes.cols(); ++c) {
    const Scalar lo = schemes.col(c).minCoeff();
    const Scalar hi = schemes.col(c).maxCoeff();
    if (hi - lo <= 0.0) {
      out.values.col(c).setOnes();
      out.degenerate_column[c] = true;
      continue;
    }
    // Both objectives are minimized; flip so larger is better.
    out.values.col(c) = (hi - schemes.col(c).array()) / (hi - lo);
  }
  return out;
}

GrcMatrices grey_relation_coefficients(const Mat& std_matrix,
                                       Scalar resolution) {
  const int n = static_cast<int>(std_matrix.rows());
  const int m = static_cast<int>(std_matrix.cols());
  const Vec ideal_plus = std_matrix.colwise().maxCoeff();
  const Vec ideal_minus = std_matrix.colwise().minCoeff();

  const Mat delta_plus =
      (std_matrix.rowwise() - ideal_plus.transpose()).cwiseAbs();
  const Mat delta_minus =
      (std_matrix.rowwise() - ideal_minus.transpose()).cwiseAbs();

  GrcMatrices out;
  out.plus = Mat::Zero(n, m);
  out.minus = Mat::Zero(n, m);
  // Delta_min / Delta_max are taken globally over each delta matrix.
  const Scalar min_p = delta_plus.minCoeff(), max_p = delta_plus.maxCoeff();
  const Scalar min_m = delta_minus.minCoeff(), max_m = delta_minus.maxCoeff();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      out.plus(i, j) = (min_p + resolution * max_p) /
                       (delta_plus(i, j) + resolution * max_p);
      out.minus(i, j) = (min_m + resolution * max_m) /
                        (delta_minus(i, j) + resolution * max_m);
    }
  }
  // All deltas zero (single effective scheme): coefficient is 1 everywhere.
  if (max_p == 0.0) out.plus.setOnes();
  if (max_m == 0.0) out.minus.setOnes();
  return out;
}

std::vector<Scalar> relative_projection(const Mat& grc_plus,
                                        const Mat& grc_minus,
                                        const std::vector<Scalar>& weights) {
  const int m = static_cast<int>(grc_plus.cols());
  if (static_cast<int>(weights.size()) != m)
    throw std::invalid_argument("relative_projection: weight count mismatch");
  Scalar wsum2 = 0.0;
  for (Scalar w : weights) {
    if (w < 0.0)
      throw std::invalid_argument("relative_projection: negative weight");
    wsum2 += w * w;
  }
  if (wsum2 == 0.0)
    throw std::invalid_argument("relative_projection: all weights zero");

  Vec factor(m);
  for (int j = 0; j < m; ++j)
    factor[j] = weights[j] * weights[j] / std::sqrt(wsum2);

  std::vector<Scalar> rp(grc_plus.rows());
  for (int i = 0; i < grc_plus.rows(); ++i) {
    const Scalar prj_plus = grc_plus.row(i).dot(factor);
    const Scalar prj_minus = grc_minus.row(i).dot(factor);
    if (prj_plus + prj_minus == 0.0)
      throw std::invalid_argument("relative_projection: zero projections");
    rp[i] = prj_plus / (prj_plus + prj_minus);
  }
  return rp;
}

BcsReport select_bcs(const ParetoArchive& archive, const RunConfig& config) {
  const auto& sols = archive.solutions;
  const int n = static_cast<int>(sols.size());
  if (n == 0) throw std::invalid_argument("select_bcs: empty archive");

  BcsReport report;
  if (n == 1) {
    BcsCluster cl;
    cl.label = 1;
    cl.center = sols[0].objectives();
    cl.archive_rows = {0};
    cl.rp = {1.0};
    cl.best = sols[0];
    report.clusters.push_back(std::move(cl));
    return report;
  }

  // Canonical row order (ascending cost) so the result is invariant under
  // permutations of the archive.
  std::vector<int> canon(n);
  std::iota(canon.begin(), canon.end(), 0);
  std::stable_sort(canon.begin(), canon.end(), [&](int a, int b) {
    if (sols[a].cost != sols[b].cost) return sols[a].cost < sols[b].cost;
    return sols[a].emission < sols[b].emission;
  });

  // Cluster on min-max-normalized objectives so the $10^4 cost scale does
  // not swamp the kg emission scale.
  Mat raw(n, 2);
  for (int i = 0; i < n; ++i) raw.row(i) = sols[canon[i]].objectives();
  Mat norm(n, 2);
  for (int c = 0; c < 2; ++c) {
    const Scalar lo = raw.col(c).minCoeff(), hi = raw.col(c).maxCoeff();
    if (hi > lo)
      norm.col(c) = (raw.col(c).array() - lo) / (hi - lo);
    else
      norm.col(c).setZero();
  }

  const int n_clusters = std::min(config.fcm.n_clusters, n);
  FcmConfig fcm_cfg = config.fcm;
  fcm_cfg.n_clusters = n_clusters;
  const FcmResult fcm = fcm_cluster(norm, fcm_cfg, config.seed);
  const std::vector<int> assignment = fcm.hard_assignment();

  // Raw-objective centers for labeling; the lower-cost center is BCS 1.
  std::vector<int> cluster_order(n_clusters);
  std::iota(cluster_order.begin(), cluster_order.end(), 0);
  std::vector<Objectives> centers(n_clusters, Objectives::Zero());
  std::vector<int> counts(n_clusters, 0);
  for (int i = 0; i < n; ++i) {
    centers[assignment[i]] += raw.row(i).transpose();
    ++counts[assignment[i]];
  }
  for (int j = 0; j < n_clusters; ++j)
    if (counts[j] > 0) centers[j] /= counts[j];
  std::sort(cluster_order.begin(), cluster_order.end(), [&](int a, int b) {
    if (counts[a] == 0 || counts[b] == 0) return counts[a] > counts[b];
    return centers[a][0] < centers[b][0];
  });

  int label = 0;
  for (int j : cluster_order) {
    if (counts[j] == 0) continue;
    BcsCluster cl;
    cl.label = ++label;
    cl.center = centers[j];
    std::vector<int> members;
    for (int i = 0; i < n; ++i)
      if (assignment[i] == j) members.push_back(i);

    std::vector<Scalar> rp;
    if (members.size() == 1) {
      // Trivial cluster: its only member is the BCS by default.
      rp = {1.0};
      cl.grc_plus = Mat::Ones(1, 2);
      cl.grc_minus = Mat::Ones(1, 2);
      cl.prj_plus = {1.0};
      cl.prj_minus = {1.0};
    } else {
      Mat schemes(static_cast<int>(members.size()), 2);
      for (std::size_t i = 0; i < members.size(); ++i)
        schemes.row(static_cast<int>(i)) = raw.row(members[i]);
      const StandardizedMatrix std_m = standardize_matrix(schemes);
      const GrcMatrices grc =
          grey_relation_coefficients(std_m.values, config.grp.resolution);
      rp = relative_projection(grc.plus, grc.minus, config.grp.weights);
      cl.grc_plus = grc.plus;
      cl.grc_minus = grc.minus;
      Vec factor(2);
      Scalar wsum2 = 0.0;
      for (Scalar w : config.grp.weights) wsum2 += w * w;
      for (int c = 0; c < 2; ++c)
        factor[c] = config.grp.weights[c] * config.grp.weights[c] /
                    std::sqrt(wsum2);
      for (int i = 0; i < grc.plus.rows(); ++i) {
        cl.prj_plus.push_back(grc.plus.row(i).dot(factor));
        cl.prj_minus.push_back(grc.minus.row(i).dot(factor));
      }
    }

    // RP-descending order; ties break toward lower cost.
    std::vector<int> order(members.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      if (rp[a] != rp[b]) return rp[a] > rp[b];
      return raw(members[a], 0) < raw(members[b], 0);
    });

    BcsCluster ordered = cl;
    ordered.grc_plus = Mat(cl.grc_plus.rows(), 2);
    ordered.grc_minus = Mat(cl.grc_minus.rows(), 2);
    ordered.prj_plus.clear();
    ordered.prj_minus.clear();
    for (std::size_t i = 0; i < order.size(); ++i) {
      ordered.archive_rows.push_back(canon[members[order[i]]]);
      ordered.rp.push_back(rp[order[i]]);
      ordered.grc_plus.row(static_cast<int>(i)) = cl.grc_plus.row(order[i]);
      ordered.grc_minus.row(static_cast<int>(i)) = cl.grc_minus.row(order[i]);
      ordered.prj_plus.push_back(cl.prj_plus[order[i]]);
      ordered.prj_minus.push_back(cl.prj_minus[order[i]]);
    }
    ordered.best = sols[ordered.archive_rows.front()];
    report.clusters.push_back(std::move(ordered));
  }
  return report;
}

std::string format_bcs_report(const DispatchCase& cs,
                              const BcsReport& report) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(4);
  out << "Best compromise solutions (" << cs.name << ")\n";
  for (const auto& cl : report.clusters) {
    const auto& s = cl.best;
    out << "\nBCS " << cl.label << "  (cluster center: cost " << cl.center[0]
        << " $, emission " << cl.center[1] << " kg; " << cl.archive_rows.size()
        << " members)\n";
    out << "  cost_usd      " << s.cost << "\n";
    out << "  emission_kg   " << s.emission << "\n";
    out << "  loss_mw       " << s.loss_mw << "\n";
    out << "  rp_score      " << cl.rp.front() << "\n";
    for (int i = 0; i < s.p.size(); ++i)
      out << "  P" << i + 1 << "_mw         " << s.p[i] << "\n";
    for (int j = 0; j < s.op.size(); ++j)
      out << "  O" << j + 1 << "_mw         " << s.op[j] << "\n";
    for (int j = 0; j < s.hp.size(); ++j)
      out << "  H" << j + 1 << "_mwth       " << s.hp[j] << "\n";
    for (int k = 0; k < s.th.size(); ++k)
      out << "  T" << k + 1 << "_mwth       " << s.th[k] << "\n";
  }
  return out.str();
}

}  // namespace chpeed
