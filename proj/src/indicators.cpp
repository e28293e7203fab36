#include "chpeed/metrics/indicators.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "chpeed/optimizer/evolve.hpp"
#include "chpeed/optimizer/sorting.hpp"

namespace chpeed {

Scalar igd(const std::vector<Objectives>& reference,
           const std::vector<Objectives>& front) {
  if (reference.empty() || front.empty())
    throw std::invalid_argument("igd: empty point set");
  Scalar total = 0.0;
  for (const auto& g : reference) {
    Scalar best = std::numeric_limits<Scalar>::max();
    for (const auto& a : front) best = std::min(best, (g - a).norm());
    total += best;
  }
  return total / static_cast<Scalar>(reference.size());
}

Scalar spread(const std::vector<Objectives>& front,
              const Objectives& extreme_low, const Objectives& extreme_high) {
  const int n = static_cast<int>(front.size());
  if (n < 2) throw std::invalid_argument("spread: front needs >= 2 points");

  std::vector<Objectives> sorted = front;
  std::sort(sorted.begin(), sorted.end(),
            [](const Objectives& a, const Objectives& b) {
              if (a[0] != b[0]) return a[0] < b[0];
              return a[1] < b[1];
            });

  std::vector<Scalar> gaps(n - 1);
  for (int i = 0; i + 1 < n; ++i) gaps[i] = (sorted[i + 1] - sorted[i]).norm();
  const Scalar mean =
      std::accumulate(gaps.begin(), gaps.end(), 0.0) / gaps.size();

  const Scalar d1 = (sorted.front() - extreme_low).norm();
  const Scalar d2 = (sorted.back() - extreme_high).norm();

  Scalar deviation = 0.0;
  for (Scalar g : gaps) deviation += std::abs(g - mean);

  const Scalar denom = d1 + d2 + (n - 1) * mean;
  if (denom == 0.0) return 0.0;  // all points identical
  return (d1 + d2 + deviation) / denom;
}

std::vector<Objectives> pooled_reference_front(
    const std::vector<std::vector<Objectives>>& fronts) {
  if (fronts.empty())
    throw std::invalid_argument("pooled_reference_front: no fronts");
  std::vector<Objectives> pool;
  for (const auto& f : fronts) pool.insert(pool.end(), f.begin(), f.end());
  if (pool.empty())
    throw std::invalid_argument("pooled_reference_front: all fronts empty");

  const auto levels = fast_nondominated_sort(pool);
  std::vector<Objectives> out;
  for (int i : levels[0]) out.push_back(pool[i]);
  std::sort(out.begin(), out.end(),
            [](const Objectives& a, const Objectives& b) {
              if (a[0] != b[0]) return a[0] < b[0];
              return a[1] < b[1];
            });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const Objectives& a, const Objectives& b) {
                          return a == b;
                        }),
            out.end());
  return out;
}

MetricAggregate aggregate(std::vector<Scalar> per_run) {
  MetricAggregate agg;
  agg.per_run = std::move(per_run);
  agg.best = *std::min_element(agg.per_run.begin(), agg.per_run.end());
  agg.worst = *std::max_element(agg.per_run.begin(), agg.per_run.end());
  agg.average = std::accumulate(agg.per_run.begin(), agg.per_run.end(), 0.0) /
                agg.per_run.size();
  return agg;
}

MetricReport multi_run_report(const DispatchCase& cs, const RunConfig& base,
                              const std::vector<Algorithm>& algorithms,
                              int n_runs) {
  if (n_runs < 1) throw std::invalid_argument("multi_run_report: n_runs >= 1");

  MetricReport report;
  report.n_runs = n_runs;
  report.master_seed = base.seed;

  // Per-run seeds derive deterministically from the master seed.
  std::vector<std::vector<std::vector<Objectives>>> fronts(algorithms.size());
  for (std::size_t a = 0; a < algorithms.size(); ++a) {
    for (int r = 0; r < n_runs; ++r) {
      RunConfig cfg = base;
      cfg.algorithm = algorithms[a];
      cfg.seed = base.seed + 1000003ULL * static_cast<std::uint64_t>(r) +
                 static_cast<std::uint64_t>(a);
      ParetoArchive archive;
      try {
        archive = run_algorithm(cs, cfg);
      } catch (const std::exception& e) {
        throw std::runtime_error("run failed (algorithm " +
                                 to_string(algorithms[a]) + ", seed " +
                                 std::to_string(cfg.seed) + "): " + e.what());
      }
      std::vector<Objectives> front;
      for (const auto& s : archive.solutions) front.push_back(s.objectives());
      fronts[a].push_back(std::move(front));
    }
  }

  std::vector<std::vector<Objectives>> all;
  for (const auto& per_alg : fronts)
    all.insert(all.end(), per_alg.begin(), per_alg.end());
  const std::vector<Objectives> reference = pooled_reference_front(all);

  for (std::size_t a = 0; a < algorithms.size(); ++a) {
    AlgorithmMetrics row;
    row.algorithm = algorithms[a];
    std::vector<Scalar> igd_runs, spread_runs;
    for (const auto& front : fronts[a]) {
      igd_runs.push_back(igd(reference, front));
      spread_runs.push_back(
          spread(front, reference.front(), reference.back()));
    }
    row.igd = aggregate(std::move(igd_runs));
    row.spread = aggregate(std::move(spread_runs));
    report.rows.push_back(std::move(row));
  }
  return report;
}

std::string metric_report_csv(const MetricReport& report) {
  std::ostringstream out;
  out.precision(12);
  out << "algorithm,metric,average,best,worst\n";
  for (const auto& row : report.rows) {
    out << to_string(row.algorithm) << ",igd," << row.igd.average << ','
        << row.igd.best << ',' << row.igd.worst << "\n";
    out << to_string(row.algorithm) << ",spread," << row.spread.average << ','
        << row.spread.best << ',' << row.spread.worst << "\n";
  }
  return out.str();
}

}  // namespace chpeed
