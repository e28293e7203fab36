#ifndef CHPEED_METRICS_INDICATORS_HPP
#define CHPEED_METRICS_INDICATORS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "chpeed/casedata/run_config.hpp"
#include "chpeed/model/units.hpp"
#include "chpeed/types.hpp"

namespace chpeed {

// Mean Euclidean distance from each reference point to its nearest front
// member, in raw objective units. Throws on an empty set.
Scalar igd(const std::vector<Objectives>& reference,
           const std::vector<Objectives>& front);

// Gap-uniformity indicator over a front sorted by first objective:
// (d1 + d2 + sum |gap_i - mean|) / (d1 + d2 + (N-1) * mean), where d1/d2
// are distances from the front's boundary points to the supplied extremes.
// All points identical gives 0.
Scalar spread(const std::vector<Objectives>& front,
              const Objectives& extreme_low, const Objectives& extreme_high);

// Nondominated subset of the union of all supplied fronts, sorted by first
// objective (deterministic).
std::vector<Objectives> pooled_reference_front(
    const std::vector<std::vector<Objectives>>& fronts);

// Aggregates of one algorithm over repeated runs; best = min, worst = max
// (both indicators are minimized).
struct MetricAggregate {
  std::vector<Scalar> per_run;
  Scalar average = 0.0, best = 0.0, worst = 0.0;
};
MetricAggregate aggregate(std::vector<Scalar> per_run);

struct AlgorithmMetrics {
  Algorithm algorithm;
  MetricAggregate igd;
  MetricAggregate spread;
};

struct MetricReport {
  std::vector<AlgorithmMetrics> rows;
  int n_runs = 0;
  std::uint64_t master_seed = 0;
};

// Runs every algorithm n_runs times with seeds derived from the master
// seed, pools the reference front over all runs of all algorithms, and
// aggregates IGD/Spread per algorithm. Spread extremes are the pooled
// front's boundary points.
MetricReport multi_run_report(const DispatchCase& cs, const RunConfig& base,
                              const std::vector<Algorithm>& algorithms,
                              int n_runs);

std::string metric_report_csv(const MetricReport& report);

}  // namespace chpeed

#endif
