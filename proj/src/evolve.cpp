#include "chpeed/optimizer/evolve.hpp"

#include <algorithm>
#include <cmath>

#include "chpeed/optimizer/sorting.hpp"

namespace chpeed {

namespace {

constexpr Scalar kPenaltyWeight = 1e6;

Scalar residual_sum(const DispatchSolution& sol) {
  const auto& r = sol.report;
  return r.power_balance_mw + r.heat_balance_mwth + r.bound_violation +
         r.for_violation;
}

Individual make_individual(const Encoding& enc, Vec genes) {
  Individual ind;
  ind.sol = enc.decode(genes);
  ind.genes = std::move(genes);
  ind.penalty =
      ind.sol.report.feasible() ? 0.0 : kPenaltyWeight * residual_sum(ind.sol);
  return ind;
}

// SBX on one gene pair.
void sbx_gene(Scalar& x1, Scalar& x2, Scalar lo, Scalar hi, Scalar eta,
              Rng& rng) {
  std::uniform_real_distribution<Scalar> uni(0.0, 1.0);
  if (std::abs(x1 - x2) < 1e-14) return;
  Scalar y1 = std::min(x1, x2), y2 = std::max(x1, x2);
  const Scalar u = uni(rng);
  auto child = [&](Scalar beta_bound, bool low_child) {
    const Scalar alpha = 2.0 - std::pow(beta_bound, -(eta + 1.0));
    Scalar betaq;
    if (u <= 1.0 / alpha)
      betaq = std::pow(u * alpha, 1.0 / (eta + 1.0));
    else
      betaq = std::pow(1.0 / (2.0 - u * alpha), 1.0 / (eta + 1.0));
    const Scalar c = low_child ? 0.5 * (y1 + y2 - betaq * (y2 - y1))
                               : 0.5 * (y1 + y2 + betaq * (y2 - y1));
    return std::clamp(c, lo, hi);
  };
  const Scalar beta1 = 1.0 + 2.0 * (y1 - lo) / (y2 - y1);
  const Scalar beta2 = 1.0 + 2.0 * (hi - y2) / (y2 - y1);
  const Scalar c1 = child(beta1, true);
  const Scalar c2 = child(beta2, false);
  if (uni(rng) < 0.5) {
    x1 = c1;
    x2 = c2;
  } else {
    x1 = c2;
    x2 = c1;
  }
}

void polynomial_mutation(Vec& genes, const Vec& lo, const Vec& hi, Scalar prob,
                         Scalar eta, Rng& rng) {
  std::uniform_real_distribution<Scalar> uni(0.0, 1.0);
  for (int i = 0; i < genes.size(); ++i) {
    if (uni(rng) >= prob) continue;
    const Scalar span = hi[i] - lo[i];
    if (span <= 0.0) continue;
    const Scalar y = genes[i];
    const Scalar d1 = (y - lo[i]) / span;
    const Scalar d2 = (hi[i] - y) / span;
    const Scalar u = uni(rng);
    const Scalar mut_pow = 1.0 / (eta + 1.0);
    Scalar deltaq;
    if (u < 0.5) {
      const Scalar xy = 1.0 - d1;
      const Scalar val = 2.0 * u + (1.0 - 2.0 * u) * std::pow(xy, eta + 1.0);
      deltaq = std::pow(val, mut_pow) - 1.0;
    } else {
      const Scalar xy = 1.0 - d2;
      const Scalar val =
          2.0 * (1.0 - u) + 2.0 * (u - 0.5) * std::pow(xy, eta + 1.0);
      deltaq = 1.0 - std::pow(val, mut_pow);
    }
    genes[i] = std::clamp(y + deltaq * span, lo[i], hi[i]);
  }
}

// Feasible-first comparison, then algorithm-specific fitness. Theta-fitness
// values only order solutions of the same cluster (Definition-1 semantics);
// a cross-cluster pair has no theta-order, so the first pick stands, which
// is a uniform choice because both contestants are drawn uniformly.
bool tournament_better(const Individual& a, const Individual& b,
                       bool nsga2) {
  if (a.penalty != b.penalty) return a.penalty < b.penalty;
  if (nsga2) {
    if (a.rank != b.rank) return a.rank < b.rank;
    return a.crowding > b.crowding;
  }
  if (a.cluster != b.cluster) return true;
  return a.upsilon < b.upsilon;
}

}  // namespace

std::vector<Individual> vary(const std::vector<Individual>& parents,
                             const Encoding& enc, Rng& rng,
                             const VariationParams& params,
                             bool nsga2_tournament) {
  const int n = static_cast<int>(parents.size());
  if (n < 2 || n % 2 != 0)
    throw std::invalid_argument("vary: parent count must be even and >= 2");
  std::uniform_int_distribution<int> pick(0, n - 1);
  std::uniform_real_distribution<Scalar> uni(0.0, 1.0);
  const Scalar mut_prob = params.mutation_prob < 0.0
                              ? 1.0 / enc.n_genes()
                              : params.mutation_prob;

  auto select = [&]() -> const Individual& {
    const Individual& a = parents[pick(rng)];
    const Individual& b = parents[pick(rng)];
    return tournament_better(a, b, nsga2_tournament) ? a : b;
  };

  std::vector<Individual> offspring;
  offspring.reserve(n);
  for (int pair = 0; pair < n / 2; ++pair) {
    Vec c1 = select().genes;
    Vec c2 = select().genes;
    if (uni(rng) < params.crossover_prob) {
      for (int g = 0; g < c1.size(); ++g) {
        if (uni(rng) < 0.5)
          sbx_gene(c1[g], c2[g], enc.lower()[g], enc.upper()[g],
                   params.crossover_index, rng);
      }
    }
    polynomial_mutation(c1, enc.lower(), enc.upper(), mut_prob,
                        params.mutation_index, rng);
    polynomial_mutation(c2, enc.lower(), enc.upper(), mut_prob,
                        params.mutation_index, rng);
    offspring.push_back(make_individual(enc, std::move(c1)));
    offspring.push_back(make_individual(enc, std::move(c2)));
  }
  return offspring;
}

std::vector<Individual> environmental_selection(
    std::vector<Individual> combined, const Mat& refs, Scalar theta,
    int target_size, NormalizationAnchors& anchors, Rng& rng) {
  if (static_cast<int>(combined.size()) < target_size)
    throw std::invalid_argument("environmental_selection: too few candidates");

  std::vector<Objectives> obj;
  obj.reserve(combined.size());
  for (const auto& ind : combined) obj.push_back(ind.selection_objectives());

  // Steps 6: S = union of Pareto levels until |S| >= N.
  const auto levels = fast_nondominated_sort(obj);
  std::vector<int> s_members;
  for (const auto& level : levels) {
    s_members.insert(s_members.end(), level.begin(), level.end());
    if (static_cast<int>(s_members.size()) >= target_size) break;
  }

  // Anchors: the ideal absorbs everything seen; the nadir tracks the first
  // nondominated level's per-objective maxima.
  for (const auto& f : obj) anchors.absorb_ideal(f);
  Objectives nadir = obj[levels[0][0]];
  for (int i : levels[0]) nadir = nadir.cwiseMax(obj[i]);
  anchors.set_nadir(nadir);

  // Step 7: normalize S and cluster it to the reference lines.
  Mat normalized(static_cast<int>(s_members.size()), 2);
  for (int r = 0; r < normalized.rows(); ++r)
    normalized.row(r) = normalize(obj[s_members[r]], anchors);
  const std::vector<int> assignment = cluster_to_reference(normalized, refs);

  for (int r = 0; r < normalized.rows(); ++r) {
    Individual& ind = combined[s_members[r]];
    ind.cluster = assignment[r];
    ind.upsilon =
        theta_fitness(normalized.row(r), refs.row(assignment[r]), theta);
  }

  // Step 8: theta-nondominated sorting. Dominance only acts within a
  // cluster, so the i-th theta-level holds every solution with exactly i
  // strictly-better cluster mates.
  std::vector<std::vector<int>> theta_levels;
  for (std::size_t a = 0; a < s_members.size(); ++a) {
    int depth = 0;
    for (std::size_t b = 0; b < s_members.size(); ++b) {
      if (a == b) continue;
      const Individual& x = combined[s_members[a]];
      const Individual& y = combined[s_members[b]];
      if (theta_dominates(y.cluster, y.upsilon, x.cluster, x.upsilon)) ++depth;
    }
    if (depth >= static_cast<int>(theta_levels.size()))
      theta_levels.resize(depth + 1);
    theta_levels[depth].push_back(s_members[a]);
  }

  // Steps 9-13: whole levels first, then a seeded shuffle of the boundary.
  std::vector<Individual> next;
  next.reserve(target_size);
  for (auto& level : theta_levels) {
    if (static_cast<int>(next.size() + level.size()) <= target_size) {
      for (int i : level) next.push_back(combined[i]);
      if (static_cast<int>(next.size()) == target_size) break;
    } else {
      std::shuffle(level.begin(), level.end(), rng);
      for (int i : level) {
        if (static_cast<int>(next.size()) == target_size) break;
        next.push_back(combined[i]);
      }
      break;
    }
  }
  return next;
}

std::vector<Individual> nsga2_selection(std::vector<Individual> combined,
                                        int target_size) {
  std::vector<Objectives> obj;
  obj.reserve(combined.size());
  for (const auto& ind : combined) obj.push_back(ind.selection_objectives());
  const auto levels = fast_nondominated_sort(obj);

  std::vector<Individual> next;
  next.reserve(target_size);
  for (std::size_t rank = 0; rank < levels.size(); ++rank) {
    const auto& level = levels[rank];
    const auto dist = crowding_distance(obj, level);
    for (std::size_t i = 0; i < level.size(); ++i) {
      combined[level[i]].rank = static_cast<int>(rank);
      combined[level[i]].crowding = dist[i];
    }
    if (static_cast<int>(next.size() + level.size()) <= target_size) {
      for (int i : level) next.push_back(combined[i]);
    } else {
      std::vector<int> order(level.size());
      for (std::size_t i = 0; i < level.size(); ++i)
        order[i] = static_cast<int>(i);
      std::sort(order.begin(), order.end(),
                [&](int a, int b) { return dist[a] > dist[b]; });
      for (int k : order) {
        if (static_cast<int>(next.size()) == target_size) break;
        next.push_back(combined[level[k]]);
      }
    }
    if (static_cast<int>(next.size()) == target_size) break;
  }
  return next;
}

namespace {

std::vector<Individual> initial_population(const Encoding& enc, int size,
                                           Rng& rng) {
  std::uniform_real_distribution<Scalar> uni(0.0, 1.0);
  std::vector<Individual> pop;
  pop.reserve(size);
  for (int i = 0; i < size; ++i) {
    Vec genes(enc.n_genes());
    for (int g = 0; g < genes.size(); ++g)
      genes[g] = enc.lower()[g] + uni(rng) * (enc.upper()[g] - enc.lower()[g]);
    pop.push_back(make_individual(enc, std::move(genes)));
  }
  return pop;
}

ParetoArchive finalize(const std::vector<Individual>& pop,
                       const NormalizationAnchors& anchors, int iterations) {
  std::vector<const Individual*> feasible;
  for (const auto& ind : pop)
    if (ind.sol.report.feasible()) feasible.push_back(&ind);
  if (feasible.empty())
    throw InfeasibleCaseError("run produced no feasible solution");

  std::vector<Objectives> obj;
  obj.reserve(feasible.size());
  for (const auto* ind : feasible) obj.push_back(ind->sol.objectives());
  const auto levels = fast_nondominated_sort(obj);

  ParetoArchive archive;
  archive.anchors = anchors;
  archive.iterations = iterations;
  for (int i : levels[0]) archive.solutions.push_back(feasible[i]->sol);
  std::sort(archive.solutions.begin(), archive.solutions.end(),
            [](const DispatchSolution& a, const DispatchSolution& b) {
              if (a.cost != b.cost) return a.cost < b.cost;
              return a.emission < b.emission;
            });
  // Duplicate objective pairs add nothing to the front.
  archive.solutions.erase(
      std::unique(archive.solutions.begin(), archive.solutions.end(),
                  [](const DispatchSolution& a, const DispatchSolution& b) {
                    return a.cost == b.cost && a.emission == b.emission;
                  }),
      archive.solutions.end());
  return archive;
}

ParetoArchive run_impl(const DispatchCase& cs, const RunConfig& config,
                       bool use_theta, int interval,
                       const DispatchSolution* prev_point) {
  config.validate();
  cs.validate();
  const Encoding enc(cs, interval, prev_point);
  enc.diagnose_feasibility();

  Rng rng(config.seed);
  const int n = config.population_size;
  const Mat refs = das_dennis_points(config.effective_divisions(), 2);

  NormalizationAnchors anchors;
  std::vector<Individual> pop = initial_population(enc, n, rng);

  if (use_theta) {
    // Seed cluster/upsilon so the first tournament has theta-fitness.
    pop = environmental_selection(std::move(pop), refs, config.theta, n,
                                  anchors, rng);
  } else {
    pop = nsga2_selection(std::move(pop), n);
  }

  for (int iter = 0; iter < config.max_iterations; ++iter) {
    std::vector<Individual> offspring =
        vary(pop, enc, rng, {}, /*nsga2_tournament=*/!use_theta);
    std::vector<Individual> combined = std::move(pop);
    combined.insert(combined.end(),
                    std::make_move_iterator(offspring.begin()),
                    std::make_move_iterator(offspring.end()));
    if (use_theta)
      pop = environmental_selection(std::move(combined), refs, config.theta,
                                    n, anchors, rng);
    else
      pop = nsga2_selection(std::move(combined), n);
  }
  return finalize(pop, anchors, config.max_iterations);
}

}  // namespace

ParetoArchive run_theta_dea(const DispatchCase& cs, const RunConfig& config,
                            int interval, const DispatchSolution* prev_point) {
  return run_impl(cs, config, true, interval, prev_point);
}

ParetoArchive run_nsga2(const DispatchCase& cs, const RunConfig& config,
                        int interval, const DispatchSolution* prev_point) {
  return run_impl(cs, config, false, interval, prev_point);
}

ParetoArchive run_algorithm(const DispatchCase& cs, const RunConfig& config,
                            int interval, const DispatchSolution* prev_point) {
  return config.algorithm == Algorithm::kThetaDea
             ? run_theta_dea(cs, config, interval, prev_point)
             : run_nsga2(cs, config, interval, prev_point);
}

}  // namespace chpeed
