#include "chpeed/optimizer/sorting.hpp"

#include <algorithm>
#include <limits>

namespace chpeed {

bool pareto_dominates(const Objectives& a, const Objectives& b) {
  return a[0] <= b[0] && a[1] <= b[1] && (a[0] < b[0] || a[1] < b[1]);
}

std::vector<std::vector<int>> fast_nondominated_sort(
    const std::vector<Objectives>& obj) {
  const int n = static_cast<int>(obj.size());
  std::vector<int> domination_count(n, 0);
  std::vector<std::vector<int>> dominated_by(n);
  std::vector<std::vector<int>> levels;

  std::vector<int> current;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (pareto_dominates(obj[i], obj[j]))
        dominated_by[i].push_back(j);
      else if (pareto_dominates(obj[j], obj[i]))
        ++domination_count[i];
    }
    if (domination_count[i] == 0) current.push_back(i);
  }

  while (!current.empty()) {
    levels.push_back(current);
    std::vector<int> next;
    for (int i : current) {
      for (int j : dominated_by[i]) {
        if (--domination_count[j] == 0) next.push_back(j);
      }
    }
    current = std::move(next);
  }
  return levels;
}

std::vector<Scalar> crowding_distance(const std::vector<Objectives>& obj,
                                      const std::vector<int>& front) {
  const int n = static_cast<int>(front.size());
  std::vector<Scalar> dist(n, 0.0);
  if (n <= 2) {
    std::fill(dist.begin(), dist.end(),
              std::numeric_limits<Scalar>::infinity());
    return dist;
  }
  for (int m = 0; m < 2; ++m) {
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      return obj[front[a]][m] < obj[front[b]][m];
    });
    dist[order.front()] = std::numeric_limits<Scalar>::infinity();
    dist[order.back()] = std::numeric_limits<Scalar>::infinity();
    const Scalar span =
        obj[front[order.back()]][m] - obj[front[order.front()]][m];
    if (span <= 0.0) continue;
    for (int k = 1; k + 1 < n; ++k) {
      dist[order[k]] +=
          (obj[front[order[k + 1]]][m] - obj[front[order[k - 1]]][m]) / span;
    }
  }
  return dist;
}

}  // namespace chpeed
