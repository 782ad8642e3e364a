#pragma once

#include <optional>
#include <vector>

#include "nlgg/rational.hpp"

namespace nlgg {

// Exact-rational phase-1 simplex for the feasibility system
//   A x = b,  x >= 0.
// Bland's rule throughout, so it terminates. Returns a basic feasible
// solution or nullopt when the system is infeasible.
inline std::optional<std::vector<Rat>> solve_equality_feasibility(
    std::vector<std::vector<Rat>> a, std::vector<Rat> b) {
  const int m = static_cast<int>(a.size());
  const int n = m == 0 ? 0 : static_cast<int>(a[0].size());
  if (m == 0) return std::vector<Rat>(n, Rat(0));

  for (int i = 0; i < m; ++i)
    if (b[i] < 0) {
      for (auto &v : a[i]) v = -v;
      b[i] = -b[i];
    }

  // Tableau columns: n structural + m artificial, last column = rhs.
  const int cols = n + m;
  std::vector<std::vector<Rat>> t(m, std::vector<Rat>(cols + 1, Rat(0)));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) t[i][j] = a[i][j];
    t[i][n + i] = 1;
    t[i][cols] = b[i];
  }
  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) basis[i] = n + i;

  // Phase-1 objective: minimize the sum of artificials. Reduced cost is
  // c_j minus the column sum over constraint rows (c_j = 1 on artificials,
  // which are basic and so start at reduced cost zero).
  std::vector<Rat> cost(cols + 1, Rat(0));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= cols; ++j) cost[j] -= t[i][j];
  for (int i = 0; i < m; ++i) cost[n + i] += 1;

  while (true) {
    int enter = -1;
    for (int j = 0; j < cols; ++j)
      if (cost[j] < 0) {
        enter = j;
        break;
      }
    if (enter == -1) break;

    int leave = -1;
    Rat best_ratio;
    for (int i = 0; i < m; ++i) {
      if (t[i][enter] <= 0) continue;
      Rat ratio = t[i][cols] / t[i][enter];
      if (leave == -1 || ratio < best_ratio ||
          (ratio == best_ratio && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave == -1) return std::nullopt;  // unbounded phase 1: cannot happen

    Rat piv = t[leave][enter];
    for (int j = 0; j <= cols; ++j) t[leave][j] /= piv;
    for (int i = 0; i < m; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      Rat f = t[i][enter];
      for (int j = 0; j <= cols; ++j) t[i][j] -= f * t[leave][j];
    }
    {
      Rat f = cost[enter];
      if (f != 0)
        for (int j = 0; j <= cols; ++j) cost[j] -= f * t[leave][j];
    }
    basis[leave] = enter;
  }

  // Feasible iff all artificials vanished: objective value is -cost[rhs].
  if (cost[cols] != 0) return std::nullopt;
  std::vector<Rat> x(n, Rat(0));
  for (int i = 0; i < m; ++i)
    if (basis[i] < n) x[basis[i]] = t[i][cols];
  return x;
}

}  // namespace nlgg
