#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "mdendro/oracle.hpp"
#include "mdendro/proximity.hpp"

namespace testutil {

inline mdendro::ProximityMatrix toy() {
  return mdendro::ProximityMatrix::from_condensed(4, {2, 4, 7, 2, 5, 3}, 0);
}

inline const char* toy_square() {
  return "x1 x2 x3 x4\n"
         "0 2 4 7\n"
         "2 0 2 5\n"
         "4 2 0 3\n"
         "7 5 3 0\n";
}

inline bool close(double a, double b, double rel = 1e-9) {
  return std::fabs(a - b) <= rel * std::max({1.0, std::fabs(a), std::fabs(b)});
}

inline std::vector<mdendro::oracle::Point> random_points(std::mt19937_64& rng, std::size_t n,
                                                         std::size_t dim) {
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  std::vector<mdendro::oracle::Point> pts(n, mdendro::oracle::Point(dim));
  for (auto& p : pts)
    for (auto& x : p) x = u(rng);
  return pts;
}

// Condensed matrix of f(x_i, x_j).
template <class F>
mdendro::ProximityMatrix matrix_of(const std::vector<mdendro::oracle::Point>& pts, F f) {
  std::vector<double> v;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) v.push_back(f(pts[i], pts[j]));
  return mdendro::ProximityMatrix::from_condensed(pts.size(), std::move(v));
}

inline mdendro::ProximityMatrix random_continuous(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.5, 100.0);
  std::vector<double> v(n * (n - 1) / 2);
  for (auto& x : v) x = u(rng);
  return mdendro::ProximityMatrix::from_condensed(n, std::move(v));
}

inline mdendro::ProximityMatrix random_integer(std::mt19937_64& rng, std::size_t n, int hi) {
  std::uniform_int_distribution<int> u(1, hi);
  std::vector<double> v(n * (n - 1) / 2);
  for (auto& x : v) x = u(rng);
  return mdendro::ProximityMatrix::from_condensed(n, std::move(v), 0);
}

inline std::vector<std::size_t> shuffled(std::mt19937_64& rng, std::size_t n) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::shuffle(order.begin(), order.end(), rng);
  return order;
}

}  // namespace testutil
