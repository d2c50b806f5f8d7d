#include "mdendro/oracle.hpp"

#include <cmath>

#include "mdendro/error.hpp"

namespace mdendro::oracle {

namespace {

void check_dimension(const Point& a, const Point& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::dimension_mismatch, "points of dimension " + std::to_string(a.size()) +
                                                   " and " + std::to_string(b.size()));
  }
}

Point center(const std::vector<std::vector<Point>>& clusters, bool weighted) {
  if (clusters.empty()) throw Error(ErrorCode::invalid_argument, "supercluster without clusters");
  if (weighted) {
    std::vector<Point> centers;
    centers.reserve(clusters.size());
    for (const auto& c : clusters) centers.push_back(mean(c));
    return mean(centers);
  }
  std::vector<Point> all;
  for (const auto& c : clusters) all.insert(all.end(), c.begin(), c.end());
  return mean(all);
}

}  // namespace

Point mean(std::span<const Point> points) {
  if (points.empty()) throw Error(ErrorCode::invalid_argument, "mean of no points");
  Point out(points.front().size(), 0.0);
  for (const auto& p : points) {
    check_dimension(out, p);
    for (std::size_t k = 0; k < p.size(); ++k) out[k] += p[k];
  }
  for (double& v : out) v /= static_cast<double>(points.size());
  return out;
}

double squared_distance(const Point& a, const Point& b) {
  check_dimension(a, b);
  double sum = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) sum += (a[k] - b[k]) * (a[k] - b[k]);
  return sum;
}

double centroid_distance(const std::vector<std::vector<Point>>& clusters_i,
                         const std::vector<std::vector<Point>>& clusters_j, bool weighted) {
  return squared_distance(center(clusters_i, weighted), center(clusters_j, weighted));
}

double jbw_distance(std::span<const Point> points_i, std::span<const Point> points_j,
                    double alpha) {
  if (!(alpha > 0.0 && alpha <= 2.0)) {
    throw Error(ErrorCode::invalid_alpha, "alpha must lie in (0, 2]");
  }
  if (points_i.empty() || points_j.empty()) {
    throw Error(ErrorCode::invalid_argument, "joint between-within of an empty set");
  }
  auto powered_sum = [alpha](std::span<const Point> a, std::span<const Point> b) {
    double sum = 0.0;
    for (const auto& x : a) {
      for (const auto& y : b) sum += std::pow(std::sqrt(squared_distance(x, y)), alpha);
    }
    return sum;
  };
  const double ni = static_cast<double>(points_i.size());
  const double nj = static_cast<double>(points_j.size());
  return ni * nj / (ni + nj) *
         (2.0 / (ni * nj) * powered_sum(points_i, points_j) -
          powered_sum(points_i, points_i) / (ni * ni) - powered_sum(points_j, points_j) / (nj * nj));
}

}  // namespace mdendro::oracle
