#pragma once

#include <span>
#include <vector>

// Point-based reference distances. These never touch the recurrence and are
// the ground truth the recursive centroid and joint between-within updates
// are checked against.
namespace mdendro::oracle {

using Point = std::vector<double>;

Point mean(std::span<const Point> points);

double squared_distance(const Point& a, const Point& b);

// Squared Euclidean distance between the centers of two superclusters, each
// given as its constituent clusters. Unweighted: the center is the mean of
// every member point. Weighted: the center is the plain mean of the
// constituent cluster centers, whatever their sizes.
// Throws DimensionMismatch, InvalidArgument for empty input.
double centroid_distance(const std::vector<std::vector<Point>>& clusters_i,
                         const std::vector<std::vector<Point>>& clusters_j, bool weighted);

// Joint between-within distance between two point sets with Euclidean
// distances raised to `alpha`, evaluated term by term. Throws InvalidAlpha.
double jbw_distance(std::span<const Point> points_i, std::span<const Point> points_j,
                    double alpha);

}  // namespace mdendro::oracle
