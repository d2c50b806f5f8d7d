#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "mdendro/proximity.hpp"

namespace mdendro {

enum class Method {
  single,
  complete,
  unweighted_average,
  weighted_average,
  unweighted_centroid,
  weighted_centroid,
  joint_between_within,
};

inline constexpr Method kAllMethods[] = {
    Method::single,           Method::complete,           Method::unweighted_average,
    Method::weighted_average, Method::unweighted_centroid, Method::weighted_centroid,
    Method::joint_between_within,
};

std::string_view to_string(Method method) noexcept;
std::optional<Method> parse_method(std::string_view name) noexcept;

// A linkage strategy. `alpha` is the power of Euclidean distance the
// joint between-within method is defined for; it is carried for bookkeeping
// and does not enter the recurrence.
struct MethodSpec {
  Method kind = Method::unweighted_average;
  std::optional<double> alpha;

  static constexpr double kDefaultAlpha = 1.0;

  static MethodSpec of(Method kind);
  static MethodSpec joint_between_within(double alpha = kDefaultAlpha);

  // Throws InvalidAlpha unless alpha is present exactly for joint
  // between-within and lies in (0, 2].
  void validate() const;

  friend bool operator==(const MethodSpec&, const MethodSpec&) = default;
};

// Small dense row-major matrix of distances between constituent clusters.
class DistanceBlock {
 public:
  DistanceBlock() = default;
  DistanceBlock(std::size_t rows, std::size_t cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// Everything the variable-group recurrence needs to merge the clusters
// indexed by I into X_I and those indexed by J into X_J. Entries left NaN
// count as missing. Only the upper triangles of the within blocks are read.
struct BlockView {
  std::vector<std::size_t> sizes_i;
  std::vector<std::size_t> sizes_j;
  DistanceBlock within_i;  // |I| x |I|
  DistanceBlock within_j;  // |J| x |J|
  DistanceBlock cross;     // |I| x |J|

  BlockView() = default;
  BlockView(std::vector<std::size_t> sizes_i, std::vector<std::size_t> sizes_j);

  // Roles of I and J exchanged.
  BlockView swapped() const;
};

// Coefficients of the generalized recurrence for one (I, J) pair. Every
// coefficient is stored as a numerator over the row's common denominator so
// that the sum can be formed before a single division.
class VGParams {
 public:
  VGParams(Method method, std::span<const std::size_t> sizes_i,
           std::span<const std::size_t> sizes_j);

  double alpha(std::size_t i, std::size_t j) const;
  double beta_i(std::size_t i, std::size_t i2) const;
  double beta_j(std::size_t j, std::size_t j2) const;
  double gamma(std::size_t i, std::size_t j) const;
  // 0 selects the D_min term (single), 1 the D_max term (complete); absent
  // for methods whose gamma vanishes.
  std::optional<int> delta() const noexcept { return delta_; }

  double alpha_numerator(std::size_t i, std::size_t j) const;
  double beta_i_numerator(std::size_t i, std::size_t i2) const;
  double beta_j_numerator(std::size_t j, std::size_t j2) const;
  double gamma_numerator(std::size_t i, std::size_t j) const;
  double denominator() const noexcept { return denominator_; }

 private:
  Method method_;
  std::vector<double> ni_;
  std::vector<double> nj_;
  double total_i_ = 0.0;
  double total_j_ = 0.0;
  double p_ = 0.0;
  double q_ = 0.0;
  double denominator_ = 1.0;
  std::optional<int> delta_;
};

// Lance-Williams coefficients for merging X_i and X_i' and measuring the
// result against X_j.
struct PGParams {
  double alpha_i;
  double alpha_i2;
  double beta;
  double gamma;
};

PGParams pg_params(Method method, std::size_t size_i, std::size_t size_i2, std::size_t size_j);

// D(X_I, X_J) through the generalized recurrence. Throws MissingDistance when
// any needed entry is NaN or a block has the wrong shape, InvalidAlpha for a
// bad spec. With |I| = |J| = 1 the cross distance is returned unchanged.
double vg_distance(const MethodSpec& method, const BlockView& blocks);

// Classical pair-group update D(X_i u X_i', X_j).
double pg_distance(const MethodSpec& method, std::size_t size_i, std::size_t size_i2,
                   std::size_t size_j, double d_ii2, double d_ij, double d_i2j);

// Non-recursive distance between two sets of individuals read straight from
// the individual-level matrix. Supported: single, complete, unweighted
// average and joint between-within (the matrix must then hold ||x - y||^alpha).
// Throws UnsupportedMethod for the weighted and centroid variants.
double direct_distance(const MethodSpec& method, const ProximityMatrix& individuals,
                       std::span<const std::size_t> side_i, std::span<const std::size_t> side_j);

}  // namespace mdendro
