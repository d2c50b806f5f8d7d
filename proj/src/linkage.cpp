#include "mdendro/linkage.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "mdendro/decimal.hpp"
#include "mdendro/error.hpp"

namespace mdendro {

namespace {

void require_complete(const DistanceBlock& block, std::size_t rows, std::size_t cols,
                      bool upper_only, const char* name) {
  if (block.rows() != rows || block.cols() != cols) {
    throw Error(ErrorCode::missing_distance,
                std::string(name) + " block is " + std::to_string(block.rows()) + "x" +
                    std::to_string(block.cols()) + ", expected " + std::to_string(rows) +
                    "x" + std::to_string(cols));
  }
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = upper_only ? r + 1 : 0; c < cols; ++c) {
      if (std::isnan(block(r, c))) {
        throw Error(ErrorCode::missing_distance, std::string(name) + " distance (" +
                                                     std::to_string(r) + "," +
                                                     std::to_string(c) + ") is missing");
      }
    }
  }
}

double total(const std::vector<double>& sizes) {
  return std::accumulate(sizes.begin(), sizes.end(), 0.0);
}

std::vector<double> as_real(std::span<const std::size_t> sizes) {
  for (std::size_t s : sizes) {
    if (s == 0) throw Error(ErrorCode::invalid_argument, "cluster sizes must be at least 1");
  }
  return {sizes.begin(), sizes.end()};
}

}  // namespace

std::string_view to_string(Method method) noexcept {
  switch (method) {
    case Method::single: return "single";
    case Method::complete: return "complete";
    case Method::unweighted_average: return "unweighted_average";
    case Method::weighted_average: return "weighted_average";
    case Method::unweighted_centroid: return "unweighted_centroid";
    case Method::weighted_centroid: return "weighted_centroid";
    case Method::joint_between_within: return "joint_between_within";
  }
  return "unknown";
}

std::optional<Method> parse_method(std::string_view name) noexcept {
  std::string key(name);
  std::replace(key.begin(), key.end(), '-', '_');
  for (Method m : kAllMethods) {
    if (key == to_string(m)) return m;
  }
  if (key == "upgma" || key == "average") return Method::unweighted_average;
  if (key == "wpgma") return Method::weighted_average;
  if (key == "centroid" || key == "upgmc") return Method::unweighted_centroid;
  if (key == "median" || key == "wpgmc") return Method::weighted_centroid;
  if (key == "jbw") return Method::joint_between_within;
  return std::nullopt;
}

MethodSpec MethodSpec::of(Method kind) {
  MethodSpec spec{kind, std::nullopt};
  if (kind == Method::joint_between_within) spec.alpha = kDefaultAlpha;
  return spec;
}

MethodSpec MethodSpec::joint_between_within(double alpha) {
  MethodSpec spec{Method::joint_between_within, alpha};
  spec.validate();
  return spec;
}

void MethodSpec::validate() const {
  if (kind == Method::joint_between_within) {
    if (!alpha || !(*alpha > 0.0 && *alpha <= 2.0)) {
      throw Error(ErrorCode::invalid_alpha,
                  "joint between-within needs alpha in (0, 2], got " +
                      (alpha ? decimal::shortest(*alpha) : std::string("none")));
    }
  } else if (alpha) {
    throw Error(ErrorCode::invalid_alpha,
                "alpha only applies to joint_between_within, not " +
                    std::string(to_string(kind)));
  }
}

DistanceBlock::DistanceBlock(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, std::numeric_limits<double>::quiet_NaN()) {}

BlockView::BlockView(std::vector<std::size_t> si, std::vector<std::size_t> sj)
    : sizes_i(std::move(si)),
      sizes_j(std::move(sj)),
      within_i(sizes_i.size(), sizes_i.size()),
      within_j(sizes_j.size(), sizes_j.size()),
      cross(sizes_i.size(), sizes_j.size()) {}

BlockView BlockView::swapped() const {
  BlockView out(sizes_j, sizes_i);
  out.within_i = within_j;
  out.within_j = within_i;
  for (std::size_t i = 0; i < cross.rows(); ++i) {
    for (std::size_t j = 0; j < cross.cols(); ++j) out.cross(j, i) = cross(i, j);
  }
  return out;
}

VGParams::VGParams(Method method, std::span<const std::size_t> sizes_i,
                   std::span<const std::size_t> sizes_j)
    : method_(method), ni_(as_real(sizes_i)), nj_(as_real(sizes_j)) {
  if (ni_.empty() || nj_.empty()) {
    throw Error(ErrorCode::invalid_argument, "both superclusters need at least one cluster");
  }
  total_i_ = total(ni_);
  total_j_ = total(nj_);
  p_ = static_cast<double>(ni_.size());
  q_ = static_cast<double>(nj_.size());
  switch (method_) {
    case Method::single:
      denominator_ = p_ * q_;
      delta_ = 0;
      break;
    case Method::complete:
      denominator_ = p_ * q_;
      delta_ = 1;
      break;
    case Method::unweighted_average:
      denominator_ = total_i_ * total_j_;
      break;
    case Method::weighted_average:
      denominator_ = p_ * q_;
      break;
    case Method::unweighted_centroid:
      denominator_ = total_i_ * total_i_ * total_j_ * total_j_;
      break;
    case Method::weighted_centroid:
      denominator_ = p_ * p_ * q_ * q_;
      break;
    case Method::joint_between_within:
      denominator_ = total_i_ * total_j_ * (total_i_ + total_j_);
      break;
  }
}

double VGParams::alpha_numerator(std::size_t i, std::size_t j) const {
  switch (method_) {
    case Method::single:
    case Method::complete:
    case Method::weighted_average:
      return 1.0;
    case Method::unweighted_average:
      return ni_[i] * nj_[j];
    case Method::unweighted_centroid:
      return ni_[i] * nj_[j] * total_i_ * total_j_;
    case Method::weighted_centroid:
      return p_ * q_;
    case Method::joint_between_within:
      return (ni_[i] + nj_[j]) * total_i_ * total_j_;
  }
  return 0.0;
}

double VGParams::beta_i_numerator(std::size_t i, std::size_t i2) const {
  switch (method_) {
    case Method::unweighted_centroid:
      return -ni_[i] * ni_[i2] * total_j_ * total_j_;
    case Method::weighted_centroid:
      return -q_ * q_;
    case Method::joint_between_within:
      return -total_j_ * total_j_ * (ni_[i] + ni_[i2]);
    default:
      return 0.0;
  }
}

double VGParams::beta_j_numerator(std::size_t j, std::size_t j2) const {
  switch (method_) {
    case Method::unweighted_centroid:
      return -nj_[j] * nj_[j2] * total_i_ * total_i_;
    case Method::weighted_centroid:
      return -p_ * p_;
    case Method::joint_between_within:
      return -total_i_ * total_i_ * (nj_[j] + nj_[j2]);
    default:
      return 0.0;
  }
}

double VGParams::gamma_numerator(std::size_t, std::size_t) const {
  return delta_ ? 1.0 : 0.0;
}

double VGParams::alpha(std::size_t i, std::size_t j) const {
  return alpha_numerator(i, j) / denominator_;
}
double VGParams::beta_i(std::size_t i, std::size_t i2) const {
  return beta_i_numerator(i, i2) / denominator_;
}
double VGParams::beta_j(std::size_t j, std::size_t j2) const {
  return beta_j_numerator(j, j2) / denominator_;
}
double VGParams::gamma(std::size_t i, std::size_t j) const {
  return gamma_numerator(i, j) / denominator_;
}

PGParams pg_params(Method method, std::size_t size_i, std::size_t size_i2, std::size_t size_j) {
  if (size_i == 0 || size_i2 == 0 || size_j == 0) {
    throw Error(ErrorCode::invalid_argument, "cluster sizes must be at least 1");
  }
  const double ni = static_cast<double>(size_i);
  const double ni2 = static_cast<double>(size_i2);
  const double nj = static_cast<double>(size_j);
  switch (method) {
    case Method::single: return {0.5, 0.5, 0.0, -0.5};
    case Method::complete: return {0.5, 0.5, 0.0, 0.5};
    case Method::unweighted_average: return {ni / (ni + ni2), ni2 / (ni + ni2), 0.0, 0.0};
    case Method::weighted_average: return {0.5, 0.5, 0.0, 0.0};
    case Method::unweighted_centroid: {
      const double s = ni + ni2;
      return {ni / s, ni2 / s, -(ni * ni2) / (s * s), 0.0};
    }
    case Method::weighted_centroid: return {0.5, 0.5, -0.25, 0.0};
    case Method::joint_between_within: {
      const double t = ni + ni2 + nj;
      return {(ni + nj) / t, (ni2 + nj) / t, -nj / t, 0.0};
    }
  }
  return {0.0, 0.0, 0.0, 0.0};
}

double vg_distance(const MethodSpec& method, const BlockView& blocks) {
  method.validate();
  const std::size_t p = blocks.sizes_i.size();
  const std::size_t q = blocks.sizes_j.size();
  require_complete(blocks.cross, p, q, false, "cross");
  require_complete(blocks.within_i, p, p, true, "I-side");
  require_complete(blocks.within_j, q, q, true, "J-side");

  const VGParams params(method.kind, blocks.sizes_i, blocks.sizes_j);
  if (p == 1 && q == 1) return blocks.cross(0, 0);

  double numerator = 0.0;
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < q; ++j) numerator += params.alpha_numerator(i, j) * blocks.cross(i, j);
  }
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t i2 = i + 1; i2 < p; ++i2) {
      numerator += params.beta_i_numerator(i, i2) * blocks.within_i(i, i2);
    }
  }
  for (std::size_t j = 0; j < q; ++j) {
    for (std::size_t j2 = j + 1; j2 < q; ++j2) {
      numerator += params.beta_j_numerator(j, j2) * blocks.within_j(j, j2);
    }
  }
  if (const auto delta = params.delta()) {
    double lo = blocks.cross(0, 0);
    double hi = lo;
    for (std::size_t i = 0; i < p; ++i) {
      for (std::size_t j = 0; j < q; ++j) {
        lo = std::min(lo, blocks.cross(i, j));
        hi = std::max(hi, blocks.cross(i, j));
      }
    }
    for (std::size_t i = 0; i < p; ++i) {
      for (std::size_t j = 0; j < q; ++j) {
        const double d = blocks.cross(i, j);
        if (*delta == 1) {
          numerator += params.gamma_numerator(i, j) * (hi - d);
        } else {
          numerator -= params.gamma_numerator(i, j) * (d - lo);
        }
      }
    }
  }
  return numerator / params.denominator();
}

double pg_distance(const MethodSpec& method, std::size_t size_i, std::size_t size_i2,
                   std::size_t size_j, double d_ii2, double d_ij, double d_i2j) {
  method.validate();
  if (std::isnan(d_ii2) || std::isnan(d_ij) || std::isnan(d_i2j)) {
    throw Error(ErrorCode::missing_distance, "pair-group update with a missing distance");
  }
  const PGParams c = pg_params(method.kind, size_i, size_i2, size_j);
  return c.alpha_i * d_ij + c.alpha_i2 * d_i2j + c.beta * d_ii2 + c.gamma * std::fabs(d_ij - d_i2j);
}

double direct_distance(const MethodSpec& method, const ProximityMatrix& individuals,
                       std::span<const std::size_t> side_i, std::span<const std::size_t> side_j) {
  method.validate();
  if (side_i.empty() || side_j.empty()) {
    throw Error(ErrorCode::invalid_argument, "both sides need at least one individual");
  }
  for (auto side : {side_i, side_j}) {
    for (std::size_t x : side) {
      if (x >= individuals.size()) {
        throw Error(ErrorCode::invalid_argument, "individual index out of range");
      }
    }
  }
  const double ni = static_cast<double>(side_i.size());
  const double nj = static_cast<double>(side_j.size());

  auto mean_over = [&](std::span<const std::size_t> a, std::span<const std::size_t> b) {
    double sum = 0.0;
    for (std::size_t x : a) {
      for (std::size_t y : b) sum += individuals(x, y);
    }
    return sum / (static_cast<double>(a.size()) * static_cast<double>(b.size()));
  };

  switch (method.kind) {
    case Method::single:
    case Method::complete: {
      double best = individuals(side_i.front(), side_j.front());
      for (std::size_t x : side_i) {
        for (std::size_t y : side_j) {
          best = method.kind == Method::single ? std::min(best, individuals(x, y))
                                               : std::max(best, individuals(x, y));
        }
      }
      return best;
    }
    case Method::unweighted_average:
      return mean_over(side_i, side_j);
    case Method::joint_between_within: {
      const double between = mean_over(side_i, side_j);
      const double within_i = mean_over(side_i, side_i);
      const double within_j = mean_over(side_j, side_j);
      return ni * nj / (ni + nj) * (2.0 * between - within_i - within_j);
    }
    default:
      throw Error(ErrorCode::unsupported_method,
                  std::string(to_string(method.kind)) +
                      " has no direct form over individual distances");
  }
}

}  // namespace mdendro
