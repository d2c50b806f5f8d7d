#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mdendro {

enum class MatrixKind { distance, converted_from_similarity };

enum class MatrixFormat { square, lower_triangle, pairs, labeled_pairs };

std::string_view to_string(MatrixFormat format) noexcept;
std::optional<MatrixFormat> parse_matrix_format(std::string_view name) noexcept;

// Condensed position of the unordered pair {i, j}, i != j.
constexpr std::size_t condensed_index(std::size_t n, std::size_t i, std::size_t j) noexcept {
  if (i > j) std::swap(i, j);
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}

// Symmetric dissimilarities over n labeled individuals, stored as the
// condensed upper triangle. Immutable once built.
class ProximityMatrix {
 public:
  ProximityMatrix() = default;

  // Throws NegativeValue, DuplicateLabel or InvalidArgument (size mismatch,
  // non-finite entry). With a precision, values are rounded to it.
  ProximityMatrix(std::vector<std::string> labels, std::vector<double> values,
                  std::optional<int> precision = std::nullopt,
                  MatrixKind kind = MatrixKind::distance);

  // Labels default to x1..xn.
  static ProximityMatrix from_condensed(std::size_t n, std::vector<double> values,
                                        std::optional<int> precision = std::nullopt);

  std::size_t size() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::span<const double> values() const noexcept { return values_; }
  std::optional<int> precision() const noexcept { return precision_; }
  MatrixKind kind() const noexcept { return kind_; }

  // Zero on the diagonal.
  double operator()(std::size_t i, std::size_t j) const noexcept {
    return i == j ? 0.0 : values_[condensed_index(size(), i, j)];
  }

  // Rows/columns reordered so that new index k holds old index order[k].
  ProximityMatrix permuted(std::span<const std::size_t> order) const;

  // Pairs of distinct individuals at distance zero.
  std::vector<std::pair<std::size_t, std::size_t>> zero_pairs() const;

  friend bool operator==(const ProximityMatrix&, const ProximityMatrix&) = default;

 private:
  std::vector<std::string> labels_;
  std::vector<double> values_;
  std::optional<int> precision_;
  MatrixKind kind_ = MatrixKind::distance;
};

std::vector<std::string> default_labels(std::size_t n);

// Text ingestion. Blank lines and lines starting with '#' are ignored.
//   square         n rows of n values, optional first line of labels
//   lower_triangle optional label line, then rows 2..n holding d(i, 1..i-1);
//                  rows that also carry the zero diagonal are accepted
//   pairs          "i j value", 1-based indices
//   labeled_pairs  "labelA labelB value", labels in order of first appearance
// The precision is inferred as the largest number of decimals written.
ProximityMatrix parse_matrix(std::string_view text, MatrixFormat format);

// Inverse of parse_matrix. Values carry exactly `precision` decimals when the
// matrix has one, the shortest round-trip form otherwise.
std::string serialize_matrix(const ProximityMatrix& m, MatrixFormat format);

// d = 1 - s. Throws OutOfRange if any value lies outside [0, 1].
ProximityMatrix similarity_to_dissimilarity(const ProximityMatrix& m);

// Every value rounded half away from zero to `places` decimals.
ProximityMatrix round_to_precision(const ProximityMatrix& m, int places);

}  // namespace mdendro
