#include "mdendro/proximity.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include "mdendro/decimal.hpp"
#include "mdendro/error.hpp"

namespace mdendro {

namespace {

constexpr double kSymmetryTolerance = 1e-12;

struct Line {
  std::size_t number;
  std::vector<std::string_view> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view raw = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++number;

    Line line{number, {}};
    std::size_t pos = 0;
    while (pos < raw.size()) {
      while (pos < raw.size() && std::isspace(static_cast<unsigned char>(raw[pos]))) ++pos;
      if (pos >= raw.size()) break;
      std::size_t end = pos;
      while (end < raw.size() && !std::isspace(static_cast<unsigned char>(raw[end]))) ++end;
      line.tokens.push_back(raw.substr(pos, end - pos));
      pos = end;
    }
    if (line.tokens.empty() || line.tokens.front().front() == '#') continue;
    lines.push_back(std::move(line));
  }
  return lines;
}

std::optional<double> to_number(std::string_view token) {
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size() || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

bool all_numeric(const Line& line) {
  return std::all_of(line.tokens.begin(), line.tokens.end(),
                     [](std::string_view t) { return to_number(t).has_value(); });
}

[[noreturn]] void fail(ErrorCode code, std::size_t line, const std::string& what) {
  throw Error(code, "line " + std::to_string(line) + ": " + what);
}

// Tracks the largest number of decimals written in any value token.
class NumberReader {
 public:
  double read(const Line& line, std::size_t k) {
    const auto value = to_number(line.tokens[k]);
    if (!value) {
      fail(ErrorCode::parse_error, line.number,
           "expected a number, got '" + std::string(line.tokens[k]) + "'");
    }
    places_ = std::max(places_, decimal::places_of_token(line.tokens[k]));
    return *value;
  }
  int places() const { return places_; }

 private:
  int places_ = 0;
};

std::vector<std::string> to_labels(const Line& line) {
  return {line.tokens.begin(), line.tokens.end()};
}

ProximityMatrix parse_square(const std::vector<Line>& lines) {
  std::size_t first = 0;
  std::vector<std::string> labels;
  if (!lines.empty() && !all_numeric(lines.front())) {
    labels = to_labels(lines.front());
    first = 1;
  }
  const std::size_t rows = lines.size() - first;
  const std::size_t n = labels.empty() ? rows : labels.size();
  if (rows != n) {
    throw Error(ErrorCode::parse_error, "square matrix: expected " + std::to_string(n) +
                                            " rows, found " + std::to_string(rows));
  }
  if (labels.empty()) labels = default_labels(n);

  NumberReader reader;
  std::vector<double> full(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    const Line& line = lines[first + i];
    if (line.tokens.size() != n) {
      fail(ErrorCode::parse_error, line.number,
           "expected " + std::to_string(n) + " values, found " +
               std::to_string(line.tokens.size()));
    }
    for (std::size_t j = 0; j < n; ++j) full[i * n + j] = reader.read(line, j);
    // 0 for distances, 1 for similarities; either way one value throughout
    if (full[i * n + i] != full[0]) fail(ErrorCode::parse_error, line.number, "uneven diagonal");
  }

  std::vector<double> values;
  values.reserve(n * (n - (n > 0)) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double a = full[i * n + j];
      const double b = full[j * n + i];
      if (std::fabs(a - b) > kSymmetryTolerance) {
        throw Error(ErrorCode::asymmetric_input,
                    "entries (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                        ") and (" + std::to_string(j + 1) + "," + std::to_string(i + 1) +
                        ") differ");
      }
      values.push_back(a);
    }
  }
  return ProximityMatrix(std::move(labels), std::move(values), reader.places());
}

ProximityMatrix parse_lower(const std::vector<Line>& lines) {
  std::size_t first = 0;
  std::vector<std::string> labels;
  if (!lines.empty() && !all_numeric(lines.front())) {
    labels = to_labels(lines.front());
    first = 1;
  }
  const std::size_t rows = lines.size() - first;

  // Row k (1-based) holds k entries in both layouts; the diagonal layout has n
  // rows each ending in zero, the strict layout has n - 1 rows.
  bool with_diagonal = false;
  if (!labels.empty()) {
    with_diagonal = rows == labels.size() && rows > 0;
  } else if (rows > 0) {
    with_diagonal = true;
    for (std::size_t k = 0; k < rows && with_diagonal; ++k) {
      const Line& line = lines[first + k];
      with_diagonal = line.tokens.size() == k + 1 && to_number(line.tokens.back()) == 0.0;
    }
  }
  std::size_t n = labels.size();
  if (labels.empty()) {
    n = rows == 0 ? 0 : (with_diagonal ? rows : rows + 1);
    labels = default_labels(n);
  }
  if (!with_diagonal && n > 0 && rows + 1 != n) {
    throw Error(ErrorCode::parse_error, "lower triangle: expected " + std::to_string(n - 1) +
                                            " rows, found " + std::to_string(rows));
  }

  NumberReader reader;
  std::vector<double> values(n * (n - (n > 0)) / 2);
  for (std::size_t k = 0; k < rows; ++k) {
    const Line& line = lines[first + k];
    const std::size_t row = with_diagonal ? k : k + 1;
    const std::size_t expected = k + 1;
    if (line.tokens.size() != expected) {
      fail(ErrorCode::parse_error, line.number,
           "expected " + std::to_string(expected) + " values, found " +
               std::to_string(line.tokens.size()));
    }
    for (std::size_t j = 0; j < row; ++j) values[condensed_index(n, row, j)] = reader.read(line, j);
    if (with_diagonal && reader.read(line, row) != 0.0) {
      fail(ErrorCode::parse_error, line.number, "nonzero diagonal");
    }
  }
  return ProximityMatrix(std::move(labels), std::move(values), reader.places());
}

ProximityMatrix assemble_pairs(std::vector<std::string> labels,
                               const std::map<std::pair<std::size_t, std::size_t>, double>& pairs,
                               int places) {
  const std::size_t n = labels.size();
  std::vector<double> values(n * (n - (n > 0)) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto it = pairs.find({i, j});
      if (it == pairs.end()) {
        throw Error(ErrorCode::missing_pair, "no value for pair (" + labels[i] + ", " +
                                                 labels[j] + ")");
      }
      values[condensed_index(n, i, j)] = it->second;
    }
  }
  return ProximityMatrix(std::move(labels), std::move(values), places);
}

void record_pair(std::map<std::pair<std::size_t, std::size_t>, double>& pairs, std::size_t i,
                 std::size_t j, double value, const Line& line) {
  if (i == j) fail(ErrorCode::parse_error, line.number, "pair joins an individual to itself");
  if (!pairs.emplace(std::minmax(i, j), value).second) {
    fail(ErrorCode::duplicate_pair, line.number, "pair listed twice");
  }
}

bool is_index(std::string_view tok) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  return ec == std::errc{} && ptr == tok.data() + tok.size() && v > 0;
}

ProximityMatrix parse_labeled_pairs(const std::vector<Line>& lines);

ProximityMatrix parse_pairs(const std::vector<Line>& lines) {
  // "a b 1.5" rows name the individuals directly
  if (!lines.empty() && lines.front().tokens.size() == 3 &&
      !(is_index(lines.front().tokens[0]) && is_index(lines.front().tokens[1])) &&
      to_number(lines.front().tokens[2])) {
    return parse_labeled_pairs(lines);
  }
  std::size_t first = 0;
  std::vector<std::string> labels;
  if (!lines.empty() && (lines.front().tokens.size() != 3 || !all_numeric(lines.front()))) {
    labels = to_labels(lines.front());
    first = 1;
  }

  NumberReader reader;
  std::map<std::pair<std::size_t, std::size_t>, double> pairs;
  std::size_t max_index = 0;
  for (std::size_t k = first; k < lines.size(); ++k) {
    const Line& line = lines[k];
    if (line.tokens.size() != 3) fail(ErrorCode::parse_error, line.number, "expected 'i j value'");
    std::size_t idx[2] = {0, 0};
    for (int t = 0; t < 2; ++t) {
      const auto tok = line.tokens[t];
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), idx[t]);
      if (ec != std::errc{} || ptr != tok.data() + tok.size() || idx[t] == 0) {
        fail(ErrorCode::parse_error, line.number,
             "expected a 1-based index, got '" + std::string(tok) + "'");
      }
    }
    max_index = std::max({max_index, idx[0], idx[1]});
    record_pair(pairs, idx[0] - 1, idx[1] - 1, reader.read(line, 2), line);
  }
  if (labels.empty()) {
    labels = default_labels(max_index);
  } else if (max_index > labels.size()) {
    throw Error(ErrorCode::parse_error, "pair index " + std::to_string(max_index) +
                                            " exceeds the " + std::to_string(labels.size()) +
                                            " declared labels");
  }
  return assemble_pairs(std::move(labels), pairs, reader.places());
}

ProximityMatrix parse_labeled_pairs(const std::vector<Line>& lines) {
  NumberReader reader;
  std::vector<std::string> labels;
  std::unordered_map<std::string, std::size_t> index;
  auto intern = [&](std::string_view label) {
    auto [it, inserted] = index.emplace(std::string(label), labels.size());
    if (inserted) labels.emplace_back(label);
    return it->second;
  };

  std::map<std::pair<std::size_t, std::size_t>, double> pairs;
  for (const Line& line : lines) {
    if (line.tokens.size() == 1) {
      intern(line.tokens[0]);
      continue;
    }
    if (line.tokens.size() != 3) {
      fail(ErrorCode::parse_error, line.number, "expected 'labelA labelB value'");
    }
    const std::size_t i = intern(line.tokens[0]);
    const std::size_t j = intern(line.tokens[1]);
    record_pair(pairs, i, j, reader.read(line, 2), line);
  }
  return assemble_pairs(std::move(labels), pairs, reader.places());
}

bool has_default_labels(const ProximityMatrix& m) {
  return m.labels() == default_labels(m.size());
}

void write_labels(std::ostringstream& out, const ProximityMatrix& m) {
  for (std::size_t i = 0; i < m.size(); ++i) out << (i ? " " : "") << m.labels()[i];
  out << '\n';
}

}  // namespace

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::parse_error: return "ParseError";
    case ErrorCode::asymmetric_input: return "AsymmetricInput";
    case ErrorCode::missing_pair: return "MissingPair";
    case ErrorCode::duplicate_pair: return "DuplicatePair";
    case ErrorCode::negative_value: return "NegativeValue";
    case ErrorCode::duplicate_label: return "DuplicateLabel";
    case ErrorCode::out_of_range: return "OutOfRange";
    case ErrorCode::missing_distance: return "MissingDistance";
    case ErrorCode::invalid_alpha: return "InvalidAlpha";
    case ErrorCode::unsupported_method: return "UnsupportedMethod";
    case ErrorCode::dimension_mismatch: return "DimensionMismatch";
    case ErrorCode::empty_input: return "EmptyInput";
    case ErrorCode::policy_unavailable: return "PolicyUnavailable";
    case ErrorCode::too_many_solutions: return "TooManySolutions";
    case ErrorCode::unresolved_heights: return "UnresolvedHeights";
    case ErrorCode::invalid_argument: return "InvalidArgument";
    case ErrorCode::io_error: return "IoError";
  }
  return "Unknown";
}

std::string_view to_string(MatrixFormat format) noexcept {
  switch (format) {
    case MatrixFormat::square: return "square";
    case MatrixFormat::lower_triangle: return "lower";
    case MatrixFormat::pairs: return "pairs";
    case MatrixFormat::labeled_pairs: return "labeled-pairs";
  }
  return "square";
}

std::optional<MatrixFormat> parse_matrix_format(std::string_view name) noexcept {
  if (name == "square") return MatrixFormat::square;
  if (name == "lower" || name == "lower-triangle") return MatrixFormat::lower_triangle;
  if (name == "pairs") return MatrixFormat::pairs;
  if (name == "labeled-pairs" || name == "labeled_pairs") return MatrixFormat::labeled_pairs;
  return std::nullopt;
}

std::vector<std::string> default_labels(std::size_t n) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) labels.push_back("x" + std::to_string(i + 1));
  return labels;
}

ProximityMatrix::ProximityMatrix(std::vector<std::string> labels, std::vector<double> values,
                                 std::optional<int> precision, MatrixKind kind)
    : labels_(std::move(labels)), values_(std::move(values)), precision_(precision), kind_(kind) {
  const std::size_t n = labels_.size();
  const std::size_t expected = n < 2 ? 0 : n * (n - 1) / 2;
  if (values_.size() != expected) {
    throw Error(ErrorCode::invalid_argument,
                std::to_string(n) + " labels need " + std::to_string(expected) +
                    " condensed values, got " + std::to_string(values_.size()));
  }
  if (precision_ && *precision_ < 0) {
    throw Error(ErrorCode::invalid_argument, "precision must be nonnegative");
  }
  std::set<std::string_view> seen;
  for (const auto& label : labels_) {
    if (label.empty()) throw Error(ErrorCode::invalid_argument, "empty label");
    if (!seen.insert(label).second) {
      throw Error(ErrorCode::duplicate_label, "duplicate label '" + label + "'");
    }
  }
  for (double& v : values_) {
    if (!std::isfinite(v)) throw Error(ErrorCode::invalid_argument, "non-finite distance");
    if (v < 0.0) {
      throw Error(ErrorCode::negative_value, "negative distance " + decimal::shortest(v));
    }
    if (precision_) v = decimal::round(v, *precision_);
  }
}

ProximityMatrix ProximityMatrix::from_condensed(std::size_t n, std::vector<double> values,
                                                std::optional<int> precision) {
  return ProximityMatrix(default_labels(n), std::move(values), precision);
}

ProximityMatrix ProximityMatrix::permuted(std::span<const std::size_t> order) const {
  const std::size_t n = size();
  if (order.size() != n) throw Error(ErrorCode::invalid_argument, "permutation size mismatch");
  std::vector<std::string> labels(n);
  std::vector<double> values(values_.size());
  for (std::size_t a = 0; a < n; ++a) {
    labels[a] = labels_.at(order[a]);
    for (std::size_t b = a + 1; b < n; ++b) {
      values[condensed_index(n, a, b)] = (*this)(order[a], order[b]);
    }
  }
  return ProximityMatrix(std::move(labels), std::move(values), precision_, kind_);
}

std::vector<std::pair<std::size_t, std::size_t>> ProximityMatrix::zero_pairs() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t j = i + 1; j < size(); ++j) {
      if ((*this)(i, j) == 0.0) out.emplace_back(i, j);
    }
  }
  return out;
}

ProximityMatrix parse_matrix(std::string_view text, MatrixFormat format) {
  const auto lines = tokenize(text);
  switch (format) {
    case MatrixFormat::square: return parse_square(lines);
    case MatrixFormat::lower_triangle: return parse_lower(lines);
    case MatrixFormat::pairs: return parse_pairs(lines);
    case MatrixFormat::labeled_pairs: return parse_labeled_pairs(lines);
  }
  throw Error(ErrorCode::invalid_argument, "unknown matrix format");
}

std::string serialize_matrix(const ProximityMatrix& m, MatrixFormat format) {
  const std::size_t n = m.size();
  auto num = [&](double v) { return decimal::format(v, m.precision()); };
  std::ostringstream out;
  switch (format) {
    case MatrixFormat::square:
      write_labels(out, m);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) out << (j ? " " : "") << num(m(i, j));
        out << '\n';
      }
      break;
    case MatrixFormat::lower_triangle:
      write_labels(out, m);
      for (std::size_t i = 1; i < n; ++i) {
        for (std::size_t j = 0; j < i; ++j) out << (j ? " " : "") << num(m(i, j));
        out << '\n';
      }
      break;
    case MatrixFormat::pairs:
      if (!has_default_labels(m) || n < 2) write_labels(out, m);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          out << i + 1 << ' ' << j + 1 << ' ' << num(m(i, j)) << '\n';
        }
      }
      break;
    case MatrixFormat::labeled_pairs:
      if (n == 1) out << m.labels()[0] << '\n';
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          out << m.labels()[i] << ' ' << m.labels()[j] << ' ' << num(m(i, j)) << '\n';
        }
      }
      break;
  }
  return out.str();
}

ProximityMatrix similarity_to_dissimilarity(const ProximityMatrix& m) {
  std::vector<double> values(m.values().begin(), m.values().end());
  for (double& v : values) {
    if (v < 0.0 || v > 1.0) {
      throw Error(ErrorCode::out_of_range,
                  "similarity " + decimal::shortest(v) + " outside [0, 1]");
    }
    // 1 - s carries no more decimals than s does.
    const int places = m.precision() ? *m.precision() : decimal::places_of(v);
    v = decimal::round(1.0 - v, places);
  }
  return ProximityMatrix(m.labels(), std::move(values), m.precision(),
                         MatrixKind::converted_from_similarity);
}

ProximityMatrix round_to_precision(const ProximityMatrix& m, int places) {
  if (places < 0) throw Error(ErrorCode::invalid_argument, "precision must be nonnegative");
  std::vector<double> values(m.values().begin(), m.values().end());
  return ProximityMatrix(m.labels(), std::move(values), places, m.kind());
}

}  // namespace mdendro
