#pragma once

// Tabular datasets: validated container, CSV ingestion, balanced
// subsampling, seeded synthetic generation and Pearson correlation.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace eai {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

enum class Task { Classification, Regression };

inline std::string to_string(Task task) {
  return task == Task::Classification ? "classification" : "regression";
}

/// Raised for malformed input data: bad CSV cells, invariant violations,
/// impossible subsampling requests.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Named feature columns plus a target vector. Immutable once constructed;
/// the constructor enforces every invariant.
class Dataset {
 public:
  Dataset(std::vector<std::string> feature_names, Matrix features,
          Vector target, Task task)
      : names_(std::move(feature_names)),
        features_(std::move(features)),
        target_(std::move(target)),
        task_(task) {
    validate();
  }

  const std::vector<std::string>& feature_names() const { return names_; }
  const Matrix& features() const { return features_; }
  const Vector& target() const { return target_; }
  Task task() const { return task_; }

  Eigen::Index rows() const { return features_.rows(); }
  Eigen::Index cols() const { return features_.cols(); }

  /// Column index of a feature, or nullopt.
  std::optional<Eigen::Index> index_of(std::string_view name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) return std::nullopt;
    return static_cast<Eigen::Index>(it - names_.begin());
  }

  /// Copy without column `col`.
  Dataset drop_column(Eigen::Index col) const {
    if (col < 0 || col >= cols()) throw DataError("drop_column: index out of range");
    if (cols() == 1) throw DataError("drop_column: cannot drop the last feature");
    std::vector<std::string> names = names_;
    names.erase(names.begin() + col);
    Matrix x(rows(), cols() - 1);
    x << features_.leftCols(col), features_.rightCols(cols() - col - 1);
    return Dataset(std::move(names), std::move(x), target_, task_);
  }

  /// Copy with column `col` replaced by `values`.
  Dataset with_column(Eigen::Index col, const Vector& values) const {
    if (col < 0 || col >= cols()) throw DataError("with_column: index out of range");
    if (values.size() != rows()) throw DataError("with_column: length mismatch");
    Matrix x = features_;
    x.col(col) = values;
    return Dataset(names_, std::move(x), target_, task_);
  }

  /// Copy keeping only the listed rows, in the given order.
  Dataset select_rows(const std::vector<Eigen::Index>& rows_to_keep) const {
    Matrix x(static_cast<Eigen::Index>(rows_to_keep.size()), cols());
    Vector y(static_cast<Eigen::Index>(rows_to_keep.size()));
    for (std::size_t i = 0; i < rows_to_keep.size(); ++i) {
      const auto r = rows_to_keep[i];
      if (r < 0 || r >= rows()) throw DataError("select_rows: index out of range");
      x.row(static_cast<Eigen::Index>(i)) = features_.row(r);
      y(static_cast<Eigen::Index>(i)) = target_(r);
    }
    return Dataset(names_, std::move(x), std::move(y), task_);
  }

  /// Copy keeping only the named columns, in the given order.
  Dataset select_features(const std::vector<std::string>& keep) const {
    Matrix x(rows(), static_cast<Eigen::Index>(keep.size()));
    for (std::size_t j = 0; j < keep.size(); ++j) {
      auto idx = index_of(keep[j]);
      if (!idx) throw DataError("unknown feature '" + keep[j] + "'");
      x.col(static_cast<Eigen::Index>(j)) = features_.col(*idx);
    }
    return Dataset(keep, std::move(x), target_, task_);
  }

 private:
  void validate() const {
    if (features_.rows() != target_.size())
      throw DataError("feature row count does not match target length");
    if (features_.rows() < 2) throw DataError("dataset needs at least 2 rows");
    if (static_cast<std::size_t>(features_.cols()) != names_.size())
      throw DataError("feature column count does not match feature names");
    std::set<std::string> seen;
    for (const auto& n : names_) {
      if (n.empty()) throw DataError("empty feature name");
      if (!seen.insert(n).second) throw DataError("duplicate feature name '" + n + "'");
    }
    if (!features_.allFinite()) throw DataError("non-finite value in features");
    if (!target_.allFinite()) throw DataError("non-finite value in target");
    if (task_ == Task::Classification) {
      for (Eigen::Index i = 0; i < target_.size(); ++i)
        if (target_(i) != 0.0 && target_(i) != 1.0)
          throw DataError("non-binary label " + std::to_string(target_(i)) + " at row " +
                          std::to_string(i + 1));
    }
  }

  std::vector<std::string> names_;
  Matrix features_;
  Vector target_;
  Task task_;
};

// ---------------------------------------------------------------------------
// CSV

namespace detail {

inline std::string trim(std::string_view s) {
  const auto* ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> split(std::string_view line, char delim) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto pos = line.find(delim, start);
    if (pos == std::string_view::npos) {
      out.emplace_back(line.substr(start));
      break;
    }
    out.emplace_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

// "fixed acidity" -> fixed_acidity
inline std::string normalize_header(std::string_view raw) {
  std::string s = trim(raw);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = trim(s.substr(1, s.size() - 2));
  std::replace(s.begin(), s.end(), ' ', '_');
  return s;
}

inline char detect_delimiter(std::string_view header) {
  const auto commas = std::count(header.begin(), header.end(), ',');
  const auto semis = std::count(header.begin(), header.end(), ';');
  return semis > commas ? ';' : ',';
}

inline std::optional<double> parse_real(const std::string& cell) {
  std::string s = trim(cell);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = trim(s.substr(1, s.size() - 2));
  if (!s.empty() && s.front() == '+') s.erase(0, 1);
  if (s.empty()) return std::nullopt;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

}  // namespace detail

/// Reads a delimited text table. The delimiter (',' or ';') is detected from
/// the header line. `target_column` becomes the target; all other columns
/// are features unless `feature_whitelist` is given, in which case only the
/// listed columns are kept, in whitelist order.
inline Dataset load_csv(const std::string& path, const std::string& target_column, Task task,
                        const std::optional<std::vector<std::string>>& feature_whitelist = {}) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");

  std::string line;
  if (!std::getline(in, line) || detail::trim(line).empty())
    throw DataError("'" + path + "': missing header row");
  const char delim = detail::detect_delimiter(line);
  std::vector<std::string> header;
  for (auto& h : detail::split(line, delim)) header.push_back(detail::normalize_header(h));

  const std::string target_name = detail::normalize_header(target_column);
  const auto target_hits = std::count(header.begin(), header.end(), target_name);
  if (target_hits == 0) throw DataError("target column '" + target_column + "' not in header");
  if (target_hits > 1) throw DataError("target column '" + target_column + "' appears twice");
  const auto target_idx =
      static_cast<std::size_t>(std::find(header.begin(), header.end(), target_name) - header.begin());

  std::vector<std::vector<double>> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    auto cells = detail::split(line, delim);
    if (cells.size() != header.size())
      throw DataError("'" + path + "' line " + std::to_string(line_no) + ": expected " +
                      std::to_string(header.size()) + " cells, found " +
                      std::to_string(cells.size()));
    std::vector<double> row(cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c) {
      auto v = detail::parse_real(cells[c]);
      if (!v)
        throw DataError("'" + path + "' line " + std::to_string(line_no) + ", column '" +
                        header[c] + "': cannot parse '" + detail::trim(cells[c]) + "'");
      if (!std::isfinite(*v))
        throw DataError("'" + path + "' line " + std::to_string(line_no) + ", column '" +
                        header[c] + "': non-finite value");
      row[c] = *v;
    }
    rows.push_back(std::move(row));
  }

  std::vector<std::size_t> feature_cols;
  std::vector<std::string> names;
  if (feature_whitelist) {
    for (const auto& raw : *feature_whitelist) {
      const auto want = detail::normalize_header(raw);
      auto it = std::find(header.begin(), header.end(), want);
      if (it == header.end()) throw DataError("feature '" + raw + "' not in header");
      if (static_cast<std::size_t>(it - header.begin()) == target_idx)
        throw DataError("feature '" + raw + "' is the target column");
      feature_cols.push_back(static_cast<std::size_t>(it - header.begin()));
      names.push_back(want);
    }
  } else {
    for (std::size_t c = 0; c < header.size(); ++c) {
      if (c == target_idx) continue;
      feature_cols.push_back(c);
      names.push_back(header[c]);
    }
  }

  const auto n = static_cast<Eigen::Index>(rows.size());
  Matrix x(n, static_cast<Eigen::Index>(feature_cols.size()));
  Vector y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i)];
    for (std::size_t j = 0; j < feature_cols.size(); ++j)
      x(i, static_cast<Eigen::Index>(j)) = row[feature_cols[j]];
    y(i) = row[target_idx];
  }
  return Dataset(std::move(names), std::move(x), std::move(y), task);
}

/// Writes `d` as comma-delimited CSV with the target as the last column.
/// Values are written with round-trip precision.
inline void write_csv(const Dataset& d, std::ostream& out,
                      const std::string& target_name = "target") {
  for (const auto& n : d.feature_names()) out << n << ',';
  out << target_name << '\n';
  std::ostringstream cell;
  cell.imbue(std::locale::classic());
  cell.precision(17);
  for (Eigen::Index i = 0; i < d.rows(); ++i) {
    cell.str({});
    for (Eigen::Index j = 0; j < d.cols(); ++j) cell << d.features()(i, j) << ',';
    cell << d.target()(i) << '\n';
    out << cell.str();
  }
}

// ---------------------------------------------------------------------------
// Subsampling

/// Draws exactly `per_class` rows of each class without replacement.
/// Output rows are ordered class 0 first, then class 1, each in original
/// row order.
inline Dataset balanced_subsample(const Dataset& d, std::size_t per_class, std::uint64_t seed) {
  if (d.task() != Task::Classification)
    throw DataError("balanced_subsample requires a classification dataset");
  if (per_class == 0) throw DataError("per_class must be positive");
  std::vector<Eigen::Index> by_class[2];
  for (Eigen::Index i = 0; i < d.rows(); ++i)
    by_class[d.target()(i) == 1.0 ? 1 : 0].push_back(i);

  std::mt19937_64 rng(seed);
  std::vector<Eigen::Index> keep;
  keep.reserve(2 * per_class);
  for (int c = 0; c < 2; ++c) {
    auto& pool = by_class[c];
    if (pool.size() < per_class)
      throw DataError("class " + std::to_string(c) + " has " + std::to_string(pool.size()) +
                      " rows, fewer than per_class=" + std::to_string(per_class));
    std::shuffle(pool.begin(), pool.end(), rng);
    std::vector<Eigen::Index> chosen(pool.begin(), pool.begin() + static_cast<long>(per_class));
    std::sort(chosen.begin(), chosen.end());
    keep.insert(keep.end(), chosen.begin(), chosen.end());
  }
  return d.select_rows(keep);
}

// ---------------------------------------------------------------------------
// Synthetic data

struct SyntheticSpec {
  std::size_t n_samples = 1000;
  std::size_t n_informative = 2;
  std::size_t n_redundant = 0;
  std::size_t n_noise = 0;
  double class_separation = 1.0;
  std::uint64_t seed = 42;

  std::size_t n_features() const { return n_informative + n_redundant + n_noise; }
};

/// How one redundant column was built: column `column` equals
/// sum_k weights[k] * column(sources[k]).
struct RedundantColumn {
  Eigen::Index column = 0;
  std::vector<Eigen::Index> sources;
  std::vector<double> weights;
};

struct SyntheticData {
  Dataset data;
  std::vector<Eigen::Index> informative;  // column indices after shuffling
  std::vector<Eigen::Index> noise;
  std::vector<RedundantColumn> redundant;
};

/// Balanced Bernoulli labels; informative columns are unit-variance Gaussians
/// shifted by +-separation/2; redundant columns are random linear
/// combinations of the informative ones; noise columns are independent
/// standard normals. Columns are shuffled and named X1..Xn.
inline SyntheticData generate_synthetic(const SyntheticSpec& spec) {
  if (spec.n_samples < 2) throw DataError("n_samples must be at least 2");
  if (spec.n_informative < 1) throw DataError("n_informative must be at least 1");
  if (!(spec.class_separation > 0.0) || !std::isfinite(spec.class_separation))
    throw DataError("class_separation must be positive");

  const auto n = static_cast<Eigen::Index>(spec.n_samples);
  const auto n_inf = static_cast<Eigen::Index>(spec.n_informative);
  const auto n_red = static_cast<Eigen::Index>(spec.n_redundant);
  const auto p = static_cast<Eigen::Index>(spec.n_features());

  std::mt19937_64 rng(spec.seed);
  std::bernoulli_distribution coin(0.5);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);

  Vector y(n);
  for (Eigen::Index i = 0; i < n; ++i) y(i) = coin(rng) ? 1.0 : 0.0;

  // Unshuffled layout: [informative | redundant | noise].
  Matrix raw(n, p);
  const double half = spec.class_separation / 2.0;
  for (Eigen::Index j = 0; j < n_inf; ++j)
    for (Eigen::Index i = 0; i < n; ++i)
      raw(i, j) = gauss(rng) + (y(i) == 1.0 ? half : -half);

  std::vector<std::vector<double>> red_weights(spec.n_redundant);
  for (Eigen::Index r = 0; r < n_red; ++r) {
    auto& w = red_weights[static_cast<std::size_t>(r)];
    w.resize(spec.n_informative);
    do {
      for (auto& v : w) v = uniform(rng);
    } while (std::all_of(w.begin(), w.end(), [](double v) { return v == 0.0; }));
    Vector col = Vector::Zero(n);
    for (Eigen::Index k = 0; k < n_inf; ++k) col += w[static_cast<std::size_t>(k)] * raw.col(k);
    raw.col(n_inf + r) = col;
  }
  for (Eigen::Index j = n_inf + n_red; j < p; ++j)
    for (Eigen::Index i = 0; i < n; ++i) raw(i, j) = gauss(rng);

  // position[j] = final column of unshuffled column j.
  std::vector<Eigen::Index> position(static_cast<std::size_t>(p));
  std::iota(position.begin(), position.end(), Eigen::Index{0});
  std::shuffle(position.begin(), position.end(), rng);

  Matrix x(n, p);
  for (Eigen::Index j = 0; j < p; ++j) x.col(position[static_cast<std::size_t>(j)]) = raw.col(j);

  std::vector<std::string> names;
  for (Eigen::Index j = 0; j < p; ++j) names.push_back("X" + std::to_string(j + 1));

  std::vector<Eigen::Index> informative(position.begin(), position.begin() + n_inf);
  std::vector<Eigen::Index> noise(position.begin() + n_inf + n_red, position.end());
  std::vector<RedundantColumn> redundant;
  for (Eigen::Index r = 0; r < n_red; ++r)
    redundant.push_back({position[static_cast<std::size_t>(n_inf + r)], informative,
                         red_weights[static_cast<std::size_t>(r)]});

  return {Dataset(std::move(names), std::move(x), std::move(y), Task::Classification),
          std::move(informative), std::move(noise), std::move(redundant)};
}

// ---------------------------------------------------------------------------
// Correlation

/// Pearson correlation of two equal-length vectors. Throws on zero variance.
inline double pearson(const Vector& a, const Vector& b) {
  if (a.size() != b.size() || a.size() < 2) throw DataError("pearson: length mismatch");
  const Vector ca = a.array() - a.mean();
  const Vector cb = b.array() - b.mean();
  const double saa = ca.squaredNorm();
  const double sbb = cb.squaredNorm();
  if (saa == 0.0 || sbb == 0.0) throw DataError("pearson: zero-variance input");
  return std::clamp(ca.dot(cb) / std::sqrt(saa * sbb), -1.0, 1.0);
}

/// Pairwise Pearson correlations of the feature columns, optionally with the
/// target appended as the last row/column. Diagonal is exactly 1.
inline Matrix pearson_matrix(const Dataset& d, bool include_target) {
  const Eigen::Index p = d.cols() + (include_target ? 1 : 0);
  Matrix centered(d.rows(), p);
  centered.leftCols(d.cols()) = d.features();
  if (include_target) centered.col(d.cols()) = d.target();

  Vector scale(p);
  for (Eigen::Index j = 0; j < p; ++j) {
    centered.col(j).array() -= centered.col(j).mean();
    scale(j) = centered.col(j).norm();
    if (scale(j) == 0.0) {
      const std::string name = j < d.cols() ? d.feature_names()[static_cast<std::size_t>(j)]
                                            : std::string("target");
      throw DataError("zero-variance column '" + name + "'");
    }
  }
  Matrix r(p, p);
  for (Eigen::Index i = 0; i < p; ++i) {
    r(i, i) = 1.0;
    for (Eigen::Index j = i + 1; j < p; ++j) {
      const double v =
          std::clamp(centered.col(i).dot(centered.col(j)) / (scale(i) * scale(j)), -1.0, 1.0);
      r(i, j) = v;
      r(j, i) = v;
    }
  }
  return r;
}

}  // namespace eai
