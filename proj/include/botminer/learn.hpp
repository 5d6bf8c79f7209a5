#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace botminer {

/// Dense row-major matrix of doubles.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c, double fill = 0.0) : rows(r), cols(c), data(r * c, fill) {}

  double& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
  std::span<const double> row(std::size_t r) const { return {data.data() + r * cols, cols}; }
  std::span<double> row(std::size_t r) { return {data.data() + r * cols, cols}; }
  std::vector<double> column(std::size_t c) const;

  /// Sub-matrix of the given rows and columns, in the given order.
  Matrix select(std::span<const std::size_t> row_ids, std::span<const std::size_t> col_ids) const;
  Matrix select_rows(std::span<const std::size_t> row_ids) const;
  Matrix select_cols(std::span<const std::size_t> col_ids) const;

  bool operator==(const Matrix&) const = default;
};

std::vector<std::size_t> iota_indices(std::size_t n);

// ---- metrics --------------------------------------------------------------

struct ConfusionMatrix {
  std::size_t tp = 0;
  std::size_t tn = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;

  std::size_t total() const { return tp + tn + fp + fn; }
  bool operator==(const ConfusionMatrix&) const = default;
};

/// Bot (1) is the positive class.
ConfusionMatrix confusion(std::span<const int> truth, std::span<const int> predicted);

struct Metrics {
  double accuracy = 0;
  double precision = 0;
  double recall = 0;
  double f1 = 0;
  double auc = 0;
  bool precision_undefined = false;
  bool recall_undefined = false;
  bool f1_undefined = false;
  bool auc_undefined = false;
};

/// accuracy = (tp+tn)/total, precision = tp/(tp+fp), recall = tp/(tp+fn),
/// f1 = harmonic mean of precision and recall, auc from the scores.
/// A zero denominator yields 0 and sets the matching flag.
Metrics compute_metrics(const ConfusionMatrix& cm, std::span<const double> scores,
                        std::span<const int> labels);

/// 2pr/(p+r); 0 when p+r = 0.
double f1_score(double precision, double recall);

/// Mann-Whitney statistic with tie-averaged ranks. Undefined (one class
/// only) gives 0 and sets *undefined.
double auc_score(std::span<const double> scores, std::span<const int> labels,
                 bool* undefined = nullptr);

// ---- normalization --------------------------------------------------------

/// Per-column min-max scaling fitted on training rows. Constant columns map
/// to 0; values outside the fitted range are clamped to [0,1].
class Scaler {
 public:
  static Scaler fit(const Matrix& x);
  void apply(Matrix& x) const;
  Matrix transform(const Matrix& x) const;

  const std::vector<double>& mins() const { return min_; }
  const std::vector<double>& maxs() const { return max_; }

 private:
  std::vector<double> min_;
  std::vector<double> max_;
};

// ---- models ---------------------------------------------------------------

struct Hyperparams {
  std::size_t n_trees = 100;
  int max_depth = -1;  // unlimited
  std::size_t min_samples_leaf = 1;
  /// Features tried per split; -1 means sqrt(d) for forests, d for a tree.
  int max_features = -1;
  std::size_t knn_k = 5;
  std::size_t epochs = 500;
  double learning_rate = 0.5;
  double l2 = 1e-4;
  double nb_var_smoothing = 1e-9;
};

struct Prediction {
  std::vector<int> labels;
  std::vector<double> scores;  // probability of the bot class
};

class Model {
 public:
  virtual ~Model() = default;

  virtual std::string_view id() const = 0;
  /// labels are 0/1 and must contain both classes.
  virtual void fit(const Matrix& x, std::span<const int> labels, std::uint64_t seed) = 0;
  virtual std::vector<double> scores(const Matrix& x) const = 0;
  /// Impurity-based importances (normalized to sum 1) for tree models;
  /// empty otherwise.
  virtual std::vector<double> feature_importances() const { return {}; }

  /// Scores and labels (label = score >= 0.5). Throws SchemaMismatch when
  /// the column count differs from training.
  Prediction predict(const Matrix& x) const;

  std::size_t n_features() const { return n_features_; }

 protected:
  void check_columns(const Matrix& x) const;
  std::size_t n_features_ = 0;

  friend std::unique_ptr<Model> deserialize_model(const std::string& text);
  friend std::string serialize_model(const Model& m);
};

/// decision_tree, random_forest, extra_trees, knn, gaussian_nb,
/// logistic_regression, dummy_majority.
const std::vector<std::string>& known_models();

/// Unfitted model. Throws UnknownModel.
std::unique_ptr<Model> make_model(std::string_view model_id, const Hyperparams& hp = {});

/// make_model + fit; throws DegenerateLabels for single-class labels.
std::unique_ptr<Model> train(std::string_view model_id, const Matrix& x,
                             std::span<const int> labels, const Hyperparams& hp,
                             std::uint64_t seed);

/// Throws DegenerateLabels unless both 0 and 1 occur.
void require_two_classes(std::span<const int> labels);

/// Logistic model with given coefficients, mainly for tests.
std::unique_ptr<Model> make_logistic(std::vector<double> weights, double bias);

/// Versioned JSON text.
std::string serialize_model(const Model& m);
std::unique_ptr<Model> deserialize_model(const std::string& text);

}  // namespace botminer
