#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "botminer/error.hpp"
#include "botminer/parallel.hpp"
#include "models_impl.hpp"

namespace botminer {
namespace model_detail {
namespace {

std::vector<double> normalized(std::vector<double> v) {
  const double s = std::accumulate(v.begin(), v.end(), 0.0);
  if (s > 0) {
    for (double& x : v) x /= s;
  } else if (!v.empty()) {
    std::fill(v.begin(), v.end(), 1.0 / static_cast<double>(v.size()));
  }
  return v;
}

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

}  // namespace

void TreeModel::fit(const Matrix& x, std::span<const int> labels, std::uint64_t seed) {
  n_features_ = x.cols;
  tree_detail::TreeParams p;
  p.max_depth = hp_.max_depth;
  p.min_samples_leaf = hp_.min_samples_leaf;
  p.max_features = hp_.max_features > 0 ? static_cast<std::size_t>(hp_.max_features) : 0;
  Rng rng(seed);
  const std::vector<double> w(x.rows, 1.0);
  tree_.fit(x, labels, w, p, rng);
}

std::vector<double> TreeModel::scores(const Matrix& x) const {
  check_columns(x);
  std::vector<double> s(x.rows);
  for (std::size_t r = 0; r < x.rows; ++r) s[r] = tree_.predict_row(x.row(r));
  return s;
}

std::vector<double> TreeModel::feature_importances() const {
  return normalized(tree_.raw_importances());
}

void ForestModel::fit(const Matrix& x, std::span<const int> labels, std::uint64_t seed) {
  n_features_ = x.cols;
  tree_detail::TreeParams p;
  p.max_depth = hp_.max_depth;
  p.min_samples_leaf = hp_.min_samples_leaf;
  p.random_thresholds = extra_;
  p.max_features = hp_.max_features > 0
                       ? static_cast<std::size_t>(hp_.max_features)
                       : std::max<std::size_t>(1, static_cast<std::size_t>(
                                                      std::sqrt(static_cast<double>(x.cols))));
  trees_.assign(std::max<std::size_t>(1, hp_.n_trees), {});
  parallel_for(trees_.size(), [&](std::size_t t) {
    Rng rng(derive_seed(seed, t));
    std::vector<double> w(x.rows, extra_ ? 1.0 : 0.0);
    if (!extra_) {
      for (std::size_t i = 0; i < x.rows; ++i) w[rng.index(x.rows)] += 1.0;
    }
    trees_[t].fit(x, labels, w, p, rng);
  });
}

std::vector<double> ForestModel::scores(const Matrix& x) const {
  check_columns(x);
  std::vector<double> s(x.rows, 0.0);
  for (std::size_t r = 0; r < x.rows; ++r) {
    std::size_t votes = 0;
    for (const auto& t : trees_) votes += t.predict_row(x.row(r)) > 0.5 ? 1 : 0;
    s[r] = static_cast<double>(votes) / static_cast<double>(trees_.size());
  }
  return s;
}

std::vector<double> ForestModel::feature_importances() const {
  std::vector<double> sum(n_features_, 0.0);
  for (const auto& t : trees_) {
    const auto imp = normalized(t.raw_importances());
    const double total = std::accumulate(t.raw_importances().begin(), t.raw_importances().end(), 0.0);
    if (total <= 0) continue;  // a single-leaf tree contributes nothing
    for (std::size_t f = 0; f < n_features_; ++f) sum[f] += imp[f];
  }
  for (double& v : sum) v /= static_cast<double>(std::max<std::size_t>(1, trees_.size()));
  return normalized(std::move(sum));
}

void KnnModel::fit(const Matrix& x, std::span<const int> labels, std::uint64_t) {
  n_features_ = x.cols;
  train_ = x;
  labels_.assign(labels.begin(), labels.end());
}

std::vector<double> KnnModel::scores(const Matrix& x) const {
  check_columns(x);
  const std::size_t k = std::max<std::size_t>(1, std::min(hp_.knn_k, train_.rows));
  std::vector<double> s(x.rows);
  parallel_for(x.rows, [&](std::size_t r) {
    std::vector<std::pair<double, std::size_t>> dist(train_.rows);
    const auto q = x.row(r);
    for (std::size_t i = 0; i < train_.rows; ++i) {
      const auto t = train_.row(i);
      double d2 = 0;
      for (std::size_t c = 0; c < q.size(); ++c) d2 += (q[c] - t[c]) * (q[c] - t[c]);
      dist[i] = {d2, i};
    }
    // Pair ordering breaks distance ties by training index.
    std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k), dist.end());
    std::size_t bots = 0;
    for (std::size_t j = 0; j < k; ++j) bots += labels_[dist[j].second] == 1 ? 1 : 0;
    s[r] = static_cast<double>(bots) / static_cast<double>(k);
  });
  return s;
}

void GaussianNbModel::fit(const Matrix& x, std::span<const int> labels, std::uint64_t) {
  n_features_ = x.cols;
  double count[2] = {0, 0};
  for (int c = 0; c < 2; ++c) {
    mean_[c].assign(x.cols, 0.0);
    var_[c].assign(x.cols, 0.0);
  }
  for (std::size_t r = 0; r < x.rows; ++r) {
    const int c = labels[r] == 1 ? 1 : 0;
    count[c] += 1;
    for (std::size_t f = 0; f < x.cols; ++f) mean_[c][f] += x.at(r, f);
  }
  for (int c = 0; c < 2; ++c) {
    for (double& m : mean_[c]) m /= count[c];
  }
  for (std::size_t r = 0; r < x.rows; ++r) {
    const int c = labels[r] == 1 ? 1 : 0;
    for (std::size_t f = 0; f < x.cols; ++f) {
      const double d = x.at(r, f) - mean_[c][f];
      var_[c][f] += d * d;
    }
  }
  // Smoothing proportional to the largest overall feature variance.
  double max_var = 0;
  for (std::size_t f = 0; f < x.cols; ++f) {
    double mean = 0;
    for (std::size_t r = 0; r < x.rows; ++r) mean += x.at(r, f);
    mean /= static_cast<double>(x.rows);
    double v = 0;
    for (std::size_t r = 0; r < x.rows; ++r) v += (x.at(r, f) - mean) * (x.at(r, f) - mean);
    max_var = std::max(max_var, v / static_cast<double>(x.rows));
  }
  const double eps = std::max(hp_.nb_var_smoothing * max_var, 1e-300);
  for (int c = 0; c < 2; ++c) {
    for (double& v : var_[c]) v = v / count[c] + eps;
    prior_[c] = count[c] / static_cast<double>(x.rows);
  }
}

std::vector<double> GaussianNbModel::scores(const Matrix& x) const {
  check_columns(x);
  std::vector<double> s(x.rows);
  constexpr double kLog2Pi = 1.8378770664093453;
  for (std::size_t r = 0; r < x.rows; ++r) {
    double ll[2];
    for (int c = 0; c < 2; ++c) {
      ll[c] = std::log(prior_[c]);
      for (std::size_t f = 0; f < x.cols; ++f) {
        const double d = x.at(r, f) - mean_[c][f];
        ll[c] -= 0.5 * (kLog2Pi + std::log(var_[c][f]) + d * d / var_[c][f]);
      }
    }
    s[r] = sigmoid(ll[1] - ll[0]);
  }
  return s;
}

void LogisticModel::fit(const Matrix& x, std::span<const int> labels, std::uint64_t) {
  n_features_ = x.cols;
  weights_.assign(x.cols, 0.0);
  bias_ = 0.0;
  const auto n = static_cast<double>(x.rows);
  std::vector<double> grad(x.cols);
  for (std::size_t epoch = 0; epoch < hp_.epochs; ++epoch) {
    std::fill(grad.begin(), grad.end(), 0.0);
    double grad_b = 0;
    for (std::size_t r = 0; r < x.rows; ++r) {
      const auto row = x.row(r);
      double z = bias_;
      for (std::size_t f = 0; f < x.cols; ++f) z += weights_[f] * row[f];
      const double err = sigmoid(z) - (labels[r] == 1 ? 1.0 : 0.0);
      for (std::size_t f = 0; f < x.cols; ++f) grad[f] += err * row[f];
      grad_b += err;
    }
    for (std::size_t f = 0; f < x.cols; ++f) {
      weights_[f] -= hp_.learning_rate * (grad[f] / n + hp_.l2 * weights_[f]);
    }
    bias_ -= hp_.learning_rate * grad_b / n;
  }
}

std::vector<double> LogisticModel::scores(const Matrix& x) const {
  check_columns(x);
  std::vector<double> s(x.rows);
  for (std::size_t r = 0; r < x.rows; ++r) {
    const auto row = x.row(r);
    double z = bias_;
    for (std::size_t f = 0; f < x.cols; ++f) z += weights_[f] * row[f];
    s[r] = sigmoid(z);
  }
  return s;
}

void DummyModel::fit(const Matrix& x, std::span<const int> labels, std::uint64_t) {
  n_features_ = x.cols;
  const auto bots = std::count(labels.begin(), labels.end(), 1);
  prior_ = static_cast<double>(bots) / static_cast<double>(labels.size());
}

std::vector<double> DummyModel::scores(const Matrix& x) const {
  check_columns(x);
  return std::vector<double>(x.rows, prior_);
}

}  // namespace model_detail

void Model::check_columns(const Matrix& x) const {
  if (x.cols != n_features_) {
    throw Error(ErrorKind::SchemaMismatch,
                "model trained on " + std::to_string(n_features_) + " columns, got " +
                    std::to_string(x.cols));
  }
}

Prediction Model::predict(const Matrix& x) const {
  Prediction p;
  p.scores = scores(x);
  p.labels.reserve(p.scores.size());
  for (double s : p.scores) p.labels.push_back(s >= 0.5 ? 1 : 0);
  return p;
}

const std::vector<std::string>& known_models() {
  static const std::vector<std::string> kIds{"decision_tree", "random_forest", "extra_trees",
                                             "knn", "gaussian_nb", "logistic_regression",
                                             "dummy_majority"};
  return kIds;
}

std::unique_ptr<Model> make_model(std::string_view model_id, const Hyperparams& hp) {
  using namespace model_detail;
  if (model_id == "decision_tree") return std::make_unique<TreeModel>(hp);
  if (model_id == "random_forest") return std::make_unique<ForestModel>(hp, false);
  if (model_id == "extra_trees") return std::make_unique<ForestModel>(hp, true);
  if (model_id == "knn") return std::make_unique<KnnModel>(hp);
  if (model_id == "gaussian_nb") return std::make_unique<GaussianNbModel>(hp);
  if (model_id == "logistic_regression") return std::make_unique<LogisticModel>(hp);
  if (model_id == "dummy_majority") return std::make_unique<DummyModel>();
  throw Error(ErrorKind::UnknownModel, "unknown model '" + std::string(model_id) + "'");
}

void require_two_classes(std::span<const int> labels) {
  bool pos = false;
  bool neg = false;
  for (int l : labels) (l == 1 ? pos : neg) = true;
  if (!pos || !neg) throw Error(ErrorKind::DegenerateLabels, "labels contain a single class");
}

std::unique_ptr<Model> train(std::string_view model_id, const Matrix& x,
                             std::span<const int> labels, const Hyperparams& hp,
                             std::uint64_t seed) {
  auto model = make_model(model_id, hp);
  if (labels.size() != x.rows) throw Error(ErrorKind::InvalidArgument, "label count != rows");
  require_two_classes(labels);
  model->fit(x, labels, seed);
  return model;
}

std::unique_ptr<Model> make_logistic(std::vector<double> weights, double bias) {
  auto m = std::make_unique<model_detail::LogisticModel>(Hyperparams{});
  m->set(std::move(weights), bias);
  return m;
}

}  // namespace botminer
