#pragma once

#include <vector>

#include "botminer/learn.hpp"
#include "tree.hpp"

namespace botminer::model_detail {

class TreeModel final : public Model {
 public:
  explicit TreeModel(const Hyperparams& hp) : hp_(hp) {}
  std::string_view id() const override { return "decision_tree"; }
  void fit(const Matrix& x, std::span<const int> labels, std::uint64_t seed) override;
  std::vector<double> scores(const Matrix& x) const override;
  std::vector<double> feature_importances() const override;

  Hyperparams hp_;
  tree_detail::DecisionTree tree_;
};

/// Random forest (bagged, sqrt(d) features) or extra trees (random
/// thresholds, whole sample).
class ForestModel final : public Model {
 public:
  ForestModel(const Hyperparams& hp, bool extra) : hp_(hp), extra_(extra) {}
  std::string_view id() const override { return extra_ ? "extra_trees" : "random_forest"; }
  void fit(const Matrix& x, std::span<const int> labels, std::uint64_t seed) override;
  /// Fraction of trees voting bot.
  std::vector<double> scores(const Matrix& x) const override;
  std::vector<double> feature_importances() const override;

  Hyperparams hp_;
  bool extra_;
  std::vector<tree_detail::DecisionTree> trees_;
};

class KnnModel final : public Model {
 public:
  explicit KnnModel(const Hyperparams& hp) : hp_(hp) {}
  std::string_view id() const override { return "knn"; }
  void fit(const Matrix& x, std::span<const int> labels, std::uint64_t seed) override;
  std::vector<double> scores(const Matrix& x) const override;

  Hyperparams hp_;
  Matrix train_;
  std::vector<int> labels_;
};

class GaussianNbModel final : public Model {
 public:
  explicit GaussianNbModel(const Hyperparams& hp) : hp_(hp) {}
  std::string_view id() const override { return "gaussian_nb"; }
  void fit(const Matrix& x, std::span<const int> labels, std::uint64_t seed) override;
  std::vector<double> scores(const Matrix& x) const override;

  Hyperparams hp_;
  double prior_[2] = {0, 0};
  std::vector<double> mean_[2];
  std::vector<double> var_[2];
};

class LogisticModel final : public Model {
 public:
  explicit LogisticModel(const Hyperparams& hp) : hp_(hp) {}
  std::string_view id() const override { return "logistic_regression"; }
  void fit(const Matrix& x, std::span<const int> labels, std::uint64_t seed) override;
  std::vector<double> scores(const Matrix& x) const override;

  void set(std::vector<double> w, double b) {
    n_features_ = w.size();
    weights_ = std::move(w);
    bias_ = b;
  }

  Hyperparams hp_;
  std::vector<double> weights_;
  double bias_ = 0;
};

class DummyModel final : public Model {
 public:
  std::string_view id() const override { return "dummy_majority"; }
  void fit(const Matrix& x, std::span<const int> labels, std::uint64_t seed) override;
  /// Training-set bot prior for every row.
  std::vector<double> scores(const Matrix& x) const override;

  double prior_ = 0;
};

}  // namespace botminer::model_detail
