#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "botminer/learn.hpp"
#include "botminer/parallel.hpp"

namespace botminer::tree_detail {

struct TreeParams {
  int max_depth = -1;
  std::size_t min_samples_leaf = 1;
  /// Candidate features per node; 0 means all.
  std::size_t max_features = 0;
  bool random_thresholds = false;
};

struct Node {
  int feature = -1;  // -1 for a leaf
  double threshold = 0;
  int left = -1;
  int right = -1;
  double value = 0;  // weighted bot fraction
  double weight = 0;
};

/// Binary CART classifier with weighted Gini impurity. Samples go left when
/// x[feature] <= threshold.
class DecisionTree {
 public:
  /// weights may be fractional or bootstrap counts; zero-weight samples are
  /// ignored.
  void fit(const Matrix& x, std::span<const int> y, std::span<const double> weights,
           const TreeParams& params, Rng& rng);

  double predict_row(std::span<const double> row) const;

  /// Unnormalized total weighted impurity decrease per feature.
  const std::vector<double>& raw_importances() const { return importances_; }

  const std::vector<Node>& nodes() const { return nodes_; }
  std::vector<Node>& nodes() { return nodes_; }
  void set_raw_importances(std::vector<double> v) { importances_ = std::move(v); }

 private:
  std::vector<Node> nodes_;
  std::vector<double> importances_;
};

double gini(double w_pos, double w_total);

}  // namespace botminer::tree_detail
