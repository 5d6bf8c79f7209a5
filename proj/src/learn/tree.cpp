#include "tree.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace botminer::tree_detail {

double gini(double w_pos, double w_total) {
  if (w_total <= 0) return 0.0;
  const double p = w_pos / w_total;
  return 2.0 * p * (1.0 - p);
}

namespace {

struct Split {
  int feature = -1;
  double threshold = 0;
  double gain = -std::numeric_limits<double>::infinity();
};

struct Pending {
  int node;
  std::size_t begin;
  std::size_t end;
  int depth;
};

}  // namespace

void DecisionTree::fit(const Matrix& x, std::span<const int> y, std::span<const double> weights,
                       const TreeParams& params, Rng& rng) {
  const std::size_t d = x.cols;
  importances_.assign(d, 0.0);
  nodes_.clear();

  std::vector<std::size_t> samples;
  samples.reserve(x.rows);
  for (std::size_t i = 0; i < x.rows; ++i) {
    if (weights[i] > 0) samples.push_back(i);
  }

  const std::size_t min_leaf = std::max<std::size_t>(1, params.min_samples_leaf);
  const bool subsample = params.max_features > 0 && params.max_features < d;
  std::vector<std::size_t> feature_order(d);
  std::vector<std::pair<double, std::size_t>> column;
  column.reserve(samples.size());

  nodes_.push_back(Node{});
  std::vector<Pending> stack{{0, 0, samples.size(), 0}};
  while (!stack.empty()) {
    const Pending p = stack.back();
    stack.pop_back();

    double w_total = 0;
    double w_pos = 0;
    for (std::size_t k = p.begin; k < p.end; ++k) {
      const std::size_t i = samples[k];
      w_total += weights[i];
      if (y[i] == 1) w_pos += weights[i];
    }
    nodes_[p.node].weight = w_total;
    nodes_[p.node].value = w_total > 0 ? w_pos / w_total : 0.0;
    const double impurity = gini(w_pos, w_total);
    const std::size_t count = p.end - p.begin;
    if (impurity <= 0.0 || (params.max_depth >= 0 && p.depth >= params.max_depth) ||
        count < 2 * min_leaf) {
      continue;
    }

    Split best;
    std::iota(feature_order.begin(), feature_order.end(), std::size_t{0});
    std::size_t visited = 0;
    for (std::size_t fi = 0; fi < d; ++fi) {
      if (subsample) {
        if (visited >= params.max_features) break;
        std::swap(feature_order[fi], feature_order[fi + rng.index(d - fi)]);
      }
      const std::size_t f = feature_order[fi];
      column.clear();
      double lo = std::numeric_limits<double>::infinity();
      double hi = -lo;
      for (std::size_t k = p.begin; k < p.end; ++k) {
        const double v = x.at(samples[k], f);
        column.emplace_back(v, samples[k]);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
      if (!(lo < hi)) continue;  // constant here; does not count toward max_features
      ++visited;

      if (params.random_thresholds) {
        const double thr = rng.uniform(lo, hi);
        double wl = 0, wl_pos = 0;
        std::size_t nl = 0;
        for (const auto& [v, i] : column) {
          if (v <= thr) {
            wl += weights[i];
            if (y[i] == 1) wl_pos += weights[i];
            ++nl;
          }
        }
        const std::size_t nr = count - nl;
        if (nl < min_leaf || nr < min_leaf) continue;
        const double wr = w_total - wl;
        const double wr_pos = w_pos - wl_pos;
        const double gain = w_total * impurity - wl * gini(wl_pos, wl) - wr * gini(wr_pos, wr);
        if (gain > best.gain) best = Split{static_cast<int>(f), thr, gain};
        continue;
      }

      std::sort(column.begin(), column.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      double wl = 0, wl_pos = 0;
      for (std::size_t k = 0; k + 1 < column.size(); ++k) {
        const std::size_t i = column[k].second;
        wl += weights[i];
        if (y[i] == 1) wl_pos += weights[i];
        const double v = column[k].first;
        const double next = column[k + 1].first;
        if (v == next) continue;
        const std::size_t nl = k + 1;
        const std::size_t nr = count - nl;
        if (nl < min_leaf || nr < min_leaf) continue;
        const double wr = w_total - wl;
        const double wr_pos = w_pos - wl_pos;
        const double gain = w_total * impurity - wl * gini(wl_pos, wl) - wr * gini(wr_pos, wr);
        if (gain > best.gain) {
          double thr = v + (next - v) / 2.0;
          if (!(thr < next)) thr = v;
          best = Split{static_cast<int>(f), thr, gain};
        }
      }
    }
    if (best.feature < 0) continue;

    const auto f = static_cast<std::size_t>(best.feature);
    const auto mid = std::stable_partition(
        samples.begin() + static_cast<std::ptrdiff_t>(p.begin),
        samples.begin() + static_cast<std::ptrdiff_t>(p.end),
        [&](std::size_t i) { return x.at(i, f) <= best.threshold; });
    const auto split_at = static_cast<std::size_t>(mid - samples.begin());

    importances_[f] += std::max(0.0, best.gain);
    const int left = static_cast<int>(nodes_.size());
    nodes_.push_back(Node{});
    const int right = static_cast<int>(nodes_.size());
    nodes_.push_back(Node{});
    Node& n = nodes_[p.node];
    n.feature = best.feature;
    n.threshold = best.threshold;
    n.left = left;
    n.right = right;
    stack.push_back({right, split_at, p.end, p.depth + 1});
    stack.push_back({left, p.begin, split_at, p.depth + 1});
  }
}

double DecisionTree::predict_row(std::span<const double> row) const {
  int i = 0;
  while (nodes_[static_cast<std::size_t>(i)].feature >= 0) {
    const Node& n = nodes_[static_cast<std::size_t>(i)];
    i = row[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left : n.right;
  }
  return nodes_[static_cast<std::size_t>(i)].value;
}

}  // namespace botminer::tree_detail
