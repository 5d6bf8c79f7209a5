#include <algorithm>
#include <numeric>

#include "botminer/error.hpp"
#include "botminer/learn.hpp"

namespace botminer {

ConfusionMatrix confusion(std::span<const int> truth, std::span<const int> predicted) {
  if (truth.size() != predicted.size()) {
    throw Error(ErrorKind::InvalidArgument, "confusion: length mismatch");
  }
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const bool t = truth[i] == 1;
    const bool p = predicted[i] == 1;
    if (t && p) ++cm.tp;
    else if (!t && !p) ++cm.tn;
    else if (!t && p) ++cm.fp;
    else ++cm.fn;
  }
  return cm;
}

double f1_score(double precision, double recall) {
  const double s = precision + recall;
  return s > 0 ? 2.0 * precision * recall / s : 0.0;
}

double auc_score(std::span<const double> scores, std::span<const int> labels, bool* undefined) {
  const std::size_t n = scores.size();
  std::size_t pos = 0;
  for (int l : labels) pos += l == 1 ? 1 : 0;
  const std::size_t neg = n - pos;
  if (pos == 0 || neg == 0) {
    if (undefined) *undefined = true;
    return 0.0;
  }
  if (undefined) *undefined = false;
  std::vector<std::size_t> order = iota_indices(n);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  // Ranks are 1-based; tied scores share their average rank.
  double rank_sum_pos = 0.0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && scores[order[j + 1]] == scores[order[i]]) ++j;
    const double avg_rank = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (std::size_t k = i; k <= j; ++k) {
      if (labels[order[k]] == 1) rank_sum_pos += avg_rank;
    }
    i = j + 1;
  }
  const double p = static_cast<double>(pos);
  const double u = rank_sum_pos - p * (p + 1.0) / 2.0;
  return u / (p * static_cast<double>(neg));
}

Metrics compute_metrics(const ConfusionMatrix& cm, std::span<const double> scores,
                        std::span<const int> labels) {
  Metrics m;
  const auto tp = static_cast<double>(cm.tp);
  const auto total = static_cast<double>(cm.total());
  m.accuracy = total > 0 ? (tp + static_cast<double>(cm.tn)) / total : 0.0;
  if (cm.tp + cm.fp > 0) {
    m.precision = tp / static_cast<double>(cm.tp + cm.fp);
  } else {
    m.precision_undefined = true;
  }
  if (cm.tp + cm.fn > 0) {
    m.recall = tp / static_cast<double>(cm.tp + cm.fn);
  } else {
    m.recall_undefined = true;
  }
  // Same value as 2pr/(p+r) but free of the intermediate rounding.
  const std::size_t f1_den = 2 * cm.tp + cm.fp + cm.fn;
  if (f1_den > 0) {
    m.f1 = 2.0 * tp / static_cast<double>(f1_den);
  } else {
    m.f1_undefined = true;
  }
  m.auc = auc_score(scores, labels, &m.auc_undefined);
  return m;
}

}  // namespace botminer
