#include <algorithm>
#include <array>
#include <cmath>
#include <map>

#include "botminer/error.hpp"
#include "botminer/parallel.hpp"
#include "botminer/select.hpp"

namespace botminer {

std::string_view to_string(RankMethod m) {
  switch (m) {
    case RankMethod::chi2: return "chi2";
    case RankMethod::mutual_info: return "mutual_info";
    case RankMethod::fisher: return "fisher";
    case RankMethod::rf_importance: return "rf_importance";
  }
  return "";
}

std::optional<RankMethod> parse_rank_method(std::string_view s) {
  for (RankMethod m : all_rank_methods()) {
    if (to_string(m) == s) return m;
  }
  return std::nullopt;
}

const std::vector<RankMethod>& all_rank_methods() {
  static const std::vector<RankMethod> kAll{RankMethod::chi2, RankMethod::mutual_info,
                                            RankMethod::fisher, RankMethod::rf_importance};
  return kAll;
}

std::vector<int> discretize(std::span<const double> column, const BinSpec& spec) {
  std::vector<double> sorted(column.begin(), column.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> distinct = sorted;
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

  std::vector<double> cuts;
  if (distinct.size() <= spec.bins) {
    cuts.assign(distinct.begin() + (distinct.empty() ? 0 : 1), distinct.end());
  } else {
    const std::size_t n = sorted.size();
    for (std::size_t i = 1; i < spec.bins; ++i) {
      const double c = sorted[i * n / spec.bins];
      if (c > sorted.front() && (cuts.empty() || c > cuts.back())) cuts.push_back(c);
    }
  }
  std::vector<int> out(column.size());
  for (std::size_t i = 0; i < column.size(); ++i) {
    out[i] = static_cast<int>(std::upper_bound(cuts.begin(), cuts.end(), column[i]) - cuts.begin());
  }
  return out;
}

namespace {

struct Table {
  std::map<int, std::array<double, 2>> joint;
  std::array<double, 2> class_totals{0, 0};
  double n = 0;
};

Table contingency(std::span<const int> x, std::span<const int> labels) {
  Table t;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const int c = labels[i] == 1 ? 1 : 0;
    t.joint[x[i]][c] += 1;
    t.class_totals[c] += 1;
  }
  t.n = static_cast<double>(x.size());
  return t;
}

}  // namespace

double chi2_score(std::span<const int> x, std::span<const int> labels) {
  const Table t = contingency(x, labels);
  double chi2 = 0;
  for (const auto& [value, counts] : t.joint) {
    const double row = counts[0] + counts[1];
    for (int c = 0; c < 2; ++c) {
      const double expected = row * t.class_totals[c] / t.n;
      if (expected > 0) chi2 += (counts[c] - expected) * (counts[c] - expected) / expected;
    }
  }
  return chi2;
}

double mutual_info_score(std::span<const int> x, std::span<const int> labels) {
  const Table t = contingency(x, labels);
  double mi = 0;
  for (const auto& [value, counts] : t.joint) {
    const double px = (counts[0] + counts[1]) / t.n;
    for (int c = 0; c < 2; ++c) {
      if (counts[c] == 0) continue;
      const double pxy = counts[c] / t.n;
      const double py = t.class_totals[c] / t.n;
      mi += pxy * std::log2(pxy / (px * py));
    }
  }
  return std::max(0.0, mi);
}

double fisher_score(std::span<const double> x, std::span<const int> labels) {
  double sum[2] = {0, 0};
  double count[2] = {0, 0};
  double total = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const int c = labels[i] == 1 ? 1 : 0;
    sum[c] += x[i];
    count[c] += 1;
    total += x[i];
  }
  const double mu = total / static_cast<double>(x.size());
  double between = 0;
  double within = 0;
  for (int c = 0; c < 2; ++c) {
    if (count[c] == 0) continue;
    const double mu_c = sum[c] / count[c];
    between += count[c] * (mu_c - mu) * (mu_c - mu);
    double ss = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if ((labels[i] == 1 ? 1 : 0) == c) ss += (x[i] - mu_c) * (x[i] - mu_c);
    }
    within += ss;  // n_c * population variance
  }
  return between / (within + kFisherEpsilon);
}

RankingResult rank(const Matrix& m, std::span<const int> labels,
                   std::span<const std::string> names, RankMethod method,
                   const BinSpec& binning, std::uint64_t seed, const Hyperparams& hp) {
  if (m.rows == 0 || m.cols == 0) throw Error(ErrorKind::EmptyDataset, "nothing to rank");
  if (names.size() != m.cols || labels.size() != m.rows) {
    throw Error(ErrorKind::InvalidArgument, "ranking inputs disagree in shape");
  }
  require_two_classes(labels);

  std::vector<double> scores(m.cols, 0.0);
  if (method == RankMethod::rf_importance) {
    scores = train("random_forest", m, labels, hp, seed)->feature_importances();
  } else {
    parallel_for(m.cols, [&](std::size_t c) {
      const std::vector<double> col = m.column(c);
      switch (method) {
        case RankMethod::chi2: scores[c] = chi2_score(discretize(col, binning), labels); break;
        case RankMethod::mutual_info:
          scores[c] = mutual_info_score(discretize(col, binning), labels);
          break;
        default: scores[c] = fisher_score(col, labels); break;
      }
    });
  }

  RankingResult r;
  r.method = method;
  r.seed = seed;
  for (std::size_t c = 0; c < m.cols; ++c) r.scores.push_back({names[c], scores[c], c});
  std::stable_sort(r.scores.begin(), r.scores.end(),
                   [](const RankedFeature& a, const RankedFeature& b) { return a.score > b.score; });
  return r;
}

}  // namespace botminer
