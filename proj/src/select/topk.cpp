#include <algorithm>
#include <chrono>

#include "botminer/error.hpp"
#include "botminer/select.hpp"

namespace botminer {

StoppingTrace run_stopping_rule(std::size_t k_limit, std::size_t patience,
                                const std::function<CurvePoint(std::size_t)>& evaluate) {
  StoppingTrace t;
  double best = 0;
  std::size_t misses = 0;
  for (std::size_t k = 1; k <= k_limit; ++k) {
    CurvePoint p = evaluate(k);
    p.k = k;
    t.curve.push_back(p);
    if (t.chosen_k == 0 || p.accuracy > best) {
      best = p.accuracy;
      t.chosen_k = k;
      misses = 0;
    } else if (++misses >= patience) {
      break;
    }
  }
  return t;
}

SelectionResult select_topk(const DesignProvider& design, std::span<const int> labels,
                            const RankingResult& ranking, const SelectionSpec& spec,
                            const CvSpec& cv, const Hyperparams& hp, std::uint64_t seed,
                            FitObserver* observer) {
  if (spec.k_max < 1) throw Error(ErrorKind::ConfigError, "k_max must be at least 1");
  if (spec.patience < 1) throw Error(ErrorKind::ConfigError, "patience must be at least 1");
  if (ranking.scores.empty()) throw Error(ErrorKind::EmptyDataset, "empty ranking");
  require_two_classes(labels);
  const auto folds = make_folds(labels, cv);

  std::vector<std::size_t> order;
  for (const auto& f : ranking.scores) order.push_back(f.column);
  const std::size_t limit = std::min(spec.k_max, order.size());

  const StoppingTrace trace = run_stopping_rule(limit, spec.patience, [&](std::size_t k) {
    const std::span<const std::size_t> cols(order.data(), k);
    const auto start = std::chrono::steady_clock::now();
    const EvaluationReport rep =
        cross_validate(spec.model, design, labels, cols, cv, hp, seed, observer, &folds);
    const auto stop = std::chrono::steady_clock::now();
    return CurvePoint{k, rep.accuracy.mean, std::chrono::duration<double>(stop - start).count()};
  });

  SelectionResult r;
  r.ranking = ranking;
  r.curve = trace.curve;
  r.chosen_k = trace.chosen_k;
  for (std::size_t i = 0; i < r.chosen_k; ++i) {
    r.chosen_features.push_back(ranking.scores[i].name);
    r.chosen_columns.push_back(ranking.scores[i].column);
  }
  return r;
}

}  // namespace botminer
