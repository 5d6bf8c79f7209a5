#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>

#include "botminer/cv.hpp"
#include "botminer/error.hpp"
#include "botminer/parallel.hpp"

namespace botminer {

std::vector<std::vector<std::size_t>> make_folds(std::span<const int> labels, const CvSpec& cv) {
  const std::size_t n = labels.size();
  if (cv.folds < 2 || cv.folds > n) {
    throw Error(ErrorKind::StratificationFailure,
                std::to_string(cv.folds) + " folds requested for " + std::to_string(n) + " rows");
  }
  std::vector<std::vector<std::size_t>> groups;
  if (cv.stratified) {
    groups.resize(2);
    for (std::size_t i = 0; i < n; ++i) groups[labels[i] == 1 ? 1 : 0].push_back(i);
    for (const auto& g : groups) {
      if (!g.empty() && g.size() < cv.folds) {
        throw Error(ErrorKind::StratificationFailure,
                    "a class has " + std::to_string(g.size()) + " rows, fewer than " +
                        std::to_string(cv.folds) + " folds");
      }
    }
  } else {
    groups.push_back(iota_indices(n));
  }
  Rng rng(cv.seed);
  std::vector<std::vector<std::size_t>> folds(cv.folds);
  std::size_t next = 0;
  for (auto& g : groups) {
    rng.shuffle(std::span<std::size_t>(g));
    for (std::size_t i : g) {
      folds[next].push_back(i);
      next = (next + 1) % cv.folds;
    }
  }
  for (auto& f : folds) std::sort(f.begin(), f.end());
  return folds;
}

std::vector<std::size_t> training_rows(const std::vector<std::vector<std::size_t>>& folds,
                                       std::size_t f, std::size_t n) {
  std::vector<bool> in_test(n, false);
  for (std::size_t i : folds[f]) in_test[i] = true;
  std::vector<std::size_t> out;
  out.reserve(n - folds[f].size());
  for (std::size_t i = 0; i < n; ++i) {
    if (!in_test[i]) out.push_back(i);
  }
  return out;
}

void RecordingFitObserver::on_fold(std::size_t fold, std::span<const std::size_t> test_rows) {
  std::lock_guard lock(mutex_);
  if (test_rows_.size() <= fold) test_rows_.resize(fold + 1);
  test_rows_[fold].assign(test_rows.begin(), test_rows.end());
}

void RecordingFitObserver::on_fit(std::string_view component, std::size_t fold,
                                  std::span<const std::size_t> rows) {
  std::lock_guard lock(mutex_);
  events_.push_back({std::string(component), fold, {rows.begin(), rows.end()}});
}

std::size_t RecordingFitObserver::test_rows_touched() const {
  std::lock_guard lock(mutex_);
  std::size_t touched = 0;
  for (const auto& e : events_) {
    if (e.fold >= test_rows_.size()) continue;
    const std::set<std::size_t> test(test_rows_[e.fold].begin(), test_rows_[e.fold].end());
    for (std::size_t r : e.rows) touched += test.contains(r) ? 1 : 0;
  }
  return touched;
}

std::vector<RecordingFitObserver::FitEvent> RecordingFitObserver::events() const {
  std::lock_guard lock(mutex_);
  return events_;
}

std::size_t RecordingFitObserver::fit_count(std::string_view component) const {
  std::lock_guard lock(mutex_);
  return static_cast<std::size_t>(std::count_if(
      events_.begin(), events_.end(), [&](const FitEvent& e) { return e.component == component; }));
}

FoldDesign MatrixDesign::materialize(std::span<const std::size_t> train_rows,
                                     std::span<const std::size_t> test_rows,
                                     std::span<const std::size_t> columns, std::size_t,
                                     FitObserver*) const {
  return {m_.select(train_rows, columns), m_.select(test_rows, columns)};
}

MetricSummary summarize(std::span<const double> values) {
  MetricSummary s;
  if (values.empty()) return s;
  const auto n = static_cast<double>(values.size());
  long double sum = 0;
  for (double v : values) sum += v;
  s.mean = static_cast<double>(sum / values.size());
  double ss = 0;
  for (double v : values) ss += (v - s.mean) * (v - s.mean);
  s.std = std::sqrt(ss / n);
  return s;
}

EvaluationReport cross_validate(std::string_view model_id, const DesignProvider& design,
                                std::span<const int> labels, std::span<const std::size_t> columns,
                                const CvSpec& cv, const Hyperparams& hp, std::uint64_t seed,
                                FitObserver* observer,
                                const std::vector<std::vector<std::size_t>>* folds_override) {
  make_model(model_id, hp);  // fail fast on an unknown id
  require_two_classes(labels);
  const auto folds = folds_override ? *folds_override : make_folds(labels, cv);
  const std::size_t n = labels.size();

  EvaluationReport report;
  report.model_id = std::string(model_id);
  report.columns.assign(columns.begin(), columns.end());
  report.folds.resize(folds.size());

  parallel_for(folds.size(), [&](std::size_t f) {
    const std::vector<std::size_t> train = training_rows(folds, f, n);
    const std::vector<std::size_t>& test = folds[f];
    if (observer) observer->on_fold(f, test);
    FoldDesign d = design.materialize(train, test, columns, f, observer);

    if (observer) observer->on_fit("scaler", f, train);
    const Scaler scaler = Scaler::fit(d.train);
    scaler.apply(d.train);
    scaler.apply(d.test);

    std::vector<int> y_train(train.size());
    for (std::size_t i = 0; i < train.size(); ++i) y_train[i] = labels[train[i]];
    std::vector<int> y_test(test.size());
    for (std::size_t i = 0; i < test.size(); ++i) y_test[i] = labels[test[i]];

    if (observer) observer->on_fit("model", f, train);
    const auto start = std::chrono::steady_clock::now();
    const auto model = botminer::train(model_id, d.train, y_train, hp, derive_seed(seed, f));
    const auto stop = std::chrono::steady_clock::now();
    const Prediction p = model->predict(d.test);

    FoldResult& r = report.folds[f];
    r.confusion = confusion(y_test, p.labels);
    r.metrics = compute_metrics(r.confusion, p.scores, y_test);
    r.train_seconds = std::chrono::duration<double>(stop - start).count();
  });

  std::vector<double> acc, auc, rec, prec, f1;
  for (const auto& r : report.folds) {
    acc.push_back(r.metrics.accuracy);
    auc.push_back(r.metrics.auc);
    rec.push_back(r.metrics.recall);
    prec.push_back(r.metrics.precision);
    f1.push_back(r.metrics.f1);
    report.train_time_seconds += r.train_seconds;
  }
  report.accuracy = summarize(acc);
  report.auc = summarize(auc);
  report.recall = summarize(rec);
  report.precision = summarize(prec);
  report.f1 = summarize(f1);
  return report;
}

}  // namespace botminer
