#pragma once

#include <cstddef>
#include <cstdint>
#include <mutex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "botminer/learn.hpp"

namespace botminer {

struct CvSpec {
  std::size_t folds = 10;
  bool stratified = true;
  std::uint64_t seed = 0;
};

/// Test-row indices of each fold. Stratified: each class is shuffled with
/// the seed and dealt round-robin, the fold pointer carrying over from one
/// class to the next, so fold sizes differ by at most one and per-class
/// counts by at most one. Throws StratificationFailure when folds < 2,
/// folds > n, or (stratified) a class has fewer rows than folds.
std::vector<std::vector<std::size_t>> make_folds(std::span<const int> labels, const CvSpec& cv);

/// Training rows of fold f: every row not in folds[f], ascending.
std::vector<std::size_t> training_rows(const std::vector<std::vector<std::size_t>>& folds,
                                       std::size_t f, std::size_t n);

/// Hook told about every fitted component and the rows it saw. Must be
/// thread-safe: folds run concurrently.
class FitObserver {
 public:
  virtual ~FitObserver() = default;
  virtual void on_fold(std::size_t fold, std::span<const std::size_t> test_rows) = 0;
  virtual void on_fit(std::string_view component, std::size_t fold,
                      std::span<const std::size_t> rows) = 0;
};

class RecordingFitObserver final : public FitObserver {
 public:
  struct FitEvent {
    std::string component;
    std::size_t fold;
    std::vector<std::size_t> rows;
  };

  void on_fold(std::size_t fold, std::span<const std::size_t> test_rows) override;
  void on_fit(std::string_view component, std::size_t fold,
              std::span<const std::size_t> rows) override;

  /// Rows handed to any fit that belong to the same fold's test set.
  std::size_t test_rows_touched() const;
  std::vector<FitEvent> events() const;
  std::size_t fit_count(std::string_view component) const;

 private:
  mutable std::mutex mutex_;
  std::vector<std::vector<std::size_t>> test_rows_;
  std::vector<FitEvent> events_;
};

struct FoldDesign {
  Matrix train;
  Matrix test;
};

/// Produces per-fold design matrices. Components whose fitted state depends
/// on data (e.g. colour binning) must be fitted on train rows only.
class DesignProvider {
 public:
  virtual ~DesignProvider() = default;
  virtual std::size_t rows() const = 0;
  virtual std::size_t cols() const = 0;
  virtual FoldDesign materialize(std::span<const std::size_t> train_rows,
                                 std::span<const std::size_t> test_rows,
                                 std::span<const std::size_t> columns, std::size_t fold,
                                 FitObserver* observer) const = 0;
};

/// Plain precomputed matrix.
class MatrixDesign final : public DesignProvider {
 public:
  explicit MatrixDesign(const Matrix& m) : m_(m) {}
  std::size_t rows() const override { return m_.rows; }
  std::size_t cols() const override { return m_.cols; }
  FoldDesign materialize(std::span<const std::size_t> train_rows,
                         std::span<const std::size_t> test_rows,
                         std::span<const std::size_t> columns, std::size_t fold,
                         FitObserver* observer) const override;

 private:
  const Matrix& m_;
};

struct MetricSummary {
  double mean = 0;
  double std = 0;  // population standard deviation over folds
};

struct FoldResult {
  ConfusionMatrix confusion;
  Metrics metrics;
  double train_seconds = 0;
};

struct EvaluationReport {
  std::string model_id;
  MetricSummary accuracy;
  MetricSummary auc;
  MetricSummary recall;
  MetricSummary precision;
  MetricSummary f1;
  double train_time_seconds = 0;
  std::vector<FoldResult> folds;
  std::vector<std::size_t> columns;
};

/// Stratified k-fold evaluation. Per fold: materialize the design, fit the
/// min-max scaler on training rows, train with seed derive_seed(seed, fold),
/// score the test rows. `folds` overrides fold assignment when given.
EvaluationReport cross_validate(std::string_view model_id, const DesignProvider& design,
                                std::span<const int> labels, std::span<const std::size_t> columns,
                                const CvSpec& cv, const Hyperparams& hp, std::uint64_t seed,
                                FitObserver* observer = nullptr,
                                const std::vector<std::vector<std::size_t>>* folds = nullptr);

MetricSummary summarize(std::span<const double> values);

}  // namespace botminer
