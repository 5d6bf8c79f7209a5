#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "botminer/cv.hpp"
#include "botminer/learn.hpp"

namespace botminer {

enum class RankMethod : std::uint8_t { chi2, mutual_info, fisher, rf_importance };

std::string_view to_string(RankMethod m);
std::optional<RankMethod> parse_rank_method(std::string_view s);
const std::vector<RankMethod>& all_rank_methods();

struct BinSpec {
  std::size_t bins = 10;
};

/// Bin index per value. Columns with at most `bins` distinct values map each
/// distinct value to its rank; others get equal-frequency bins whose cut
/// points are the sorted values at positions floor(i*n/bins).
std::vector<int> discretize(std::span<const double> column, const BinSpec& spec);

/// Pearson chi-square of the category x class contingency table.
double chi2_score(std::span<const int> x, std::span<const int> labels);
/// Mutual information in bits.
double mutual_info_score(std::span<const int> x, std::span<const int> labels);
/// Between-class over within-class scatter with a 1e-12 guard.
double fisher_score(std::span<const double> x, std::span<const int> labels);

inline constexpr double kFisherEpsilon = 1e-12;

struct RankedFeature {
  std::string name;
  double score = 0;
  std::size_t column = 0;  // index into the ranked matrix
};

struct RankingResult {
  RankMethod method = RankMethod::chi2;
  std::vector<RankedFeature> scores;  // best first; ties in column order
  std::uint64_t seed = 0;
};

/// Scores every column of `m`. Throws DegenerateLabels for one class.
RankingResult rank(const Matrix& m, std::span<const int> labels,
                   std::span<const std::string> names, RankMethod method,
                   const BinSpec& binning, std::uint64_t seed, const Hyperparams& hp = {});

struct CurvePoint {
  std::size_t k = 0;
  double accuracy = 0;
  double seconds = 0;
};

struct StoppingTrace {
  std::vector<CurvePoint> curve;
  std::size_t chosen_k = 0;
};

/// Evaluates k = 1, 2, ... until `patience` consecutive values fail to
/// exceed the running maximum or k reaches k_limit. chosen_k is the
/// smallest k with the best accuracy.
StoppingTrace run_stopping_rule(std::size_t k_limit, std::size_t patience,
                                const std::function<CurvePoint(std::size_t)>& evaluate);

struct SelectionSpec {
  std::size_t k_max = 40;
  std::size_t patience = 2;
  std::string model = "random_forest";
};

struct SelectionResult {
  RankingResult ranking;
  std::vector<CurvePoint> curve;
  std::size_t chosen_k = 0;
  std::vector<std::string> chosen_features;
  std::vector<std::size_t> chosen_columns;
};

/// Top-k search over `ranking` (columns index into `design`). Folds are
/// drawn once and reused for every k.
SelectionResult select_topk(const DesignProvider& design, std::span<const int> labels,
                            const RankingResult& ranking, const SelectionSpec& spec,
                            const CvSpec& cv, const Hyperparams& hp, std::uint64_t seed,
                            FitObserver* observer = nullptr);

}  // namespace botminer
