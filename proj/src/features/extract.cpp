#include <chrono>
#include <cmath>
#include <set>
#include <unordered_map>

#include "botminer/error.hpp"
#include "botminer/features.hpp"
#include "botminer/parallel.hpp"
#include "internal.hpp"

namespace botminer {
namespace {

using Clock = std::chrono::steady_clock;

const char* const kGroups[] = {"account_ratios",   "account_names",     "account_readability",
                               "account_colors",   "account_raw",       "content_temporal",
                               "content_dna",      "content_sources",   "content_stylometry",
                               "content_readability", "content_social"};
constexpr std::size_t kGroupCount = std::size(kGroups);

// Writes extractor output into one matrix row; names outside the catalog
// are ignored.
class RowWriter {
 public:
  RowWriter(const std::unordered_map<std::string, std::size_t>& index, double* values,
            std::uint8_t* mask)
      : index_(index), values_(values), mask_(mask) {}

  void write(const FeatureRecord& r) {
    for (const auto& [name, v] : r.values) {
      const auto it = index_.find(name);
      if (it == index_.end()) continue;
      if (std::isfinite(v)) {
        values_[it->second] = v;
      } else {
        values_[it->second] = 0;
        mask_[it->second] = 0;
      }
    }
    for (const auto& name : r.masked) {
      const auto it = index_.find(name);
      if (it == index_.end()) continue;
      values_[it->second] = 0;
      mask_[it->second] = 0;
    }
  }

 private:
  const std::unordered_map<std::string, std::size_t>& index_;
  double* values_;
  std::uint8_t* mask_;
};

ColorValues colors_of(const AccountRecord& a) {
  ColorValues c;
  for (ColorField f : kColorFields) c[static_cast<std::size_t>(f)] = a.color(f);
  return c;
}

}  // namespace

FeatureVector ExtractedDataset::row(std::size_t r) const {
  FeatureVector v;
  v.account_id = account_ids[r];
  v.label = labels[r] == 1 ? Label::bot : Label::human;
  for (std::size_t c = 0; c < catalog.size(); ++c) {
    v.values.emplace_back(catalog[c].name, values.at(r, c));
    v.availability_mask.push_back(available(r, c));
  }
  return v;
}

std::vector<std::size_t> ExtractedDataset::columns_of(FeatureSource s) const {
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < catalog.size(); ++c) {
    if (catalog[c].source == s) out.push_back(c);
  }
  return out;
}

std::vector<std::size_t> all_columns(const ExtractedDataset& d) {
  return iota_indices(d.catalog.size());
}

std::size_t source_vocabulary_size(const TweetsByAuthor& tweets) {
  std::set<std::string_view> vocab;
  for (const auto& [author, list] : tweets) {
    for (const auto& t : list) {
      if (t.source && !t.source->empty()) vocab.insert(*t.source);
    }
  }
  return vocab.size();
}

ExtractedDataset extract(const Corpus& corpus, const FeatureCatalog& catalog,
                         const std::map<std::string, std::string>& defaults, ExtractionLog* log,
                         const text::LanguageDetector* detector) {
  if (corpus.accounts.empty()) {
    throw Error(ErrorKind::EmptyDataset, "dataset '" + corpus.dataset_id + "' has no accounts");
  }
  const auto started = Clock::now();
  const text::LanguageDetector& lang =
      detector ? *detector : text::NgramProfileDetector::bundled();

  ExtractedDataset d;
  d.dataset_id = corpus.dataset_id;
  d.catalog = catalog;
  d.defaults = defaults;
  const std::size_t n = corpus.accounts.size();
  const std::size_t cols = catalog.size();
  d.values = Matrix(n, cols);
  d.mask.assign(n * cols, 1);
  d.account_ids.reserve(n);
  d.labels.reserve(n);
  d.colors.reserve(n);
  for (const auto& a : corpus.accounts) {
    d.account_ids.push_back(a.id);
    d.labels.push_back(to_int(a.label));
    d.colors.push_back(colors_of(a));
  }

  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t c = 0; c < cols; ++c) index.emplace(catalog[c].name, c);
  const std::vector<std::size_t> content_cols = d.columns_of(FeatureSource::content);
  const bool wants_content = !content_cols.empty();

  const ColorBinningModel colors = fit_color_model(d.colors, iota_indices(n), defaults);
  const std::size_t vocabulary = source_vocabulary_size(corpus.tweets);
  std::vector<std::array<double, kGroupCount>> seconds(n);

  parallel_for(n, [&](std::size_t r) {
    const AccountRecord& a = corpus.accounts[r];
    const auto it = corpus.tweets.find(a.id);
    const std::span<const TweetRecord> tweets =
        it == corpus.tweets.end() ? std::span<const TweetRecord>{} : std::span(it->second);
    RowWriter w(index, d.values.data.data() + r * cols, d.mask.data() + r * cols);
    auto& sec = seconds[r];
    std::size_t g = 0;
    auto timed = [&](auto&& fn) {
      const auto t0 = Clock::now();
      w.write(fn());
      sec[g++] = std::chrono::duration<double>(Clock::now() - t0).count();
    };

    timed([&] {
      FeatureRecord rec = account_ratios(a);
      rec.merge(average_retweets(a, tweets));
      return rec;
    });
    timed([&] { return name_features(a); });
    timed([&] { return description_readability(a); });
    timed([&] { return color_features(a, colors); });
    timed([&] { return raw_features(a); });

    if (!wants_content) return;
    if (tweets.empty()) {
      for (std::size_t c : content_cols) {
        d.values.data[r * cols + c] = 0;
        d.mask[r * cols + c] = 0;
      }
      return;
    }
    const auto analyzed = features_detail::analyze(tweets);
    const AccountAggregates agg = aggregate(tweets);
    timed([&] { return temporal_features(agg); });
    timed([&] { return features_detail::dna_features(tweets, analyzed); });
    timed([&] { return source_features(tweets, vocabulary); });
    timed([&] { return features_detail::tweet_stylometry(tweets, analyzed, lang); });
    timed([&] { return features_detail::tweet_readability(analyzed); });
    timed([&] {
      FeatureRecord rec;
      rec.set("credibility", credibility(agg, a.followers_count));
      rec.set("engagement", engagement(a.followers_count, a.listed_count, agg));
      return rec;
    });
  });

  if (log) {
    log->group_seconds.clear();
    for (std::size_t g = 0; g < kGroupCount; ++g) {
      double total = 0;
      for (const auto& s : seconds) total += s[g];
      log->group_seconds[kGroups[g]] = total;
    }
    log->total_seconds = std::chrono::duration<double>(Clock::now() - started).count();
  }
  return d;
}

void apply_color_model(const ExtractedDataset& d, const ColorBinningModel& model,
                       std::span<const std::size_t> rows, std::span<const std::size_t> columns,
                       Matrix& m) {
  // Output column j holds catalog column columns[j].
  std::unordered_map<std::size_t, std::size_t> out_col;
  for (std::size_t j = 0; j < columns.size(); ++j) out_col.emplace(columns[j], j);
  for (ColorField f : kColorFields) {
    const auto names = color_bin_names(f);
    std::array<std::optional<std::size_t>, 3> target;
    for (std::size_t b = 0; b < 3; ++b) {
      if (const auto c = d.catalog.index_of(names[b])) {
        if (const auto it = out_col.find(*c); it != out_col.end()) target[b] = it->second;
      }
    }
    if (!target[0] && !target[1] && !target[2]) continue;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const ColorBin bin = model.bin(f, d.colors[rows[i]][static_cast<std::size_t>(f)]);
      const ColorBin order[3] = {ColorBin::default_value, ColorBin::common, ColorBin::uncommon};
      for (std::size_t b = 0; b < 3; ++b) {
        if (target[b]) m.at(i, *target[b]) = bin == order[b] ? 1.0 : 0.0;
      }
    }
  }
}

FoldDesign ExtractedDesign::materialize(std::span<const std::size_t> train_rows,
                                        std::span<const std::size_t> test_rows,
                                        std::span<const std::size_t> columns, std::size_t fold,
                                        FitObserver* observer) const {
  FoldDesign out{d_.values.select(train_rows, columns), d_.values.select(test_rows, columns)};
  if (observer) observer->on_fit("color_model", fold, train_rows);
  const ColorBinningModel model = fit_color_model(d_.colors, train_rows, d_.defaults);
  apply_color_model(d_, model, train_rows, columns, out.train);
  apply_color_model(d_, model, test_rows, columns, out.test);
  return out;
}

}  // namespace botminer
