#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "botminer/records.hpp"

namespace botminer {

enum class FeatureSource : std::uint8_t { account, content };
enum class FeatureFamily : std::uint8_t {
  social,
  temporal,
  readability,
  stylometry,
  platform,
  raw,
};

std::string_view to_string(FeatureSource s);
std::string_view to_string(FeatureFamily f);
std::optional<FeatureSource> parse_feature_source(std::string_view s);
std::optional<FeatureFamily> parse_feature_family(std::string_view s);

struct FeatureDef {
  std::string name;
  FeatureSource source = FeatureSource::account;
  FeatureFamily family = FeatureFamily::raw;
  std::set<std::string> availability;

  bool operator==(const FeatureDef&) const = default;
};

/// Ordered feature definitions. Order is the column order of every matrix
/// built from the catalog.
class FeatureCatalog {
 public:
  FeatureCatalog() = default;
  explicit FeatureCatalog(std::vector<FeatureDef> defs);

  const std::vector<FeatureDef>& defs() const { return defs_; }
  std::size_t size() const { return defs_.size(); }
  bool empty() const { return defs_.empty(); }
  const FeatureDef& operator[](std::size_t i) const { return defs_[i]; }

  bool contains(std::string_view name) const { return index_of(name).has_value(); }
  std::optional<std::size_t> index_of(std::string_view name) const;
  std::vector<std::string> names() const;

  /// Sub-catalog with only the features of one source, order preserved.
  FeatureCatalog restricted_to(FeatureSource source) const;

  bool operator==(const FeatureCatalog& o) const { return defs_ == o.defs_; }

 private:
  std::vector<FeatureDef> defs_;
};

inline constexpr std::string_view kDatasetCresci15 = "cresci-15";
inline constexpr std::string_view kDatasetCresci17 = "cresci-17";
inline constexpr std::string_view kDatasetTwibot20 = "twibot-20";
inline constexpr std::string_view kDatasetSynthetic = "synthetic";

/// Dataset ids the catalog knows about (excluding "all").
const std::vector<std::string>& known_datasets();

/// Every feature computable for `dataset_id`, or the full catalog for "all".
/// Throws Error(UnknownDataset) for anything else.
FeatureCatalog build_catalog(std::string_view dataset_id);

/// One extracted row. values and availability_mask follow catalog order.
struct FeatureVector {
  std::string account_id;
  Label label = Label::human;
  std::vector<std::pair<std::string, double>> values;
  std::vector<bool> availability_mask;
};

}  // namespace botminer
