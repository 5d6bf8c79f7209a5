#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "botminer/error.hpp"
#include "io.hpp"

namespace botminer {
namespace pipeline_detail {

namespace fs = std::filesystem;

std::string fmt_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v == 0 ? 0.0 : v);  // no "-0"
  return buf;
}

std::string fmt4(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  std::string s = buf;
  if (s == "-0.0000") s = "0.0000";
  return s;
}

std::string provenance_line(const ExperimentConfig& cfg) {
  return "# botminer config_hash=" + config_hash(cfg) +
         " seed=" + std::to_string(cfg.seed.value_or(0)) + "\n";
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoFailure, "cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::vector<std::string>> read_csv_file(const fs::path& p) {
  std::istringstream in(read_file(p));
  CsvReader reader(in);
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  bool ok = true;
  while (reader.next(row, ok)) {
    if (!ok) throw Error(ErrorKind::SchemaMismatch, "malformed CSV in " + p.string());
    if (!row.empty() && row[0].starts_with("#")) continue;
    rows.push_back(row);
  }
  return rows;
}

OutputSet::OutputSet(fs::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec) throw Error(ErrorKind::IoFailure, "cannot create " + dir_.string() + ": " + ec.message());
}

OutputSet::~OutputSet() {
  if (committed_) return;
  std::error_code ec;
  for (const auto& [tmp, final_path] : staged_) fs::remove(tmp, ec);
}

void OutputSet::add(const std::string& name, const std::string& content) {
  const fs::path final_path = dir_ / name;
  const fs::path tmp = dir_ / ("." + name + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::IoFailure, "cannot write " + tmp.string());
    out << content;
    if (!out) throw Error(ErrorKind::IoFailure, "write failed for " + tmp.string());
  }
  staged_.emplace_back(tmp, final_path);
}

void OutputSet::commit() {
  for (const auto& [tmp, final_path] : staged_) {
    std::error_code ec;
    fs::rename(tmp, final_path, ec);
    if (ec) {
      throw Error(ErrorKind::IoFailure, "cannot publish " + final_path.string() + ": " + ec.message());
    }
  }
  committed_ = true;
}

}  // namespace pipeline_detail

using namespace pipeline_detail;
using nlohmann::json;
namespace fs = std::filesystem;

void pipeline_detail::add_dataset_files(OutputSet& out, const ExtractedDataset& d,
                                         const ExperimentConfig& cfg) {
  const std::string head = provenance_line(cfg);
  const std::size_t cols = d.catalog.size();

  std::string matrix = head + "account_id,label";
  std::string mask = head + "account_id";
  for (const auto& def : d.catalog.defs()) {
    matrix += "," + def.name;
    mask += "," + def.name;
  }
  matrix += "\n";
  mask += "\n";
  std::string colors = head + "account_id";
  for (ColorField f : kColorFields) colors += "," + std::string(color_field_name(f));
  colors += "\n";

  for (std::size_t r = 0; r < d.rows(); ++r) {
    const std::string id = csv_field(d.account_ids[r]);
    matrix += id + "," + std::string(to_string(d.labels[r] == 1 ? Label::bot : Label::human));
    mask += id;
    for (std::size_t c = 0; c < cols; ++c) {
      matrix += "," + fmt_full(d.values.at(r, c));
      mask += d.available(r, c) ? ",1" : ",0";
    }
    matrix += "\n";
    mask += "\n";
    colors += id;
    for (const auto& v : d.colors[r]) colors += "," + (v ? csv_field(*v) : std::string());
    colors += "\n";
  }

  json features = json::array();
  for (const auto& def : d.catalog.defs()) {
    features.push_back({{"name", def.name},
                        {"source", to_string(def.source)},
                        {"family", to_string(def.family)},
                        {"availability", def.availability}});
  }
  const json catalog{{"config_hash", config_hash(cfg)},
                     {"seed", cfg.seed.value_or(0)},
                     {"dataset_id", d.dataset_id},
                     {"defaults", d.defaults},
                     {"features", features}};

  out.add("matrix.csv", matrix);
  out.add("mask.csv", mask);
  out.add("colors.csv", colors);
  out.add("catalog.json", catalog.dump(2) + "\n");
}

void save_dataset(const ExtractedDataset& d, const ExperimentConfig& cfg, const fs::path& dir) {
  OutputSet out(dir);
  add_dataset_files(out, d, cfg);
  out.commit();
}

ExtractedDataset read_dataset(const fs::path& dir) {
  ExtractedDataset d;
  json catalog;
  try {
    catalog = json::parse(read_file(dir / "catalog.json"));
    d.dataset_id = catalog.at("dataset_id").get<std::string>();
    d.defaults = catalog.at("defaults").get<std::map<std::string, std::string>>();
    std::vector<FeatureDef> defs;
    for (const auto& f : catalog.at("features")) {
      FeatureDef def;
      def.name = f.at("name").get<std::string>();
      const auto src = parse_feature_source(f.at("source").get<std::string>());
      const auto fam = parse_feature_family(f.at("family").get<std::string>());
      if (!src || !fam) throw Error(ErrorKind::SchemaMismatch, "bad feature entry in catalog.json");
      def.source = *src;
      def.family = *fam;
      def.availability = f.at("availability").get<std::set<std::string>>();
      defs.push_back(std::move(def));
    }
    d.catalog = FeatureCatalog(std::move(defs));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::SchemaMismatch, std::string("malformed catalog.json: ") + e.what());
  }

  const std::size_t cols = d.catalog.size();
  const auto matrix = read_csv_file(dir / "matrix.csv");
  const auto mask = read_csv_file(dir / "mask.csv");
  const auto colors = read_csv_file(dir / "colors.csv");
  if (matrix.empty() || matrix[0].size() != cols + 2 || mask.size() != matrix.size() ||
      colors.size() != matrix.size()) {
    throw Error(ErrorKind::SchemaMismatch, "stage files in " + dir.string() + " disagree");
  }
  for (std::size_t c = 0; c < cols; ++c) {
    if (matrix[0][c + 2] != d.catalog[c].name) {
      throw Error(ErrorKind::SchemaMismatch, "matrix.csv header does not match catalog.json");
    }
  }
  const std::size_t n = matrix.size() - 1;
  d.values = Matrix(n, cols);
  d.mask.assign(n * cols, 1);
  for (std::size_t r = 0; r < n; ++r) {
    const auto& row = matrix[r + 1];
    const auto& mrow = mask[r + 1];
    const auto& crow = colors[r + 1];
    if (row.size() != cols + 2 || mrow.size() != cols + 1 || crow.size() != kColorFieldCount + 1) {
      throw Error(ErrorKind::SchemaMismatch, "short row in stage files");
    }
    d.account_ids.push_back(row[0]);
    const auto label = parse_label(row[1]);
    if (!label) throw Error(ErrorKind::SchemaMismatch, "bad label '" + row[1] + "'");
    d.labels.push_back(to_int(*label));
    for (std::size_t c = 0; c < cols; ++c) {
      char* end = nullptr;
      d.values.at(r, c) = std::strtod(row[c + 2].c_str(), &end);
      if (end == row[c + 2].c_str()) throw Error(ErrorKind::SchemaMismatch, "bad number in matrix.csv");
      d.mask[r * cols + c] = mrow[c + 1] == "1" ? 1 : 0;
    }
    ColorValues cv;
    for (std::size_t f = 0; f < kColorFieldCount; ++f) {
      if (!crow[f + 1].empty()) cv[f] = crow[f + 1];
    }
    d.colors.push_back(std::move(cv));
  }
  return d;
}

}  // namespace botminer
