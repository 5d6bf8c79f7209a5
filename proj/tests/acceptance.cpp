// Acceptance runner: one PASS / FAIL / SKIPPED line per criterion.
// Dataset-gated criteria read manifests from $BOTMINER_DATA:
//   cresci-15.json, cresci-17.json, twibot-20.json

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <json.hpp>

#include "botminer/error.hpp"
#include "botminer/parallel.hpp"
#include "botminer/pipeline.hpp"
#include "botminer/textstats.hpp"
#include "oracles.hpp"

using namespace botminer;
namespace fs = std::filesystem;

namespace {

enum class Outcome { pass, fail, skipped };

struct Verdict {
  Outcome outcome;
  std::string detail;
};

Verdict pass(std::string d) { return {Outcome::pass, std::move(d)}; }
Verdict fail(std::string d) { return {Outcome::fail, std::move(d)}; }
Verdict skipped(std::string d) { return {Outcome::skipped, std::move(d)}; }

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& tag) {
  const fs::path p = fs::temp_directory_path() / ("botminer_acceptance_" + tag);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

// 1 ---------------------------------------------------------------------------
Verdict metric_oracles() {
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(1);
  std::size_t mismatches = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const auto draw = [&] { return static_cast<std::int64_t>(rng.index(500)); };
    const std::int64_t tp = draw() + 1, tn = draw(), fp = draw(), fn = draw();
    const ConfusionMatrix cm{static_cast<std::size_t>(tp), static_cast<std::size_t>(tn),
                             static_cast<std::size_t>(fp), static_cast<std::size_t>(fn)};
    const Metrics m = compute_metrics(cm, {}, {});
    const auto o = oracle::metrics(tp, tn, fp, fn);
    mismatches += m.accuracy != o.accuracy.value();
    mismatches += m.precision != o.precision.value();
    mismatches += m.recall != o.recall.value();
    mismatches += m.f1 != o.f1.value();
  }
  const double s = seconds_since(t0);
  const std::string d = fmt("50 matrices, %zu mismatches, %.3fs (limit 1s)", mismatches, s);
  return mismatches == 0 && s < 1.0 ? pass(d) : fail(d);
}

// 2 ---------------------------------------------------------------------------
Verdict text_oracles() {
  const auto t0 = std::chrono::steady_clock::now();
  const std::string easy = std::string(BOTMINER_SOURCE_DIR) + "/data/dale_chall_easy_words.txt";
  double worst = 0;
  std::size_t exact_mismatches = 0;
  const auto& texts = oracle::text_corpus();
  for (std::size_t i = 0; i < texts.size(); ++i) {
    const std::string& s = texts[i];
    const auto t = text::tokenize(s);
    const auto c = text::casing_fractions(t);
    const auto oc = oracle::casing(s);
    const auto r = text::readability(t).values();
    const auto o = oracle::readability(s, easy);
    const std::array<double, 9> expected{o.flesch, o.fk_grade, o.smog, o.coleman_liau, o.ari,
                                         o.dale_chall, o.difficult, o.linsear, o.fog};
    std::vector<std::pair<double, double>> pairs{
        {text::shannon_entropy(s), oracle::entropy(s)},
        {text::mean_bigram_freq(s), oracle::mean_bigram_freq(s)},
        {c.lower, oc.lower},
        {c.upper, oc.upper},
        {c.title, oc.title},
        {static_cast<double>(text::count_elongated(t.words)),
         static_cast<double>(oracle::elongated(oracle::words(s)))},
        {text::string_similarity(s, texts[(i + 1) % texts.size()]),
         oracle::similarity(s, texts[(i + 1) % texts.size()])}};
    for (std::size_t k = 0; k < r.size(); ++k) pairs.emplace_back(r[k], expected[k]);
    for (const auto& [got, want] : pairs) worst = std::max(worst, std::abs(got - want));
    exact_mismatches += t.words != oracle::words(s);
  }
  const double s = seconds_since(t0);
  const std::string d =
      fmt("20 texts, max deviation %.3g (tol 1e-6), %.3fs (limit 5s)", worst, s);
  return worst <= 1e-6 && exact_mismatches == 0 && s < 5.0 ? pass(d) : fail(d);
}

// 3 ---------------------------------------------------------------------------
Verdict selection_oracles() {
  Rng rng(3);
  double worst = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t rows = 2 + rng.index(63);
    const std::size_t cols = 1 + rng.index(5);
    Matrix m(rows, cols);
    std::vector<int> y(rows);
    for (auto& v : y) v = static_cast<int>(rng.index(2));
    y[0] = 0;
    y[1] = 1;
    std::vector<std::string> names;
    for (std::size_t c = 0; c < cols; ++c) {
      names.push_back("f" + std::to_string(c));
      const std::size_t levels = 1 + rng.index(5);
      for (std::size_t r = 0; r < rows; ++r) m.at(r, c) = static_cast<double>(rng.index(levels));
    }
    const auto chi = rank(m, y, names, RankMethod::chi2, {}, 1);
    const auto mi = rank(m, y, names, RankMethod::mutual_info, {}, 1);
    for (std::size_t i = 0; i < cols; ++i) {
      const std::size_t c_chi = chi.scores[i].column;
      const std::size_t c_mi = mi.scores[i].column;
      std::vector<int> a, b;
      for (double v : m.column(c_chi)) a.push_back(static_cast<int>(v));
      for (double v : m.column(c_mi)) b.push_back(static_cast<int>(v));
      worst = std::max(worst, std::abs(chi.scores[i].score - oracle::chi2(a, y)));
      worst = std::max(worst,
                       std::abs(mi.scores[i].score - std::max(0.0, oracle::mutual_info(b, y))));
    }
  }

  std::size_t rf_ok = 0;
  double worst_sum = 0;
  Hyperparams hp;
  hp.n_trees = 50;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng g(100 + seed);
    Matrix m(80, 6);
    std::vector<int> y(80);
    for (std::size_t r = 0; r < 80; ++r) {
      y[r] = static_cast<int>(g.index(2));
      for (std::size_t c = 0; c < 6; ++c) m.at(r, c) = g.uniform();
      m.at(r, 3) = y[r];
    }
    y[0] = 0;
    y[1] = 1;
    m.at(0, 3) = 0;
    m.at(1, 3) = 1;
    const std::vector<std::string> names{"a", "b", "c", "copy", "d", "e"};
    const auto r = rank(m, y, names, RankMethod::rf_importance, {}, seed, hp);
    double sum = 0;
    for (const auto& f : r.scores) sum += f.score;
    worst_sum = std::max(worst_sum, std::abs(sum - 1.0));
    rf_ok += r.scores.front().name == "copy";
  }
  const std::string d = fmt("200 cases, max deviation %.3g (tol 1e-9); rf label copy first %zu/20, "
                            "max |sum-1| %.3g",
                            worst, rf_ok, worst_sum);
  return worst <= 1e-9 && rf_ok == 20 && worst_sum <= 1e-9 ? pass(d) : fail(d);
}

// 4 ---------------------------------------------------------------------------
Verdict stopping_rule() {
  const std::vector<double> curve{0.7, 0.9, 0.89, 0.88, 0.95, 0.97, 0.99};
  const auto a = run_stopping_rule(40, 2, [&](std::size_t k) {
    return CurvePoint{k, k <= curve.size() ? curve[k - 1] : 1.0, 0.0};
  });
  const auto b = run_stopping_rule(25, 2, [](std::size_t k) {
    return CurvePoint{k, 0.5 + 0.01 * static_cast<double>(k), 0.0};
  });
  const std::string d = fmt("dip curve halts at k=%zu chosen %zu; increasing curve reaches k=%zu "
                            "of 25 chosen %zu",
                            a.curve.size(), a.chosen_k, b.curve.size(), b.chosen_k);
  return a.curve.size() == 4 && a.chosen_k == 2 && b.curve.size() == 25 && b.chosen_k == 25
             ? pass(d)
             : fail(d);
}

// 5 ---------------------------------------------------------------------------
double cv_accuracy(const std::string& model, const Matrix& x, const std::vector<int>& y) {
  const MatrixDesign design(x);
  CvSpec cv;
  cv.folds = 10;
  cv.seed = 5;
  Hyperparams hp;
  hp.n_trees = 100;
  return cross_validate(model, design, y, iota_indices(x.cols), cv, hp, 5).accuracy.mean;
}

Verdict classifier_sanity() {
  Rng rng(5);
  Matrix lin(500, 4);
  std::vector<int> ly(500);
  for (std::size_t r = 0; r < 500;) {
    for (std::size_t c = 0; c < 4; ++c) lin.at(r, c) = rng.uniform(-1, 1);
    const double margin = lin.at(r, 0) + 0.5 * lin.at(r, 1) - 0.25 * lin.at(r, 2);
    if (std::abs(margin) < 0.1) continue;
    ly[r++] = margin > 0 ? 1 : 0;
  }

  Matrix xr(500, 4);
  std::vector<int> xy(500);
  for (std::size_t r = 0; r < 500; ++r) {
    const double a = rng.uniform(-1, 1), b = rng.uniform(-1, 1);
    xy[r] = (a > 0) != (b > 0) ? 1 : 0;
    xr.at(r, 0) = a + 0.05 * rng.normal();
    xr.at(r, 1) = b + 0.05 * rng.normal();
    xr.at(r, 2) = rng.normal();
    xr.at(r, 3) = rng.normal();
  }

  // 375 humans, 125 bots
  std::vector<int> skew(500, 0);
  for (std::size_t r = 0; r < 125; ++r) skew[r * 4] = 1;

  const double a_lin = cv_accuracy("random_forest", lin, ly);
  const double a_xor = cv_accuracy("random_forest", xr, xy);
  const double a_dummy = cv_accuracy("dummy_majority", lin, skew);
  const std::string d = fmt("rf linear %.4f (>=0.95), rf xor %.4f (>=0.9), dummy %.4f (==0.75)",
                            a_lin, a_xor, a_dummy);
  return a_lin >= 0.95 && a_xor >= 0.9 && a_dummy == 0.75 ? pass(d) : fail(d);
}

// 6 and 7 -------------------------------------------------------------------
struct DatasetRun {
  std::string id;
  double threshold;
  std::optional<std::vector<AblationRow>> rows;
  std::string error;
};

std::vector<DatasetRun> run_datasets() {
  std::vector<DatasetRun> runs{{"cresci-15", 0.98, {}, {}},
                               {"cresci-17", 0.98, {}, {}},
                               {"twibot-20", 0.80, {}, {}}};
  const char* root = std::getenv("BOTMINER_DATA");
  if (root == nullptr) return runs;
  for (auto& run : runs) {
    const fs::path manifest = fs::path(root) / (run.id + ".json");
    if (!fs::exists(manifest)) continue;
    try {
      ConfigOverrides o;
      o.dataset = manifest.string();
      o.seed = 1;
      o.models = "random_forest";
      const auto cfg = resolve_config(std::nullopt, o);
      const auto d = load_dataset(cfg);
      run.rows = ablate(d, cfg);
    } catch (const std::exception& e) {
      run.error = e.what();
    }
  }
  return runs;
}

double accuracy_of(const AblationRow& r) { return r.report ? r.report->accuracy.mean : -1.0; }

Verdict reproduction(const std::vector<DatasetRun>& runs) {
  std::string d;
  bool any = false, ok = true;
  for (const auto& run : runs) {
    if (!run.error.empty()) {
      d += run.id + " error (" + run.error + "); ";
      ok = false;
      any = true;
      continue;
    }
    if (!run.rows) continue;
    any = true;
    const double acc = accuracy_of((*run.rows)[2]);
    d += fmt("%s combined %.4f (>=%.2f); ", run.id.c_str(), acc, run.threshold);
    ok = ok && acc >= run.threshold;
  }
  if (!any) return skipped("no dataset manifests under $BOTMINER_DATA");
  return ok ? pass(d) : fail(d);
}

Verdict ablation_ordering(const std::vector<DatasetRun>& runs) {
  std::string d;
  bool any = false, ok = true;
  for (const auto& run : runs) {
    if (!run.rows) continue;
    any = true;
    const auto& rows = *run.rows;
    const double account = accuracy_of(rows[0]);
    const double content = accuracy_of(rows[1]);
    const double combined = accuracy_of(rows[2]);
    d += fmt("%s account %.4f content %.4f combined %.4f; ", run.id.c_str(), account, content,
             combined);
    ok = ok && combined >= std::max(account, content) - 0.005;
    if (run.id != "cresci-15") ok = ok && account > content;
  }
  if (!any) return skipped("no dataset manifests under $BOTMINER_DATA");
  return ok ? pass(d) : fail(d);
}

// 8 ---------------------------------------------------------------------------
ExperimentConfig synthetic_config(const fs::path& dir, const fs::path& out, std::size_t threads) {
  std::ofstream(dir / "manifest.json")
      << R"({"dataset_id":"synthetic","format":"synthetic","crawl_time":"2020-01-01T00:00:00Z",)"
      << R"("synthetic":{"n_accounts":150,"seed":8,"signal":"both","tweetless_bot_fraction":0.2}})";
  std::ofstream(dir / "config.json")
      << R"({"selection":{"k_max":10,"patience":3},"hyperparams":{"n_trees":25},)"
      << R"("models":["random_forest","decision_tree","logistic_regression","gaussian_nb","dummy_majority"]})";
  ConfigOverrides o;
  o.dataset = (dir / "manifest.json").string();
  o.seed = 8;
  o.out = out.string();
  o.threads = threads;
  return resolve_config(dir / "config.json", o);
}

Verdict determinism() {
  const fs::path dir = scratch("determinism");
  const std::vector<std::pair<std::string, std::size_t>> variants{{"t1a", 1}, {"t1b", 1}, {"t8", 8}};
  for (const auto& [name, threads] : variants) cmd_run(synthetic_config(dir, dir / name, threads));

  std::size_t files = 0, differing = 0;
  std::string first_diff;
  for (const auto& e : fs::directory_iterator(dir / "t1a")) {
    const std::string name = e.path().filename().string();
    if (name.find(".timing.") != std::string::npos) continue;
    const std::string ref = slurp(e.path());
    ++files;
    for (const char* other : {"t1b", "t8"}) {
      if (slurp(dir / other / name) != ref) {
        ++differing;
        if (first_diff.empty()) first_diff = std::string(other) + "/" + name;
      }
    }
  }
  fs::remove_all(dir);
  const std::string d = fmt("%zu output files x 3 runs (threads 1, 1, 8), %zu differences%s%s",
                            files, differing, first_diff.empty() ? "" : ", first ",
                            first_diff.c_str());
  return files >= 15 && differing == 0 ? pass(d) : fail(d);
}

// 9 ---------------------------------------------------------------------------
Verdict leakage() {
  const fs::path dir = scratch("leakage");
  const auto cfg = synthetic_config(dir, dir / "out", 0);
  const auto d = load_dataset(cfg);
  RecordingFitObserver obs;
  const auto cols = all_columns(d);
  rank_columns(d, cols, RankMethod::rf_importance, cfg);
  const auto sel = select_columns(d, cols, cfg, &obs);
  train_models(d, sel.chosen_columns, cfg, &obs);
  ablate(d, cfg, &obs);
  fs::remove_all(dir);
  const std::size_t scaler = obs.fit_count("scaler");
  const std::size_t color = obs.fit_count("color_model");
  const std::string msg = fmt("%zu scaler fits, %zu colour-model fits, %zu test rows touched",
                              scaler, color, obs.test_rows_touched());
  return scaler > 0 && color > 0 && obs.test_rows_touched() == 0 ? pass(msg) : fail(msg);
}

}  // namespace

int main() {
  int failures = 0;
  auto report = [&](int id, const char* title, const std::function<Verdict()>& fn) {
    Verdict v;
    try {
      v = fn();
    } catch (const std::exception& e) {
      v = fail(std::string("exception: ") + e.what());
    }
    const char* tag = v.outcome == Outcome::pass ? "PASS" : v.outcome == Outcome::fail ? "FAIL" : "SKIPPED";
    failures += v.outcome == Outcome::fail;
    std::printf("[%s] %d. %s: %s\n", tag, id, title, v.detail.c_str());
    std::fflush(stdout);
  };

  report(1, "metric oracles", metric_oracles);
  report(2, "text statistic oracles", text_oracles);
  report(3, "selection oracles", selection_oracles);
  report(4, "stopping rule traces", stopping_rule);
  report(5, "classifier sanity", classifier_sanity);
  std::vector<DatasetRun> runs;
  try {
    runs = run_datasets();
  } catch (const std::exception&) {
  }
  report(6, "dataset reproduction", [&] { return reproduction(runs); });
  report(7, "ablation ordering", [&] { return ablation_ordering(runs); });
  report(8, "determinism", determinism);
  report(9, "leakage guard", leakage);
  return failures == 0 ? 0 : 1;
}
