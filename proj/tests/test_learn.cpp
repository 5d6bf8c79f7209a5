#include <doctest.h>

#include <cmath>
#include <set>

#include "botminer/cv.hpp"
#include "botminer/error.hpp"
#include "botminer/learn.hpp"
#include "botminer/parallel.hpp"
#include "learn/tree.hpp"
#include "oracles.hpp"

using namespace botminer;

namespace {

Matrix column_matrix(std::initializer_list<double> values) {
  Matrix m(values.size(), 1);
  std::size_t i = 0;
  for (double v : values) m.at(i++, 0) = v;
  return m;
}

// Two well separated Gaussian blobs.
void blobs(std::size_t n, std::uint64_t seed, Matrix& x, std::vector<int>& y) {
  Rng rng(seed);
  x = Matrix(n, 3);
  y.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = i % 2 == 0 ? 1 : 0;
    for (std::size_t c = 0; c < 3; ++c) x.at(i, c) = rng.normal() + (y[i] ? 4.0 : 0.0);
  }
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no Error thrown");
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("metric examples") {
  auto m = compute_metrics({8, 2, 0, 0}, {}, {});
  CHECK(m.accuracy == 1.0);
  m = compute_metrics({8, 0, 2, 0}, {}, {});
  CHECK(m.precision == 0.8);
  CHECK(f1_score(0.5, 0.5) == 0.5);
  CHECK(f1_score(0, 0) == 0.0);

  m = compute_metrics({0, 5, 0, 0}, {}, {});
  CHECK(m.precision == 0.0);
  CHECK(m.precision_undefined);
  CHECK(m.recall_undefined);
  CHECK(m.f1_undefined);
}

TEST_CASE("metrics equal exact rational evaluation") {
  Rng rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const auto draw = [&] { return static_cast<std::int64_t>(rng.index(1000)); };
    const std::int64_t tp = draw() + 1, tn = draw(), fp = draw(), fn = draw();
    const ConfusionMatrix cm{static_cast<std::size_t>(tp), static_cast<std::size_t>(tn),
                             static_cast<std::size_t>(fp), static_cast<std::size_t>(fn)};
    const auto m = compute_metrics(cm, {}, {});
    const auto o = oracle::metrics(tp, tn, fp, fn);
    CHECK(m.accuracy == o.accuracy.value());
    CHECK(m.precision == o.precision.value());
    CHECK(m.recall == o.recall.value());
    CHECK(m.f1 == o.f1.value());
    CHECK(m.accuracy * static_cast<double>(cm.total()) ==
          doctest::Approx(static_cast<double>(tp + tn)));
    CHECK(m.f1 == doctest::Approx(f1_score(m.precision, m.recall)).epsilon(1e-15));
  }
}

TEST_CASE("auc") {
  const double sep[] = {0.1, 0.2, 0.8, 0.9};
  const int lab[] = {0, 0, 1, 1};
  CHECK(auc_score(sep, lab) == 1.0);
  const double flat[] = {0.5, 0.5, 0.5, 0.5};
  CHECK(auc_score(flat, lab) == 0.5);
  const int one[] = {1, 1, 1, 1};
  bool undefined = false;
  CHECK(auc_score(flat, one, &undefined) == 0.0);
  CHECK(undefined);

  // brute force over all positive/negative pairs
  Rng rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> s(30);
    std::vector<int> l(30);
    for (std::size_t i = 0; i < s.size(); ++i) {
      s[i] = static_cast<double>(rng.index(6));
      l[i] = i < 12 ? 1 : static_cast<int>(rng.index(2));
    }
    l[29] = 0;
    double wins = 0, pairs = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      for (std::size_t j = 0; j < s.size(); ++j) {
        if (l[i] != 1 || l[j] != 0) continue;
        pairs += 1;
        wins += s[i] > s[j] ? 1.0 : s[i] == s[j] ? 0.5 : 0.0;
      }
    }
    CHECK(auc_score(s, l) == doctest::Approx(wins / pairs).epsilon(1e-12));
  }
}

TEST_CASE("scaler examples") {
  const Matrix train = column_matrix({0, 5, 10});
  const Scaler s = Scaler::fit(train);
  const Matrix t = s.transform(train);
  CHECK(t.column(0) == std::vector<double>{0, 0.5, 1});
  CHECK(Scaler::fit(column_matrix({7, 7})).transform(column_matrix({7, 7})).column(0) ==
        std::vector<double>{0, 0});
  CHECK(s.transform(column_matrix({12})).at(0, 0) == 1.0);
  CHECK(s.transform(column_matrix({-3})).at(0, 0) == 0.0);
}

TEST_CASE("model registry") {
  CHECK(known_models().size() == 7);
  for (const auto& id : known_models()) CHECK(make_model(id)->id() == id);
  CHECK(kind_of([] { make_model("svm"); }) == ErrorKind::UnknownModel);
  const int one[] = {1, 1};
  CHECK(kind_of([&] { train("knn", column_matrix({1, 2}), one, {}, 1); }) ==
        ErrorKind::DegenerateLabels);
}

TEST_CASE("dummy predicts the majority") {
  Matrix x(8, 1);
  const std::vector<int> y{1, 1, 1, 0, 1, 1, 0, 1};
  const auto m = train("dummy_majority", x, y, {}, 1);
  const auto p = m->predict(x);
  const auto cm = confusion(y, p.labels);
  CHECK(compute_metrics(cm, p.scores, y).accuracy == 0.75);
  for (int l : p.labels) CHECK(l == 1);
}

TEST_CASE("decision tree fits XOR") {
  Matrix x(4, 2);
  x.data = {0, 0, 0, 1, 1, 0, 1, 1};
  const std::vector<int> y{0, 1, 1, 0};
  Hyperparams hp;
  hp.max_depth = 2;
  const auto m = train("decision_tree", x, y, hp, 1);
  CHECK(m->predict(x).labels == y);
}

TEST_CASE("prediction contracts") {
  Matrix x;
  std::vector<int> y;
  blobs(120, 2, x, y);

  Hyperparams hp;
  hp.n_trees = 25;
  const auto forest = train("random_forest", x, y, hp, 9);
  Matrix probe(1, 3, 50.0);
  CHECK(forest->predict(probe).scores[0] == 1.0);
  for (double s : forest->predict(x).scores) {
    CHECK(s >= 0.0);
    CHECK(s <= 1.0);
    const double votes = s * 25.0;
    CHECK(std::abs(votes - std::round(votes)) <= 1e-9);
  }
  double sum = 0;
  for (double v : forest->feature_importances()) sum += v;
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));

  Hyperparams k3;
  k3.knn_k = 3;
  const auto knn = train("knn", column_matrix({0, 1, 2, 100}), std::vector<int>{1, 1, 0, 0}, k3, 1);
  CHECK(knn->predict(column_matrix({1})).scores[0] == doctest::Approx(2.0 / 3.0));

  const auto logit = make_logistic({0, 0, 0}, 0);
  for (double s : logit->predict(x).scores) CHECK(s == 0.5);

  CHECK(kind_of([&] { forest->predict(column_matrix({1})); }) == ErrorKind::SchemaMismatch);
}

TEST_CASE("same seed gives identical forests") {
  Matrix x;
  std::vector<int> y;
  blobs(200, 3, x, y);
  Hyperparams hp;
  hp.n_trees = 20;
  const auto a = train("random_forest", x, y, hp, 42);
  const auto b = train("random_forest", x, y, hp, 42);
  Rng rng(1);
  Matrix probe(1000, 3);
  for (double& v : probe.data) v = rng.uniform(-3, 7);
  CHECK(a->predict(probe).scores == b->predict(probe).scores);
  CHECK(serialize_model(*a) == serialize_model(*b));

  const std::size_t saved = thread_count();
  set_thread_count(1);
  const auto serial = train("random_forest", x, y, hp, 42);
  set_thread_count(saved);
  CHECK(serialize_model(*serial) == serialize_model(*a));
}

TEST_CASE("serialization round trip") {
  Matrix x;
  std::vector<int> y;
  blobs(60, 5, x, y);
  Hyperparams hp;
  hp.n_trees = 5;
  for (const auto& id : known_models()) {
    CAPTURE(id);
    const auto m = train(id, x, y, hp, 3);
    const auto back = deserialize_model(serialize_model(*m));
    CHECK(back->id() == id);
    CHECK(back->predict(x).scores == m->predict(x).scores);
  }
  CHECK(kind_of([] { deserialize_model(R"({"format":"botminer-model","version":999})"); }) ==
        ErrorKind::SchemaMismatch);
}

TEST_CASE("every tree node takes the best available split") {
  Rng rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 4 + rng.index(13);  // 4..16 samples
    const std::size_t d = 1 + rng.index(3);
    std::vector<std::vector<double>> rows(n, std::vector<double>(d));
    std::vector<int> y(n);
    Matrix x(n, d);
    for (std::size_t i = 0; i < n; ++i) {
      y[i] = static_cast<int>(rng.index(2));
      for (std::size_t f = 0; f < d; ++f) x.at(i, f) = rows[i][f] = static_cast<double>(rng.index(5));
    }
    const std::vector<double> w(n, 1.0);
    tree_detail::TreeParams params;
    params.max_depth = 2;
    tree_detail::DecisionTree tree;
    Rng fit_rng(1);
    tree.fit(x, y, w, params, fit_rng);

    // route samples through the tree and check every node
    std::vector<std::vector<std::size_t>> at(tree.nodes().size());
    std::vector<int> depth(tree.nodes().size(), 0);
    at[0] = iota_indices(n);
    for (std::size_t k = 0; k < tree.nodes().size(); ++k) {
      const auto& node = tree.nodes()[k];
      double pos = 0;
      for (std::size_t r : at[k]) pos += y[r];
      const double total = static_cast<double>(at[k].size());
      const double best = oracle::best_gain(rows, y, at[k]);
      if (node.feature < 0) {
        const bool pure = pos == 0 || pos == total;
        if (!pure && depth[k] < 2) {
          CHECK(best == 0.0);  // nothing left to split on
          for (std::size_t f = 0; f < d; ++f) {
            std::set<double> vals;
            for (std::size_t r : at[k]) vals.insert(rows[r][f]);
            CHECK(vals.size() == 1);
          }
        }
        continue;
      }
      std::vector<std::size_t> left, right;
      for (std::size_t r : at[k]) {
        (rows[r][static_cast<std::size_t>(node.feature)] <= node.threshold ? left : right).push_back(r);
      }
      double lp = 0;
      for (std::size_t r : left) lp += y[r];
      const double ln = static_cast<double>(left.size());
      const double gain = total * oracle::gini(pos, total) - ln * oracle::gini(lp, ln) -
                          (total - ln) * oracle::gini(pos - lp, total - ln);
      CHECK(gain == doctest::Approx(best).epsilon(1e-9));
      CHECK_FALSE(left.empty());
      CHECK_FALSE(right.empty());
      at[static_cast<std::size_t>(node.left)] = left;
      at[static_cast<std::size_t>(node.right)] = right;
      depth[static_cast<std::size_t>(node.left)] = depth[static_cast<std::size_t>(node.right)] =
          depth[k] + 1;
    }
  }
}

TEST_CASE("fold construction") {
  std::vector<int> y(100, 0);
  for (std::size_t i = 0; i < 40; ++i) y[i * 2] = 1;
  CvSpec cv;
  cv.seed = 3;
  const auto folds = make_folds(y, cv);
  REQUIRE(folds.size() == 10);
  std::set<std::size_t> seen;
  for (const auto& f : folds) {
    CHECK(f.size() == 10);
    std::size_t bots = 0;
    for (std::size_t r : f) {
      bots += static_cast<std::size_t>(y[r]);
      CHECK(seen.insert(r).second);
    }
    CHECK(bots >= 3);
    CHECK(bots <= 5);
    CHECK(std::is_sorted(f.begin(), f.end()));
  }
  CHECK(seen.size() == 100);
  CHECK(make_folds(y, cv) == folds);
  const auto tr = training_rows(folds, 0, 100);
  CHECK(tr.size() == 90);

  CvSpec bad;
  bad.folds = 1;
  CHECK(kind_of([&] { make_folds(y, bad); }) == ErrorKind::StratificationFailure);
  std::vector<int> few(20, 0);
  few[0] = few[1] = 1;
  CHECK(kind_of([&] { make_folds(few, cv); }) == ErrorKind::StratificationFailure);
}

TEST_CASE("fold balance property") {
  Rng rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t k = 2 + rng.index(9);
    const std::size_t n = k * 2 + rng.index(200);
    std::vector<int> y(n);
    std::size_t pos = 0;
    for (auto& v : y) pos += static_cast<std::size_t>(v = static_cast<int>(rng.index(2)));
    if (pos < k || n - pos < k) continue;
    CvSpec cv;
    cv.folds = k;
    cv.seed = rng.next();
    const auto folds = make_folds(y, cv);
    std::size_t lo = n, hi = 0, plo = n, phi = 0;
    for (const auto& f : folds) {
      std::size_t p = 0;
      for (std::size_t r : f) p += static_cast<std::size_t>(y[r]);
      lo = std::min(lo, f.size());
      hi = std::max(hi, f.size());
      plo = std::min(plo, p);
      phi = std::max(phi, p);
    }
    CHECK(hi - lo <= 1);
    CHECK(phi - plo <= 1);
  }
}

TEST_CASE("cross validation") {
  Matrix x;
  std::vector<int> y;
  blobs(100, 6, x, y);
  const MatrixDesign design(x);
  CvSpec cv;
  cv.seed = 2;
  const auto cols = iota_indices(3);
  RecordingFitObserver obs;
  const auto r = cross_validate("gaussian_nb", design, y, cols, cv, {}, 2, &obs);
  CHECK(r.folds.size() == 10);
  CHECK(r.accuracy.mean > 0.95);
  for (const auto* s : {&r.accuracy, &r.auc, &r.recall, &r.precision, &r.f1}) {
    CHECK(s->mean >= 0.0);
    CHECK(s->mean <= 1.0);
  }
  for (const auto& f : r.folds) CHECK(f.confusion.total() == 10);
  CHECK(obs.test_rows_touched() == 0);
  CHECK(obs.fit_count("scaler") == 10);
  CHECK(obs.fit_count("model") == 10);

  const auto again = cross_validate("gaussian_nb", design, y, cols, cv, {}, 2);
  CHECK(again.accuracy.mean == r.accuracy.mean);
  CHECK(again.f1.std == r.f1.std);

  const double v[] = {1, 2, 3, 4};
  const auto s = summarize(v);
  CHECK(s.mean == 2.5);
  CHECK(s.std == doctest::Approx(std::sqrt(1.25)));
}

TEST_CASE("test-fold labels never influence fitted models") {
  Matrix x;
  std::vector<int> y;
  blobs(80, 7, x, y);
  for (std::size_t i = 0; i < 10; ++i) y[i * 7] = 1 - y[i * 7];  // some noise
  CvSpec cv;
  cv.folds = 5;
  cv.seed = 4;
  const auto folds = make_folds(y, cv);
  const MatrixDesign design(x);
  const auto cols = iota_indices(3);
  Hyperparams hp;
  hp.n_trees = 15;
  for (const char* model : {"random_forest", "logistic_regression", "knn"}) {
    CAPTURE(model);
    const auto base = cross_validate(model, design, y, cols, cv, hp, 1, nullptr, &folds);
    auto shuffled = y;
    Rng rng(11);
    for (std::size_t r : folds[0]) shuffled[r] = static_cast<int>(rng.index(2));
    const auto other = cross_validate(model, design, shuffled, cols, cv, hp, 1, nullptr, &folds);
    // same predictions on fold 0: the predicted-positive count is unchanged
    const auto& a = base.folds[0].confusion;
    const auto& b = other.folds[0].confusion;
    CHECK(a.tp + a.fp == b.tp + b.fp);
  }
}
