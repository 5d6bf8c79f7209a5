#include <json.hpp>

#include "botminer/error.hpp"
#include "models_impl.hpp"

namespace botminer {
namespace {

using nlohmann::json;
using namespace model_detail;

constexpr int kModelFormatVersion = 1;

json hyperparams_json(const Hyperparams& hp) {
  return {{"n_trees", hp.n_trees},       {"max_depth", hp.max_depth},
          {"min_samples_leaf", hp.min_samples_leaf}, {"max_features", hp.max_features},
          {"knn_k", hp.knn_k},           {"epochs", hp.epochs},
          {"learning_rate", hp.learning_rate}, {"l2", hp.l2},
          {"nb_var_smoothing", hp.nb_var_smoothing}};
}

Hyperparams hyperparams_from(const json& j) {
  Hyperparams hp;
  hp.n_trees = j.at("n_trees").get<std::size_t>();
  hp.max_depth = j.at("max_depth").get<int>();
  hp.min_samples_leaf = j.at("min_samples_leaf").get<std::size_t>();
  hp.max_features = j.at("max_features").get<int>();
  hp.knn_k = j.at("knn_k").get<std::size_t>();
  hp.epochs = j.at("epochs").get<std::size_t>();
  hp.learning_rate = j.at("learning_rate").get<double>();
  hp.l2 = j.at("l2").get<double>();
  hp.nb_var_smoothing = j.at("nb_var_smoothing").get<double>();
  return hp;
}

json tree_json(const tree_detail::DecisionTree& t) {
  json nodes = json::array();
  for (const auto& n : t.nodes()) {
    nodes.push_back({n.feature, n.threshold, n.left, n.right, n.value, n.weight});
  }
  return {{"nodes", nodes}, {"importances", t.raw_importances()}};
}

tree_detail::DecisionTree tree_from(const json& j) {
  tree_detail::DecisionTree t;
  for (const auto& n : j.at("nodes")) {
    t.nodes().push_back(tree_detail::Node{n.at(0).get<int>(), n.at(1).get<double>(),
                                          n.at(2).get<int>(), n.at(3).get<int>(),
                                          n.at(4).get<double>(), n.at(5).get<double>()});
  }
  t.set_raw_importances(j.at("importances").get<std::vector<double>>());
  return t;
}

}  // namespace

std::string serialize_model(const Model& m) {
  json j{{"format", "botminer-model"},
         {"version", kModelFormatVersion},
         {"model_id", m.id()},
         {"n_features", m.n_features_}};
  if (const auto* t = dynamic_cast<const TreeModel*>(&m)) {
    j["hyperparams"] = hyperparams_json(t->hp_);
    j["tree"] = tree_json(t->tree_);
  } else if (const auto* f = dynamic_cast<const ForestModel*>(&m)) {
    j["hyperparams"] = hyperparams_json(f->hp_);
    json trees = json::array();
    for (const auto& tree : f->trees_) trees.push_back(tree_json(tree));
    j["trees"] = trees;
  } else if (const auto* k = dynamic_cast<const KnnModel*>(&m)) {
    j["hyperparams"] = hyperparams_json(k->hp_);
    j["rows"] = k->train_.rows;
    j["data"] = k->train_.data;
    j["labels"] = k->labels_;
  } else if (const auto* nb = dynamic_cast<const GaussianNbModel*>(&m)) {
    j["hyperparams"] = hyperparams_json(nb->hp_);
    j["prior"] = {nb->prior_[0], nb->prior_[1]};
    j["mean"] = {nb->mean_[0], nb->mean_[1]};
    j["var"] = {nb->var_[0], nb->var_[1]};
  } else if (const auto* lr = dynamic_cast<const LogisticModel*>(&m)) {
    j["hyperparams"] = hyperparams_json(lr->hp_);
    j["weights"] = lr->weights_;
    j["bias"] = lr->bias_;
  } else if (const auto* d = dynamic_cast<const DummyModel*>(&m)) {
    j["prior"] = d->prior_;
  } else {
    throw Error(ErrorKind::UnknownModel, "cannot serialize model " + std::string(m.id()));
  }
  return j.dump();
}

std::unique_ptr<Model> deserialize_model(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::SchemaMismatch, std::string("model file is not JSON: ") + e.what());
  }
  if (j.value("format", "") != "botminer-model" || j.value("version", 0) != kModelFormatVersion) {
    throw Error(ErrorKind::SchemaMismatch, "unsupported model file format or version");
  }
  try {
    const std::string id = j.at("model_id").get<std::string>();
    const Hyperparams hp = j.contains("hyperparams") ? hyperparams_from(j.at("hyperparams")) : Hyperparams{};
    std::unique_ptr<Model> out = make_model(id, hp);
    if (auto* t = dynamic_cast<TreeModel*>(out.get())) {
      t->tree_ = tree_from(j.at("tree"));
    } else if (auto* f = dynamic_cast<ForestModel*>(out.get())) {
      for (const auto& tree : j.at("trees")) f->trees_.push_back(tree_from(tree));
    } else if (auto* k = dynamic_cast<KnnModel*>(out.get())) {
      k->train_.rows = j.at("rows").get<std::size_t>();
      k->train_.cols = j.at("n_features").get<std::size_t>();
      k->train_.data = j.at("data").get<std::vector<double>>();
      k->labels_ = j.at("labels").get<std::vector<int>>();
    } else if (auto* nb = dynamic_cast<GaussianNbModel*>(out.get())) {
      for (int c = 0; c < 2; ++c) {
        nb->prior_[c] = j.at("prior").at(c).get<double>();
        nb->mean_[c] = j.at("mean").at(c).get<std::vector<double>>();
        nb->var_[c] = j.at("var").at(c).get<std::vector<double>>();
      }
    } else if (auto* lr = dynamic_cast<LogisticModel*>(out.get())) {
      lr->weights_ = j.at("weights").get<std::vector<double>>();
      lr->bias_ = j.at("bias").get<double>();
    } else if (auto* d = dynamic_cast<DummyModel*>(out.get())) {
      d->prior_ = j.at("prior").get<double>();
    }
    out->n_features_ = j.at("n_features").get<std::size_t>();
    return out;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::SchemaMismatch, std::string("malformed model file: ") + e.what());
  }
}

}  // namespace botminer
