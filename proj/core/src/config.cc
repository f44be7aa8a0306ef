// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "streamline/config.h"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "streamline/error.h"

namespace streamline {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& why) {
  throw Error(ErrorCode::kConfig, field + ": " + why);
}

void reject_unknown(const json& obj, const std::string& where,
                    const std::set<std::string>& allowed) {
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.contains(key)) {
      fail(where.empty() ? key : where + "." + key, "unknown key");
    }
  }
}

const json& object_at(const json& obj, const std::string& key,
                      const std::string& field) {
  const json& v = obj.at(key);
  if (!v.is_object()) fail(field, "must be an object");
  return v;
}

double get_number(const json& v, const std::string& field) {
  if (!v.is_number()) fail(field, "must be a number");
  return v.get<double>();
}

std::uint64_t get_unsigned(const json& v, const std::string& field) {
  if (!v.is_number_integer() ||
      (!v.is_number_unsigned() && v.get<std::int64_t>() < 0)) {
    fail(field, "must be a nonnegative integer");
  }
  return v.get<std::uint64_t>();
}

std::string get_string(const json& v, const std::string& field) {
  if (!v.is_string()) fail(field, "must be a string");
  return v.get<std::string>();
}

sim::Method get_method(const json& v, const std::string& field) {
  const std::string name = get_string(v, field);
  const auto m = sim::parse_method(name);
  if (!m) fail(field, "unknown method '" + name + "'");
  return *m;
}

std::vector<std::size_t> get_index_list(const json& v, const std::string& field) {
  if (!v.is_array()) fail(field, "must be an array of integers");
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(get_unsigned(v[i], field + "[" + std::to_string(i) + "]"));
  }
  return out;
}

void parse_stream(const json& s, sim::StreamSpec& spec) {
  reject_unknown(s, "stream",
                 {"slices", "classes", "dim", "separation", "noise_std",
                  "class_scale", "shared_class_weight", "rare_slices",
                  "imbalance", "common_initial_size", "rounds", "schedule",
                  "rare_every", "redundancy", "episode_size", "eval_per_slice"});
  auto size = [&](const char* key, std::size_t& out) {
    if (s.contains(key)) out = get_unsigned(s[key], std::string("stream.") + key);
  };
  auto real = [&](const char* key, double& out) {
    if (s.contains(key)) out = get_number(s[key], std::string("stream.") + key);
  };
  size("slices", spec.slices);
  size("classes", spec.classes);
  size("dim", spec.dim);
  real("separation", spec.separation);
  real("noise_std", spec.noise_std);
  real("class_scale", spec.class_scale);
  real("shared_class_weight", spec.shared_class_weight);
  if (s.contains("rare_slices")) {
    spec.rare_slices = get_index_list(s["rare_slices"], "stream.rare_slices");
  }
  real("imbalance", spec.imbalance);
  size("common_initial_size", spec.common_initial_size);
  size("rounds", spec.rounds);
  size("rare_every", spec.rare_every);
  size("redundancy", spec.redundancy);
  size("episode_size", spec.episode_size);
  size("eval_per_slice", spec.eval_per_slice);
  if (s.contains("schedule")) {
    const json& v = s["schedule"];
    if (v.is_array()) {
      spec.schedule = sim::SchedulePreset::kExplicit;
      spec.explicit_schedule = get_index_list(v, "stream.schedule");
    } else {
      const std::string name = get_string(v, "stream.schedule");
      if (name == "every_k") {
        spec.schedule = sim::SchedulePreset::kEveryK;
      } else if (name == "sequential") {
        spec.schedule = sim::SchedulePreset::kSequential;
      } else {
        fail("stream.schedule",
             "must be \"every_k\", \"sequential\" or an array of slice ids");
      }
    }
  }
}

void parse_maximizer(const json& m, MaximizerConfig& cfg) {
  reject_unknown(m, "maximizer", {"algorithm", "epsilon", "partitions"});
  if (m.contains("algorithm")) {
    const std::string a = get_string(m["algorithm"], "maximizer.algorithm");
    if (a == "naive") {
      cfg.algorithm = Algorithm::kNaive;
    } else if (a == "lazy") {
      cfg.algorithm = Algorithm::kLazy;
    } else if (a == "stochastic") {
      cfg.algorithm = Algorithm::kStochastic;
    } else {
      fail("maximizer.algorithm", "must be naive, lazy or stochastic");
    }
  }
  if (m.contains("epsilon")) {
    cfg.epsilon = get_number(m["epsilon"], "maximizer.epsilon");
  }
  if (cfg.algorithm == Algorithm::kStochastic && !cfg.epsilon) {
    fail("maximizer.epsilon", "required for the stochastic algorithm");
  }
  if (cfg.algorithm != Algorithm::kStochastic && cfg.epsilon) {
    fail("maximizer.epsilon", "only valid with the stochastic algorithm");
  }
  if (m.contains("partitions")) {
    cfg.partitions = get_unsigned(m["partitions"], "maximizer.partitions");
  }
}

void parse_learner(const json& l, sim::LearnerHyper& hyper) {
  reject_unknown(l, "learner", {"step_size", "epochs", "l2", "init_scale"});
  if (l.contains("step_size")) hyper.step_size = get_number(l["step_size"], "learner.step_size");
  if (l.contains("epochs")) hyper.epochs = get_unsigned(l["epochs"], "learner.epochs");
  if (l.contains("l2")) hyper.l2 = get_number(l["l2"], "learner.l2");
  if (l.contains("init_scale")) {
    hyper.init_scale = get_number(l["init_scale"], "learner.init_scale");
  }
}

}  // namespace

void ExperimentConfig::validate() const {
  if (methods.empty()) fail("methods", "at least one method is required");
  if (seeds.empty()) fail("seeds", "at least one seed is required");
  if (workers == 0) fail("workers", "must be >= 1");
  std::set<sim::Method> seen(methods.begin(), methods.end());
  if (seen.size() != methods.size()) fail("methods", "contains duplicates");
  std::set<std::uint64_t> seed_set(seeds.begin(), seeds.end());
  if (seed_set.size() != seeds.size()) fail("seeds", "contains duplicates");
  hyper.validate();
  stream.validate();
  if (!embeddings && stream.dim < stream.slices) {
    fail("stream.dim", "must be >= stream.slices for synthetic streams");
  }
}

ExperimentConfig parse_config_text(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kConfig, std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) fail("config", "top level must be an object");
  reject_unknown(doc, "",
                 {"seed", "seeds", "method", "methods", "budget", "rho",
                  "maximizer", "learner", "stream", "rarity",
                  "similar_features", "workers", "output", "embeddings"});

  ExperimentConfig cfg;
  if (doc.contains("seed") && doc.contains("seeds")) {
    fail("seed", "give either seed or seeds, not both");
  }
  if (doc.contains("seed")) cfg.seeds = {get_unsigned(doc["seed"], "seed")};
  if (doc.contains("seeds")) {
    const json& v = doc["seeds"];
    if (!v.is_array()) fail("seeds", "must be an array of integers");
    cfg.seeds.clear();
    for (std::size_t i = 0; i < v.size(); ++i) {
      cfg.seeds.push_back(get_unsigned(v[i], "seeds[" + std::to_string(i) + "]"));
    }
  }

  if (doc.contains("method") && doc.contains("methods")) {
    fail("method", "give either method or methods, not both");
  }
  if (doc.contains("method")) cfg.methods = {get_method(doc["method"], "method")};
  if (doc.contains("methods")) {
    const json& v = doc["methods"];
    if (!v.is_array()) fail("methods", "must be an array of method names");
    for (std::size_t i = 0; i < v.size(); ++i) {
      cfg.methods.push_back(get_method(v[i], "methods[" + std::to_string(i) + "]"));
    }
  }
  if (!doc.contains("method") && !doc.contains("methods")) {
    fail("method", "missing; name at least one method");
  }

  if (doc.contains("budget")) {
    const json& v = doc["budget"];
    if (!v.is_number_integer()) fail("budget", "must be an integer");
    cfg.hyper.budget = v.get<std::int64_t>();
  }
  if (doc.contains("rho")) cfg.hyper.rho = get_number(doc["rho"], "rho");
  if (doc.contains("maximizer")) {
    parse_maximizer(object_at(doc, "maximizer", "maximizer"), cfg.hyper.maximizer);
  }
  if (doc.contains("learner")) {
    parse_learner(object_at(doc, "learner", "learner"), cfg.hyper.learner);
  }
  if (doc.contains("rarity")) {
    const std::string r = get_string(doc["rarity"], "rarity");
    if (r == "configured") {
      cfg.hyper.rarity = RarityRule::kConfigured;
    } else if (r == "size_heuristic") {
      cfg.hyper.rarity = RarityRule::kSizeHeuristic;
    } else {
      fail("rarity", "must be configured or size_heuristic");
    }
  }
  if (doc.contains("similar_features")) {
    const std::string f = get_string(doc["similar_features"], "similar_features");
    if (f != "raw" && f != "gradient") fail("similar_features", "must be raw or gradient");
    cfg.hyper.similar_gradient_features = f == "gradient";
  }
  if (doc.contains("stream")) parse_stream(object_at(doc, "stream", "stream"), cfg.stream);
  if (doc.contains("workers")) cfg.workers = get_unsigned(doc["workers"], "workers");
  if (doc.contains("output")) cfg.output = get_string(doc["output"], "output");
  if (doc.contains("embeddings")) {
    const json& e = object_at(doc, "embeddings", "embeddings");
    reject_unknown(e, "embeddings", {"path", "sidecar"});
    if (!e.contains("path")) fail("embeddings.path", "missing");
    if (!e.contains("sidecar")) fail("embeddings.sidecar", "missing");
    cfg.embeddings = EmbeddingSource{get_string(e["path"], "embeddings.path"),
                                     get_string(e["sidecar"], "embeddings.sidecar")};
  }
  // Range checks on values that passed the type checks.
  if (!(cfg.hyper.rho >= 0.0 && cfg.hyper.rho <= 1.0)) fail("rho", "must lie in [0, 1]");
  if (cfg.hyper.budget < 1) fail("budget", "must be >= 1");
  cfg.validate();
  return cfg;
}

ExperimentConfig parse_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read config file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

void apply_seed_override(ExperimentConfig& cfg, std::string_view value) {
  std::uint64_t seed = 0;
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, seed);
  if (value.empty() || ec != std::errc() || ptr != end) {
    fail("seed", "override '" + std::string(value) + "' is not a nonnegative integer");
  }
  cfg.seeds = {seed};
}

}  // namespace streamline
