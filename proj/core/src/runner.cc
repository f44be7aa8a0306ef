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

#include "streamline/runner.h"

#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

#include "streamline/embedding_io.h"
#include "streamline/error.h"

namespace streamline {
namespace {

using nlohmann::ordered_json;
using sim::MetricKind;
using sim::MetricsLog;

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;
};

MeanStd mean_std(const std::vector<double>& xs) {
  MeanStd r;
  for (double x : xs) r.mean += x;
  r.mean /= static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - r.mean) * (x - r.mean);
    r.std = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  }
  return r;
}

ordered_json to_json(const MeanStd& m) {
  return ordered_json{{"mean", m.mean}, {"std", m.std}};
}

// Mean curve over runs; rounds are aligned by index.
std::vector<sim::CurvePoint> mean_curve(
    const std::vector<std::vector<sim::CurvePoint>>& curves) {
  std::size_t len = curves.front().size();
  for (const auto& c : curves) len = std::min(len, c.size());
  std::vector<sim::CurvePoint> out(len);
  for (const auto& c : curves) {
    for (std::size_t i = 0; i < len; ++i) {
      out[i].labels += c[i].labels / static_cast<double>(curves.size());
      out[i].metric += c[i].metric / static_cast<double>(curves.size());
    }
  }
  return out;
}

ordered_json optional_number(const std::optional<double>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, sep)) out.push_back(cell);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

template <typename T>
T parse_cell(const std::string& s, std::size_t line, const char* column) {
  T v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::kFormat, "metrics line " + std::to_string(line) +
                                        ": bad " + column + " '" + s + "'");
  }
  return v;
}

constexpr const char* kCsvHeader =
    "method,seed,round,labels_total,full_metric,rare_metric,identified_slice,"
    "true_slice,granted_b,gamma";

}  // namespace

std::string format_number(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::vector<MetricsLog> run_all(const ExperimentConfig& cfg) {
  cfg.validate();
  std::optional<EmbeddingTable> table;
  if (cfg.embeddings) {
    table = read_embeddings(cfg.embeddings->path, cfg.embeddings->sidecar);
  }
  std::vector<sim::EpisodeStream> streams;
  for (std::uint64_t seed : cfg.seeds) {
    sim::StreamSpec spec = cfg.stream;
    spec.seed = seed;
    streams.push_back(table ? sim::stream_from_table(*table, spec)
                            : sim::generate_stream(spec));
  }

  const std::size_t jobs = cfg.methods.size() * cfg.seeds.size();
  std::vector<std::optional<MetricsLog>> logs(jobs);
  std::vector<std::exception_ptr> errors(jobs);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t j = next++; j < jobs; j = next++) {
      const std::size_t m = j / cfg.seeds.size();
      const std::size_t s = j % cfg.seeds.size();
      try {
        logs[j] = sim::run_experiment(streams[s], cfg.methods[m], cfg.hyper,
                                      cfg.seeds[s]);
      } catch (...) {
        errors[j] = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::min(cfg.workers, jobs);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  std::vector<MetricsLog> out;
  for (std::size_t j = 0; j < jobs; ++j) {
    if (errors[j]) std::rethrow_exception(errors[j]);
    out.push_back(std::move(*logs[j]));
  }
  return out;
}

void write_metrics_csv(std::ostream& out, const std::vector<MetricsLog>& logs) {
  out << kCsvHeader << '\n';
  for (const auto& log : logs) {
    for (const auto& r : log.rounds) {
      out << log.method << ',' << log.seed << ',' << r.round << ','
          << r.labels_total << ',' << format_number(r.full_metric) << ','
          << format_number(r.rare_metric) << ','
          << (r.identified_slice ? std::to_string(*r.identified_slice) : "-1")
          << ',' << r.true_slice << ',' << r.granted_b << ','
          << format_number(r.gamma) << '\n';
    }
  }
}

void write_selections_jsonl(std::ostream& out,
                            const std::vector<MetricsLog>& logs) {
  for (const auto& log : logs) {
    for (const auto& r : log.rounds) {
      ordered_json rec;
      rec["method"] = log.method;
      rec["seed"] = log.seed;
      rec["round"] = r.round;
      rec["true_slice"] = r.true_slice;
      rec["identified_slice"] =
          r.identified_slice ? ordered_json(*r.identified_slice) : ordered_json(nullptr);
      rec["selected"] = r.selected;
      rec["pool_sizes"] = r.pool_sizes;
      out << rec.dump() << '\n';
    }
  }
}

ordered_json summarize(const std::vector<MetricsLog>& logs) {
  std::vector<std::string> order;
  std::map<std::string, std::vector<const MetricsLog*>> by_method;
  for (const auto& log : logs) {
    if (log.rounds.empty()) continue;
    if (!by_method.contains(log.method)) order.push_back(log.method);
    by_method[log.method].push_back(&log);
  }

  auto curves = [&](const std::string& m, MetricKind kind) {
    std::vector<std::vector<sim::CurvePoint>> cs;
    for (const auto* log : by_method.at(m)) cs.push_back(log->curve(kind));
    return mean_curve(cs);
  };

  ordered_json doc;
  std::optional<double> target;
  if (by_method.contains("random")) {
    std::vector<double> finals;
    for (const auto* log : by_method.at("random")) {
      finals.push_back(log->final_round().rare_metric);
    }
    target = mean_std(finals).mean;
  }
  doc["efficiency_metric"] = "rare";
  doc["efficiency_target"] = optional_number(target);

  ordered_json methods = ordered_json::object();
  for (const auto& m : order) {
    std::vector<double> full, rare, labels, spent;
    std::vector<std::vector<double>> pools;
    for (const auto* log : by_method.at(m)) {
      full.push_back(log->final_round().full_metric);
      rare.push_back(log->final_round().rare_metric);
      labels.push_back(static_cast<double>(log->final_round().labels_total));
      spent.push_back(static_cast<double>(log->labels_spent()));
      const auto& sizes = log->final_round().pool_sizes;
      pools.resize(sizes.size());
      for (std::size_t t = 0; t < sizes.size(); ++t) {
        pools[t].push_back(static_cast<double>(sizes[t]));
      }
    }
    ordered_json entry;
    entry["runs"] = by_method.at(m).size();
    entry["final_full_metric"] = to_json(mean_std(full));
    entry["final_rare_metric"] = to_json(mean_std(rare));
    entry["final_labels_total"] = to_json(mean_std(labels));
    entry["labels_spent"] = to_json(mean_std(spent));
    ordered_json pool_json = ordered_json::array();
    for (const auto& p : pools) pool_json.push_back(to_json(mean_std(p)));
    entry["final_pool_sizes"] = pool_json;
    std::optional<double> eff;
    if (target) {
      eff = sim::labeling_efficiency(curves(m, MetricKind::kRare),
                                     curves("random", MetricKind::kRare), *target);
    }
    entry["labeling_efficiency"] = optional_number(eff);
    methods[m] = entry;
  }
  doc["methods"] = methods;
  return doc;
}

void prepare_output_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw Error(ErrorCode::kIo, "cannot create output directory " + dir.string());
  }
  const auto probe = dir / ".write_probe";
  {
    std::ofstream f(probe);
    if (!f || !(f << "ok")) {
      throw Error(ErrorCode::kIo, "output directory " + dir.string() +
                                      " is not writable");
    }
  }
  std::filesystem::remove(probe, ec);
}

void write_outputs(const std::filesystem::path& dir,
                   const std::vector<MetricsLog>& logs) {
  auto open = [&](const char* name) {
    std::ofstream f(dir / name, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(ErrorCode::kIo, "cannot write " + (dir / name).string());
    f.imbue(std::locale::classic());
    return f;
  };
  {
    auto f = open("metrics.csv");
    write_metrics_csv(f, logs);
  }
  {
    auto f = open("selections.jsonl");
    write_selections_jsonl(f, logs);
  }
  {
    auto f = open("summary.json");
    f << summarize(logs).dump(2) << '\n';
  }
}

std::vector<MetricsRow> read_metrics_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw Error(ErrorCode::kFormat, "metrics line 1: unexpected header");
  }
  std::vector<MetricsRow> rows;
  for (std::size_t n = 2; std::getline(in, line); ++n) {
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != 10) {
      throw Error(ErrorCode::kFormat, "metrics line " + std::to_string(n) +
                                          ": expected 10 columns, got " +
                                          std::to_string(cells.size()));
    }
    MetricsRow r;
    r.method = cells[0];
    r.seed = parse_cell<std::uint64_t>(cells[1], n, "seed");
    r.round = parse_cell<std::size_t>(cells[2], n, "round");
    r.labels_total = parse_cell<double>(cells[3], n, "labels_total");
    r.full_metric = parse_cell<double>(cells[4], n, "full_metric");
    r.rare_metric = parse_cell<double>(cells[5], n, "rare_metric");
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<MethodEfficiency> efficiency_from_rows(
    const std::vector<MetricsRow>& rows, double target, MetricKind kind) {
  std::vector<std::string> order;
  std::map<std::string, std::map<std::uint64_t, std::vector<sim::CurvePoint>>> runs;
  for (const auto& r : rows) {
    if (!runs.contains(r.method)) order.push_back(r.method);
    auto& curve = runs[r.method][r.seed];
    if (curve.size() <= r.round) curve.resize(r.round + 1);
    curve[r.round] = {r.labels_total,
                      kind == MetricKind::kRare ? r.rare_metric : r.full_metric};
  }
  if (!runs.contains("random")) {
    throw Error(ErrorCode::kInvalidArgument,
                "metrics contain no random rows to compare against");
  }
  auto averaged = [&](const std::string& m) {
    std::vector<std::vector<sim::CurvePoint>> cs;
    for (const auto& [seed, c] : runs.at(m)) cs.push_back(c);
    return mean_curve(cs);
  };
  const auto random = averaged("random");
  std::vector<MethodEfficiency> out;
  for (const auto& m : order) {
    out.push_back({m, sim::labeling_efficiency(averaged(m), random, target)});
  }
  return out;
}

}  // namespace streamline
