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

#include "streamline/metrics.h"

namespace streamline::sim {

std::optional<double> labels_to_reach(std::span<const CurvePoint> curve,
                                      double target) {
  for (std::size_t i = 0; i < curve.size(); ++i) {
    if (curve[i].metric < target) continue;
    if (i == 0) return curve[0].labels;
    const CurvePoint& lo = curve[i - 1];
    const CurvePoint& hi = curve[i];
    const double frac = (target - lo.metric) / (hi.metric - lo.metric);
    return lo.labels + frac * (hi.labels - lo.labels);
  }
  return std::nullopt;
}

std::optional<double> labeling_efficiency(std::span<const CurvePoint> method,
                                          std::span<const CurvePoint> random,
                                          double target) {
  const auto m = labels_to_reach(method, target);
  const auto r = labels_to_reach(random, target);
  if (!m || !r || *m <= 0.0) return std::nullopt;
  return *r / *m;
}

std::int64_t MetricsLog::labels_spent() const {
  std::int64_t total = 0;
  for (const auto& r : rounds) total += r.granted_b;
  return total;
}

std::vector<CurvePoint> MetricsLog::curve(MetricKind kind) const {
  std::vector<CurvePoint> out;
  out.push_back({static_cast<double>(initial_labels),
                 kind == MetricKind::kRare ? initial_rare : initial_full});
  for (const auto& r : rounds) {
    out.push_back({static_cast<double>(r.labels_total),
                   kind == MetricKind::kRare ? r.rare_metric : r.full_metric});
  }
  return out;
}

}  // namespace streamline::sim
