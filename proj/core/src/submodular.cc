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

#include "streamline/submodular.h"

#include <algorithm>
#include <numeric>
#include <string>
#include <utility>

#include "streamline/error.h"

namespace streamline {
namespace {

std::vector<std::size_t> as_set(std::span<const std::size_t> subset,
                                std::size_t ground) {
  std::vector<std::size_t> s(subset.begin(), subset.end());
  for (std::size_t x : s) {
    if (x >= ground) {
      throw Error(ErrorCode::kOutOfRange,
                  "ground index " + std::to_string(x) +
                      " out of range for ground size " +
                      std::to_string(ground));
    }
  }
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

std::vector<double> column_major(const SimilarityMatrix& m) {
  std::vector<double> out(m.rows() * m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      out[j * m.rows() + i] = m(i, j);
    }
  }
  return out;
}

std::vector<std::size_t> all_indices(std::size_t n) {
  std::vector<std::size_t> v(n);
  std::iota(v.begin(), v.end(), std::size_t{0});
  return v;
}

bool same_collection(const SimilarityMatrix& m) {
  return m.rows() == m.cols() &&
         std::equal(m.row_ids().begin(), m.row_ids().end(),
                    m.col_ids().begin());
}

// Shared by FL and FLCG: coverage vector cur over rows, gain of column x is
// Σ_i max(S_ix − cur_i, 0).
class CoverageState final : public GainState {
 public:
  CoverageState(const std::vector<double>& by_column, std::size_t rows,
                std::vector<double> initial)
      : by_column_(by_column), rows_(rows), cur_(std::move(initial)) {}

  double gain(std::size_t x) const override {
    const double* col = by_column_.data() + x * rows_;
    double g = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) {
      const double d = col[i] - cur_[i];
      if (d > 0.0) g += d;
    }
    return g;
  }

  void add(std::size_t x) override {
    const double* col = by_column_.data() + x * rows_;
    for (std::size_t i = 0; i < rows_; ++i) cur_[i] = std::max(cur_[i], col[i]);
  }

 private:
  const std::vector<double>& by_column_;
  std::size_t rows_;
  std::vector<double> cur_;
};

class FlqmiState final : public GainState {
 public:
  FlqmiState(const SimilarityMatrix& kernel, const std::vector<double>& row_max)
      : kernel_(kernel), row_max_(row_max), cur_(kernel.cols(), 0.0) {}

  double gain(std::size_t x) const override {
    auto row = kernel_.row(x);
    double g = row_max_[x];
    for (std::size_t j = 0; j < row.size(); ++j) {
      const double d = row[j] - cur_[j];
      if (d > 0.0) g += d;
    }
    return g;
  }

  void add(std::size_t x) override {
    auto row = kernel_.row(x);
    for (std::size_t j = 0; j < row.size(); ++j) {
      cur_[j] = std::max(cur_[j], row[j]);
    }
  }

 private:
  const SimilarityMatrix& kernel_;
  const std::vector<double>& row_max_;
  std::vector<double> cur_;
};

}  // namespace

// ---------------------------------------------------------------------------
// Facility location

FacilityLocation::FacilityLocation(SimilarityMatrix kernel)
    : kernel_(std::move(kernel)), by_column_(column_major(kernel_)) {}

double FacilityLocation::value(std::span<const std::size_t> subset) const {
  const auto a = as_set(subset, ground_size());
  if (a.empty()) return 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < kernel_.rows(); ++i) {
    double best = 0.0;
    for (std::size_t j : a) best = std::max(best, kernel_(i, j));
    total += best;
  }
  return total;
}

std::unique_ptr<GainState> FacilityLocation::make_state() const {
  return std::make_unique<CoverageState>(
      by_column_, kernel_.rows(), std::vector<double>(kernel_.rows(), 0.0));
}

std::unique_ptr<SetFunction> FacilityLocation::restrict_to(
    std::span<const std::size_t> ids) const {
  if (same_collection(kernel_)) {
    return std::make_unique<FacilityLocation>(kernel_.submatrix(ids, ids));
  }
  const auto rows = all_indices(kernel_.rows());
  return std::make_unique<FacilityLocation>(kernel_.submatrix(rows, ids));
}

// ---------------------------------------------------------------------------
// FLQMI

Flqmi::Flqmi(SimilarityMatrix unlabeled_by_query)
    : kernel_(std::move(unlabeled_by_query)), row_max_(kernel_.rows(), 0.0) {
  for (std::size_t i = 0; i < kernel_.rows(); ++i) {
    for (double v : kernel_.row(i)) row_max_[i] = std::max(row_max_[i], v);
  }
}

double Flqmi::value(std::span<const std::size_t> subset) const {
  const auto a = as_set(subset, ground_size());
  if (a.empty()) return 0.0;
  double query_relevance = 0.0;
  for (std::size_t i : a) query_relevance += row_max_[i];
  double query_coverage = 0.0;
  for (std::size_t j = 0; j < kernel_.cols(); ++j) {
    double best = 0.0;
    for (std::size_t i : a) best = std::max(best, kernel_(i, j));
    query_coverage += best;
  }
  return query_relevance + query_coverage;
}

std::unique_ptr<GainState> Flqmi::make_state() const {
  return std::make_unique<FlqmiState>(kernel_, row_max_);
}

std::unique_ptr<SetFunction> Flqmi::restrict_to(
    std::span<const std::size_t> ids) const {
  const auto cols = all_indices(kernel_.cols());
  return std::make_unique<Flqmi>(kernel_.submatrix(ids, cols));
}

// ---------------------------------------------------------------------------
// FLCG

Flcg::Flcg(SimilarityMatrix unlabeled_by_unlabeled,
           SimilarityMatrix unlabeled_by_private)
    : uu_(std::move(unlabeled_by_unlabeled)),
      up_(std::move(unlabeled_by_private)) {
  if (uu_.rows() != uu_.cols()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "FLCG requires a square U x U kernel");
  }
  if (up_.rows() != uu_.rows() ||
      !std::equal(uu_.row_ids().begin(), uu_.row_ids().end(),
                  up_.row_ids().begin())) {
    throw Error(ErrorCode::kDimensionMismatch,
                "FLCG kernels must share the U axis and its ordering");
  }
  by_column_ = column_major(uu_);
  private_max_.assign(up_.rows(), 0.0);
  for (std::size_t i = 0; i < up_.rows(); ++i) {
    for (double v : up_.row(i)) private_max_[i] = std::max(private_max_[i], v);
  }
}

double Flcg::value(std::span<const std::size_t> subset) const {
  const auto a = as_set(subset, ground_size());
  if (a.empty()) return 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < uu_.rows(); ++i) {
    double best = 0.0;
    for (std::size_t j : a) best = std::max(best, uu_(i, j));
    total += std::max(best - private_max_[i], 0.0);
  }
  return total;
}

std::unique_ptr<GainState> Flcg::make_state() const {
  return std::make_unique<CoverageState>(by_column_, uu_.rows(), private_max_);
}

std::unique_ptr<SetFunction> Flcg::restrict_to(
    std::span<const std::size_t> ids) const {
  const auto cols = all_indices(up_.cols());
  return std::make_unique<Flcg>(uu_.submatrix(ids, ids),
                                up_.submatrix(ids, cols));
}

// ---------------------------------------------------------------------------

double marginal_gain(const SetFunction& f, std::span<const std::size_t> subset,
                     std::size_t x) {
  const auto a = as_set(subset, f.ground_size());
  if (x >= f.ground_size()) {
    throw Error(ErrorCode::kOutOfRange,
                "ground index " + std::to_string(x) + " out of range");
  }
  if (std::binary_search(a.begin(), a.end(), x)) {
    throw Error(ErrorCode::kInvalidArgument,
                "marginal gain queried for element " + std::to_string(x) +
                    " already in the set");
  }
  auto state = f.make_state();
  for (std::size_t e : a) state->add(e);
  return state->gain(x);
}

double smi_value(const SetFunction& f, std::span<const std::size_t> a,
                 std::span<const std::size_t> b) {
  std::vector<std::size_t> joined(a.begin(), a.end());
  joined.insert(joined.end(), b.begin(), b.end());
  return f.value(a) + f.value(b) - f.value(joined);
}

double scg_value(const SetFunction& f, std::span<const std::size_t> a,
                 std::span<const std::size_t> b) {
  std::vector<std::size_t> joined(a.begin(), a.end());
  joined.insert(joined.end(), b.begin(), b.end());
  return f.value(joined) - f.value(b);
}

}  // namespace streamline
