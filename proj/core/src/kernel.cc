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

#include "streamline/kernel.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "streamline/error.h"

namespace streamline {
namespace {

double clamp_unit(double v) { return std::clamp(v, 0.0, 1.0); }

void check_same_dim(std::size_t a, std::size_t b) {
  if (a != b) {
    throw Error(ErrorCode::kDimensionMismatch,
                "embedding dimensions differ: " + std::to_string(a) + " vs " +
                    std::to_string(b));
  }
}

void check_nonempty(std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0) {
    throw Error(ErrorCode::kEmptyInput,
                "kernel collections must be nonempty (rows=" +
                    std::to_string(rows) + ", cols=" + std::to_string(cols) +
                    ")");
  }
}

std::vector<ItemId> iota_ids(std::size_t n) {
  std::vector<ItemId> ids(n);
  for (std::size_t i = 0; i < n; ++i) ids[i] = static_cast<ItemId>(i);
  return ids;
}

// Coverage of `from`'s objects by `by`'s objects: mean over from of the best
// clamped dot against by.
double mean_best_cover(std::span<const Embedding> from,
                       std::span<const Embedding> by) {
  double total = 0.0;
  for (const Embedding& e : from) {
    double best = 0.0;
    for (const Embedding& f : by) {
      best = std::max(best, clamp_unit(dot(e.values(), f.values())));
    }
    total += best;
  }
  return total / static_cast<double>(from.size());
}

}  // namespace

Embedding::Embedding(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) {
    throw Error(ErrorCode::kEmptyInput, "embedding must have dim >= 1");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "embedding contains a non-finite value");
    }
  }
}

double Embedding::norm() const { return std::sqrt(dot(values_, values_)); }

bool Embedding::is_zero() const {
  return std::all_of(values_.begin(), values_.end(),
                     [](double v) { return v == 0.0; });
}

Embedding Embedding::normalized() const {
  const double n = norm();
  if (n == 0.0) {
    throw Error(ErrorCode::kZeroVector, "cannot normalize a zero vector");
  }
  std::vector<double> out(values_.size());
  std::transform(values_.begin(), values_.end(), out.begin(),
                 [n](double v) { return v / n; });
  return Embedding(std::move(out));
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

ObjectSetEmbedding::ObjectSetEmbedding(std::vector<Embedding> objects) {
  if (objects.empty()) {
    throw Error(ErrorCode::kEmptyInput,
                "object set must contain at least one object");
  }
  const std::size_t d = objects.front().dim();
  objects_.reserve(objects.size());
  for (const Embedding& e : objects) {
    check_same_dim(d, e.dim());
    objects_.push_back(e.normalized());
  }
}

Metric default_metric(const KernelItem& item) {
  return std::holds_alternative<ObjectSetEmbedding>(item) ? Metric::kObjectSet
                                                          : Metric::kCosine;
}

double cosine_similarity(const Embedding& a, const Embedding& b) {
  check_same_dim(a.dim(), b.dim());
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) {
    throw Error(ErrorCode::kZeroVector,
                "cosine similarity is undefined for a zero vector");
  }
  return clamp_unit(dot(a.values(), b.values()) / (na * nb));
}

double rbf_similarity(const Embedding& a, const Embedding& b,
                      double bandwidth) {
  if (!(bandwidth > 0.0) || !std::isfinite(bandwidth)) {
    throw Error(ErrorCode::kInvalidArgument,
                "rbf bandwidth must be a positive finite number, got " +
                    std::to_string(bandwidth));
  }
  check_same_dim(a.dim(), b.dim());
  double sq = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    const double diff = a.values()[i] - b.values()[i];
    sq += diff * diff;
  }
  return std::exp(-sq / (2.0 * bandwidth * bandwidth));
}

double object_set_similarity(const ObjectSetEmbedding& x1,
                             const ObjectSetEmbedding& x2) {
  check_same_dim(x1.dim(), x2.dim());
  return 0.5 * (mean_best_cover(x1.objects(), x2.objects()) +
                mean_best_cover(x2.objects(), x1.objects()));
}

SimilarityMatrix::SimilarityMatrix(std::size_t rows, std::size_t cols,
                                   std::vector<double> entries)
    : rows_(rows),
      cols_(cols),
      entries_(std::move(entries)),
      row_ids_(iota_ids(rows)),
      col_ids_(iota_ids(cols)) {
  if (entries_.size() != rows_ * cols_) {
    throw Error(ErrorCode::kInvalidArgument,
                "similarity matrix expects " + std::to_string(rows_ * cols_) +
                    " entries, got " + std::to_string(entries_.size()));
  }
  for (double v : entries_) {
    if (!std::isfinite(v) || v < 0.0) {
      throw Error(ErrorCode::kInvalidArgument,
                  "similarity entries must be finite and nonnegative");
    }
  }
}

void SimilarityMatrix::set_row_ids(std::vector<ItemId> ids) {
  if (ids.size() != rows_) {
    throw Error(ErrorCode::kInvalidArgument, "row id count mismatch");
  }
  row_ids_ = std::move(ids);
}

void SimilarityMatrix::set_col_ids(std::vector<ItemId> ids) {
  if (ids.size() != cols_) {
    throw Error(ErrorCode::kInvalidArgument, "column id count mismatch");
  }
  col_ids_ = std::move(ids);
}

SimilarityMatrix SimilarityMatrix::submatrix(
    std::span<const std::size_t> rows, std::span<const std::size_t> cols) const {
  std::vector<double> out;
  out.reserve(rows.size() * cols.size());
  std::vector<ItemId> rids;
  std::vector<ItemId> cids;
  for (std::size_t r : rows) {
    if (r >= rows_) throw Error(ErrorCode::kOutOfRange, "submatrix row index");
    rids.push_back(row_ids_[r]);
    for (std::size_t c : cols) {
      if (c >= cols_) {
        throw Error(ErrorCode::kOutOfRange, "submatrix column index");
      }
      out.push_back((*this)(r, c));
    }
  }
  for (std::size_t c : cols) cids.push_back(col_ids_[c]);
  SimilarityMatrix m(rows.size(), cols.size(), std::move(out));
  m.row_ids_ = std::move(rids);
  m.col_ids_ = std::move(cids);
  return m;
}

SimilarityMatrix SimilarityMatrix::scaled(double factor) const {
  if (!(factor > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "scale factor must be positive");
  }
  std::vector<double> out(entries_);
  for (double& v : out) v *= factor;
  SimilarityMatrix m(rows_, cols_, std::move(out));
  m.row_ids_ = row_ids_;
  m.col_ids_ = col_ids_;
  return m;
}

SimilarityMatrix SimilarityMatrix::hconcat(const SimilarityMatrix& right) const {
  if (right.rows_ != rows_) {
    throw Error(ErrorCode::kDimensionMismatch,
                "hconcat requires equal row counts");
  }
  const std::size_t cols = cols_ + right.cols_;
  std::vector<double> out;
  out.reserve(rows_ * cols);
  for (std::size_t i = 0; i < rows_; ++i) {
    auto l = row(i);
    auto r = right.row(i);
    out.insert(out.end(), l.begin(), l.end());
    out.insert(out.end(), r.begin(), r.end());
  }
  SimilarityMatrix m(rows_, cols, std::move(out));
  m.row_ids_ = row_ids_;
  m.col_ids_ = col_ids_;
  m.col_ids_.insert(m.col_ids_.end(), right.col_ids_.begin(),
                    right.col_ids_.end());
  return m;
}

SimilarityMatrix build_kernel(std::span<const Embedding> rows,
                              std::span<const Embedding> cols,
                              const KernelOptions& options) {
  check_nonempty(rows.size(), cols.size());
  if (options.metric == Metric::kObjectSet) {
    throw Error(ErrorCode::kMixedKinds,
                "object_set metric requires object-set embeddings");
  }
  const std::size_t d = rows.front().dim();
  for (const Embedding& e : rows) check_same_dim(d, e.dim());
  for (const Embedding& e : cols) check_same_dim(d, e.dim());

  std::vector<double> out(rows.size() * cols.size());
  if (options.metric == Metric::kCosine) {
    std::vector<double> col_norms(cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      col_norms[j] = cols[j].norm();
      if (col_norms[j] == 0.0) {
        throw Error(ErrorCode::kZeroVector,
                    "column " + std::to_string(j) + " is a zero vector");
      }
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const double ni = rows[i].norm();
      if (ni == 0.0) {
        throw Error(ErrorCode::kZeroVector,
                    "row " + std::to_string(i) + " is a zero vector");
      }
      for (std::size_t j = 0; j < cols.size(); ++j) {
        out[i * cols.size() + j] = clamp_unit(
            dot(rows[i].values(), cols[j].values()) / (ni * col_norms[j]));
      }
    }
  } else {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (std::size_t j = 0; j < cols.size(); ++j) {
        out[i * cols.size() + j] =
            rbf_similarity(rows[i], cols[j], options.bandwidth);
      }
    }
  }
  return SimilarityMatrix(rows.size(), cols.size(), std::move(out));
}

SimilarityMatrix build_kernel(std::span<const ObjectSetEmbedding> rows,
                              std::span<const ObjectSetEmbedding> cols) {
  check_nonempty(rows.size(), cols.size());
  std::vector<double> out(rows.size() * cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
      out[i * cols.size() + j] = object_set_similarity(rows[i], cols[j]);
    }
  }
  return SimilarityMatrix(rows.size(), cols.size(), std::move(out));
}

SimilarityMatrix build_kernel(std::span<const KernelItem> rows,
                              std::span<const KernelItem> cols,
                              const KernelOptions& options) {
  check_nonempty(rows.size(), cols.size());
  const bool want_sets = options.metric == Metric::kObjectSet;
  auto check_kind = [want_sets](const KernelItem& item) {
    if (std::holds_alternative<ObjectSetEmbedding>(item) != want_sets) {
      throw Error(ErrorCode::kMixedKinds,
                  want_sets ? "object_set metric given a flat embedding"
                            : "flat metric given an object-set embedding");
    }
  };
  for (const KernelItem& k : rows) check_kind(k);
  for (const KernelItem& k : cols) check_kind(k);

  if (want_sets) {
    std::vector<ObjectSetEmbedding> r, c;
    r.reserve(rows.size());
    c.reserve(cols.size());
    for (const KernelItem& k : rows) r.push_back(std::get<ObjectSetEmbedding>(k));
    for (const KernelItem& k : cols) c.push_back(std::get<ObjectSetEmbedding>(k));
    return build_kernel(std::span<const ObjectSetEmbedding>(r),
                        std::span<const ObjectSetEmbedding>(c));
  }
  std::vector<Embedding> r, c;
  r.reserve(rows.size());
  c.reserve(cols.size());
  for (const KernelItem& k : rows) r.push_back(std::get<Embedding>(k));
  for (const KernelItem& k : cols) c.push_back(std::get<Embedding>(k));
  return build_kernel(std::span<const Embedding>(r),
                      std::span<const Embedding>(c), options);
}

}  // namespace streamline
