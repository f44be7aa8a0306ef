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

#ifndef STREAMLINE_KERNEL_H_
#define STREAMLINE_KERNEL_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

namespace streamline {

using ItemId = std::int64_t;

// A dense real feature vector. Values are stored as given; call normalized()
// at ingestion time to obtain the unit-norm copy kernels are built from.
class Embedding {
 public:
  Embedding() = default;
  explicit Embedding(std::vector<double> values);

  std::span<const double> values() const { return values_; }
  std::size_t dim() const { return values_.size(); }
  double norm() const;
  bool is_zero() const;

  // Unit-norm copy. Idempotent up to rounding; throws kZeroVector.
  Embedding normalized() const;

  friend bool operator==(const Embedding&, const Embedding&) = default;

 private:
  std::vector<double> values_;
};

double dot(std::span<const double> a, std::span<const double> b);

// The per-object embeddings of one image. Objects are L2-normalized on
// construction.
class ObjectSetEmbedding {
 public:
  explicit ObjectSetEmbedding(std::vector<Embedding> objects);

  std::span<const Embedding> objects() const { return objects_; }
  std::size_t size() const { return objects_.size(); }
  std::size_t dim() const { return objects_.front().dim(); }

 private:
  std::vector<Embedding> objects_;
};

using KernelItem = std::variant<Embedding, ObjectSetEmbedding>;

enum class Metric { kCosine, kRbf, kObjectSet };

// cosine for flat embeddings, object_set for object collections.
Metric default_metric(const KernelItem& item);

double cosine_similarity(const Embedding& a, const Embedding& b);
double rbf_similarity(const Embedding& a, const Embedding& b, double bandwidth);
double object_set_similarity(const ObjectSetEmbedding& x1,
                             const ObjectSetEmbedding& x2);

struct KernelOptions {
  Metric metric = Metric::kCosine;
  double bandwidth = 1.0;  // rbf only
};

// Row-major nonnegative similarity matrix between two indexed collections.
// Row and column ids default to 0..n-1 and can be replaced with stable item
// ids by the caller.
class SimilarityMatrix {
 public:
  SimilarityMatrix() = default;
  SimilarityMatrix(std::size_t rows, std::size_t cols,
                   std::vector<double> entries);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  double operator()(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }
  std::span<const double> row(std::size_t i) const {
    return {entries_.data() + i * cols_, cols_};
  }
  std::span<const double> entries() const { return entries_; }

  std::span<const ItemId> row_ids() const { return row_ids_; }
  std::span<const ItemId> col_ids() const { return col_ids_; }
  void set_row_ids(std::vector<ItemId> ids);
  void set_col_ids(std::vector<ItemId> ids);

  SimilarityMatrix submatrix(std::span<const std::size_t> rows,
                             std::span<const std::size_t> cols) const;
  SimilarityMatrix scaled(double factor) const;
  // Column-wise concatenation [this | right]; row counts must match.
  SimilarityMatrix hconcat(const SimilarityMatrix& right) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> entries_;
  std::vector<ItemId> row_ids_;
  std::vector<ItemId> col_ids_;
};

// entries[i][j] = metric(rows[i], cols[j]). Inputs are used as given;
// normalize at ingestion.
SimilarityMatrix build_kernel(std::span<const Embedding> rows,
                              std::span<const Embedding> cols,
                              const KernelOptions& options = {});
SimilarityMatrix build_kernel(std::span<const ObjectSetEmbedding> rows,
                              std::span<const ObjectSetEmbedding> cols);
// Dispatches on the item kind; mixing kinds, or pairing a metric with the
// wrong kind, throws kMixedKinds.
SimilarityMatrix build_kernel(std::span<const KernelItem> rows,
                              std::span<const KernelItem> cols,
                              const KernelOptions& options);

}  // namespace streamline

#endif  // STREAMLINE_KERNEL_H_
