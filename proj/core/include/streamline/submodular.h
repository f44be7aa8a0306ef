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

#ifndef STREAMLINE_SUBMODULAR_H_
#define STREAMLINE_SUBMODULAR_H_

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "streamline/kernel.h"

namespace streamline {

enum class FunctionKind { kFacilityLocation, kFlqmi, kFlcg };

// Incremental marginal-gain cache for one growing set A. Owned by a single
// maximizer run; never shared. Borrows the function's kernels, so it must not
// outlive the SetFunction that made it.
class GainState {
 public:
  virtual ~GainState() = default;
  // F(A ∪ {x}) − F(A) for the current A.
  virtual double gain(std::size_t x) const = 0;
  virtual void add(std::size_t x) = 0;
};

// A set function over a ground set {0, ..., ground_size() - 1}. Instances are
// immutable; value() is the definitional evaluation and make_state() the
// incremental route the maximizers use. Both must agree.
class SetFunction {
 public:
  virtual ~SetFunction() = default;

  virtual FunctionKind kind() const = 0;
  virtual std::size_t ground_size() const = 0;
  // Duplicate indices are ignored; indices >= ground_size() throw kOutOfRange.
  virtual double value(std::span<const std::size_t> subset) const = 0;
  virtual std::unique_ptr<GainState> make_state() const = 0;
  // The same function over the ground elements `ids`, re-indexed 0..k-1.
  virtual std::unique_ptr<SetFunction> restrict_to(
      std::span<const std::size_t> ids) const = 0;
};

// F(A) = Σ_i max_{j∈A} S_ij. Rows are summed over, columns form the ground.
class FacilityLocation final : public SetFunction {
 public:
  explicit FacilityLocation(SimilarityMatrix kernel);

  FunctionKind kind() const override { return FunctionKind::kFacilityLocation; }
  std::size_t ground_size() const override { return kernel_.cols(); }
  double value(std::span<const std::size_t> subset) const override;
  std::unique_ptr<GainState> make_state() const override;
  std::unique_ptr<SetFunction> restrict_to(
      std::span<const std::size_t> ids) const override;

  const SimilarityMatrix& kernel() const { return kernel_; }

 private:
  SimilarityMatrix kernel_;
  std::vector<double> by_column_;  // column-major copy for gain scans
};

// I(A; P) = Σ_{i∈A} max_{j∈P} S_ij + Σ_{j∈P} max_{i∈A} S_ij over a U×P
// kernel. The ground is U (rows); P is fixed at construction.
class Flqmi final : public SetFunction {
 public:
  explicit Flqmi(SimilarityMatrix unlabeled_by_query);

  FunctionKind kind() const override { return FunctionKind::kFlqmi; }
  std::size_t ground_size() const override { return kernel_.rows(); }
  double value(std::span<const std::size_t> subset) const override;
  std::unique_ptr<GainState> make_state() const override;
  std::unique_ptr<SetFunction> restrict_to(
      std::span<const std::size_t> ids) const override;

  const SimilarityMatrix& kernel() const { return kernel_; }

 private:
  SimilarityMatrix kernel_;
  std::vector<double> row_max_;  // max_{j∈P} S_ij
};

// H(A | P) = Σ_{i∈U} max(max_{j∈A} S_ij − max_{j∈P} S'_ij, 0) with S the
// U×U kernel and S' the U×P kernel. P may be empty.
class Flcg final : public SetFunction {
 public:
  Flcg(SimilarityMatrix unlabeled_by_unlabeled,
       SimilarityMatrix unlabeled_by_private);

  FunctionKind kind() const override { return FunctionKind::kFlcg; }
  std::size_t ground_size() const override { return uu_.cols(); }
  double value(std::span<const std::size_t> subset) const override;
  std::unique_ptr<GainState> make_state() const override;
  std::unique_ptr<SetFunction> restrict_to(
      std::span<const std::size_t> ids) const override;

  std::span<const double> private_max() const { return private_max_; }

 private:
  SimilarityMatrix uu_;
  SimilarityMatrix up_;
  std::vector<double> by_column_;
  std::vector<double> private_max_;
};

// value(A ∪ {x}) − value(A) through the incremental state. Throws
// kInvalidArgument when x ∈ A.
double marginal_gain(const SetFunction& f, std::span<const std::size_t> subset,
                     std::size_t x);

// I_F(A; B) = F(A) + F(B) − F(A ∪ B).
double smi_value(const SetFunction& f, std::span<const std::size_t> a,
                 std::span<const std::size_t> b);
// H_F(A | B) = F(A ∪ B) − F(B).
double scg_value(const SetFunction& f, std::span<const std::size_t> a,
                 std::span<const std::size_t> b);

// N_F(U; P) = |U| + |P|, the FLQMI normalizer used for slice identification.
constexpr double flqmi_normalizer(std::size_t unlabeled_size,
                                  std::size_t slice_size) {
  return static_cast<double>(unlabeled_size + slice_size);
}

}  // namespace streamline

#endif  // STREAMLINE_SUBMODULAR_H_
