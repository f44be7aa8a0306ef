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

#ifndef STREAMLINE_EMBEDDING_IO_H_
#define STREAMLINE_EMBEDDING_IO_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "streamline/kernel.h"

namespace streamline {

// Binary embedding file, all fields little-endian:
//
//   offset  size  field
//   0       4     magic "SLEM"
//   4       2     version (u16, currently 1)
//   6       4     count (u32, > 0)
//   10      4     dim (u32, > 0)
//   14      4·count·dim  float32 values, row-major
inline constexpr char kEmbeddingMagic[4] = {'S', 'L', 'E', 'M'};
inline constexpr std::uint16_t kEmbeddingVersion = 1;
inline constexpr std::size_t kEmbeddingHeaderBytes = 14;

// Embeddings plus the optional id/label/slice sidecar. Without a sidecar,
// ids are 0..n-1 and labels/slices are empty.
struct EmbeddingTable {
  std::vector<Embedding> rows;
  std::vector<ItemId> ids;
  std::vector<int> labels;
  std::vector<std::size_t> slices;

  std::size_t size() const { return rows.size(); }
  std::size_t dim() const { return rows.empty() ? 0 : rows.front().dim(); }
  bool has_annotations() const { return !labels.empty(); }
};

// Values are narrowed to float32.
void write_embeddings(const std::filesystem::path& path,
                      std::span<const Embedding> rows);
std::vector<Embedding> read_embedding_file(const std::filesystem::path& path);

// Delimited text: one embedding per line, values separated by commas or
// whitespace; blank lines and lines starting with '#' are skipped.
std::vector<Embedding> read_embedding_text(const std::filesystem::path& path);

// Sidecar: CSV with header "id,label,slice", one row per embedding, same
// order as the embedding file.
void write_sidecar(const std::filesystem::path& path,
                   std::span<const ItemId> ids, std::span<const int> labels,
                   std::span<const std::size_t> slices);

// Reads .csv/.txt as delimited text and anything else as the binary format.
EmbeddingTable read_embeddings(
    const std::filesystem::path& path,
    const std::optional<std::filesystem::path>& sidecar = std::nullopt);

}  // namespace streamline

#endif  // STREAMLINE_EMBEDDING_IO_H_
