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

#include "streamline/embedding_io.h"

#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>

#include "streamline/error.h"

namespace streamline {
namespace {

void put_u16(std::string& out, std::uint16_t v) {
  out.push_back(static_cast<char>(v & 0xff));
  out.push_back(static_cast<char>((v >> 8) & 0xff));
}

void put_u32(std::string& out, std::uint32_t v) {
  for (int shift = 0; shift < 32; shift += 8) {
    out.push_back(static_cast<char>((v >> shift) & 0xff));
  }
}

std::uint32_t get_u32(const std::string& in, std::size_t offset) {
  std::uint32_t v = 0;
  for (int k = 3; k >= 0; --k) {
    v = (v << 8) | static_cast<unsigned char>(in[offset + k]);
  }
  return v;
}

std::uint16_t get_u16(const std::string& in, std::size_t offset) {
  return static_cast<std::uint16_t>(
      static_cast<unsigned char>(in[offset]) |
      (static_cast<unsigned char>(in[offset + 1]) << 8));
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIo, "cannot open " + path.string());
  }
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() &&
           (line[i] == ',' || line[i] == ' ' || line[i] == '\t')) {
      ++i;
    }
    if (i >= line.size()) break;
    std::size_t j = i;
    while (j < line.size() && line[j] != ',' && line[j] != ' ' &&
           line[j] != '\t') {
      ++j;
    }
    out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

template <typename T>
T parse_number(std::string_view field, const std::string& where) {
  T value{};
  const auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw Error(ErrorCode::kFormat,
                where + ": cannot parse '" + std::string(field) + "'");
  }
  return value;
}

bool is_text_path(const std::filesystem::path& path) {
  const auto ext = path.extension().string();
  return ext == ".csv" || ext == ".txt" || ext == ".tsv";
}

}  // namespace

void write_embeddings(const std::filesystem::path& path,
                      std::span<const Embedding> rows) {
  if (rows.empty()) {
    throw Error(ErrorCode::kEmptyInput, "refusing to write an empty collection");
  }
  const std::size_t dim = rows.front().dim();
  std::string out;
  out.reserve(kEmbeddingHeaderBytes + rows.size() * dim * 4);
  out.append(kEmbeddingMagic, 4);
  put_u16(out, kEmbeddingVersion);
  put_u32(out, static_cast<std::uint32_t>(rows.size()));
  put_u32(out, static_cast<std::uint32_t>(dim));
  for (const Embedding& e : rows) {
    if (e.dim() != dim) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "all embeddings in a file must share one dim");
    }
    for (double v : e.values()) {
      put_u32(out, std::bit_cast<std::uint32_t>(static_cast<float>(v)));
    }
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  f.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!f) throw Error(ErrorCode::kIo, "short write to " + path.string());
}

std::vector<Embedding> read_embedding_file(const std::filesystem::path& path) {
  const std::string in = slurp(path);
  if (in.size() < kEmbeddingHeaderBytes) {
    throw Error(ErrorCode::kFormat,
                path.string() + ": header needs " +
                    std::to_string(kEmbeddingHeaderBytes) + " bytes, file has " +
                    std::to_string(in.size()));
  }
  if (std::memcmp(in.data(), kEmbeddingMagic, 4) != 0) {
    throw Error(ErrorCode::kFormat,
                path.string() + ": bad magic at byte offset 0 (expected SLEM)");
  }
  const std::uint16_t version = get_u16(in, 4);
  if (version != kEmbeddingVersion) {
    throw Error(ErrorCode::kFormat, path.string() +
                                        ": unsupported version " +
                                        std::to_string(version) +
                                        " at byte offset 4");
  }
  const std::uint32_t count = get_u32(in, 6);
  const std::uint32_t dim = get_u32(in, 10);
  if (count == 0) {
    throw Error(ErrorCode::kEmptyInput,
                path.string() + ": count at byte offset 6 is 0");
  }
  if (dim == 0) {
    throw Error(ErrorCode::kFormat,
                path.string() + ": dim at byte offset 10 is 0");
  }
  const std::uint64_t expected =
      kEmbeddingHeaderBytes + std::uint64_t{count} * dim * 4;
  if (in.size() != expected) {
    throw Error(ErrorCode::kFormat,
                path.string() + ": expected " + std::to_string(expected) +
                    " bytes for count=" + std::to_string(count) +
                    " dim=" + std::to_string(dim) + ", got " +
                    std::to_string(in.size()));
  }
  std::vector<Embedding> rows;
  rows.reserve(count);
  std::size_t offset = kEmbeddingHeaderBytes;
  for (std::uint32_t r = 0; r < count; ++r) {
    std::vector<double> values(dim);
    for (std::uint32_t c = 0; c < dim; ++c, offset += 4) {
      values[c] = std::bit_cast<float>(get_u32(in, offset));
    }
    rows.emplace_back(std::move(values));
  }
  return rows;
}

std::vector<Embedding> read_embedding_text(const std::filesystem::path& path) {
  std::istringstream in(slurp(path));
  std::vector<Embedding> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    std::vector<double> values;
    for (auto field : split_fields(t)) {
      values.push_back(parse_number<double>(
          field, path.string() + ":" + std::to_string(line_no)));
    }
    if (!rows.empty() && values.size() != rows.front().dim()) {
      throw Error(ErrorCode::kDimensionMismatch,
                  path.string() + ":" + std::to_string(line_no) + ": expected " +
                      std::to_string(rows.front().dim()) + " values, got " +
                      std::to_string(values.size()));
    }
    rows.emplace_back(std::move(values));
  }
  if (rows.empty()) {
    throw Error(ErrorCode::kEmptyInput, path.string() + ": no embeddings");
  }
  return rows;
}

void write_sidecar(const std::filesystem::path& path,
                   std::span<const ItemId> ids, std::span<const int> labels,
                   std::span<const std::size_t> slices) {
  if (ids.size() != labels.size() || ids.size() != slices.size()) {
    throw Error(ErrorCode::kInvalidArgument, "sidecar columns differ in length");
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  f << "id,label,slice\n";
  for (std::size_t i = 0; i < ids.size(); ++i) {
    f << ids[i] << ',' << labels[i] << ',' << slices[i] << '\n';
  }
}

EmbeddingTable read_embeddings(
    const std::filesystem::path& path,
    const std::optional<std::filesystem::path>& sidecar) {
  EmbeddingTable table;
  table.rows = is_text_path(path) ? read_embedding_text(path)
                                  : read_embedding_file(path);
  if (!sidecar) {
    table.ids.resize(table.rows.size());
    for (std::size_t i = 0; i < table.ids.size(); ++i) {
      table.ids[i] = static_cast<ItemId>(i);
    }
    return table;
  }
  std::istringstream in(slurp(*sidecar));
  std::string line;
  std::size_t line_no = 0;
  std::unordered_set<ItemId> seen;
  while (std::getline(in, line)) {
    ++line_no;
    const auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    if (line_no == 1 && t.starts_with("id")) continue;
    const auto fields = split_fields(t);
    const std::string where = sidecar->string() + ":" + std::to_string(line_no);
    if (fields.size() != 3) {
      throw Error(ErrorCode::kFormat, where + ": expected id,label,slice");
    }
    const auto id = parse_number<ItemId>(fields[0], where);
    if (!seen.insert(id).second) {
      throw Error(ErrorCode::kFormat, where + ": duplicate id");
    }
    table.ids.push_back(id);
    table.labels.push_back(parse_number<int>(fields[1], where));
    table.slices.push_back(parse_number<std::size_t>(fields[2], where));
  }
  if (table.ids.size() != table.rows.size()) {
    throw Error(ErrorCode::kFormat,
                "sidecar has " + std::to_string(table.ids.size()) +
                    " rows but the embedding file has " +
                    std::to_string(table.rows.size()));
  }
  return table;
}

}  // namespace streamline
