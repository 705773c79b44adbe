// Copyright 2026 The simaug Authors
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

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <unordered_set>

#include <fmt/core.h>
#include <nlohmann/json.hpp>

#include "simaug/error.hpp"
#include "simaug/simvec.hpp"

namespace simaug {

EmbeddingMatrix::EmbeddingMatrix(std::vector<std::string> ids, std::vector<float> values,
                                 std::size_t dim, std::string source_tag)
    : ids_(std::move(ids)), values_(std::move(values)), dim_(dim),
      source_tag_(std::move(source_tag)) {
  if (dim_ == 0) fail(ErrorCode::kSembBadHeader, "embedding dimension must be positive");
  if (values_.size() != ids_.size() * dim_) {
    fail(ErrorCode::kSembCountMismatch,
         fmt::format("{} ids but {} values at dim {}", ids_.size(), values_.size(), dim_));
  }
  index_.reserve(ids_.size());
  for (std::size_t r = 0; r < ids_.size(); ++r) {
    if (!index_.emplace(ids_[r], r).second) {
      fail(ErrorCode::kDuplicateId, fmt::format("duplicate embedding id '{}'", ids_[r]));
    }
  }
  for (std::size_t r = 0; r < ids_.size(); ++r) {
    for (float v : row(r)) {
      if (!std::isfinite(v)) {
        fail(ErrorCode::kSembNonFinite, fmt::format("non-finite value in row '{}'", ids_[r]));
      }
    }
  }
}

std::optional<std::size_t> EmbeddingMatrix::find(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool operator==(const EmbeddingMatrix& a, const EmbeddingMatrix& b) {
  return a.dim_ == b.dim_ && a.ids_ == b.ids_ &&
         std::memcmp(a.values_.data(), b.values_.data(), a.values_.size() * sizeof(float)) == 0;
}

std::filesystem::path semb_ids_path(const std::filesystem::path& prefix) {
  return prefix.string() + ".ids";
}

std::filesystem::path semb_matrix_path(const std::filesystem::path& prefix) {
  return prefix.string() + ".semb";
}

namespace {

std::filesystem::path sidecar_path(const std::filesystem::path& matrix_path) {
  return matrix_path.string() + ".meta.json";
}

template <typename T>
T read_le(const unsigned char* p) {
  T v = 0;
  for (std::size_t b = 0; b < sizeof(T); ++b) v |= static_cast<T>(p[b]) << (8 * b);
  return v;
}

template <typename T>
void write_le(std::string& out, T v) {
  for (std::size_t b = 0; b < sizeof(T); ++b) {
    out.push_back(static_cast<char>((static_cast<std::uint64_t>(v) >> (8 * b)) & 0xff));
  }
}

}  // namespace

EmbeddingMatrix load_embeddings(const std::filesystem::path& ids_path,
                                const std::filesystem::path& matrix_path,
                                const std::string& source_tag) {
  std::ifstream ids_in(ids_path);
  if (!ids_in) fail(ErrorCode::kIo, fmt::format("cannot open {}", ids_path.string()));
  std::vector<std::string> ids;
  std::string line;
  while (std::getline(ids_in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    ids.push_back(line);
  }
  // A trailing newline must not produce a phantom empty id.
  while (!ids.empty() && ids.back().empty()) ids.pop_back();
  for (std::size_t r = 0; r < ids.size(); ++r) {
    if (ids[r].empty()) fail(ErrorCode::kParse, fmt::format("{}: empty id on line {}", ids_path.string(), r + 1));
  }

  std::ifstream in(matrix_path, std::ios::binary);
  if (!in) fail(ErrorCode::kIo, fmt::format("cannot open {}", matrix_path.string()));
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  if (bytes.size() < kSembHeaderBytes) {
    fail(ErrorCode::kSembTruncated, fmt::format("{}: header truncated", matrix_path.string()));
  }
  if (std::memcmp(bytes.data(), "SEMB", 4) != 0) {
    fail(ErrorCode::kSembBadMagic, fmt::format("{}: bad magic", matrix_path.string()));
  }
  auto version = read_le<std::uint32_t>(bytes.data() + 4);
  auto rows = read_le<std::uint64_t>(bytes.data() + 8);
  auto dim = read_le<std::uint32_t>(bytes.data() + 16);
  auto reserved = read_le<std::uint32_t>(bytes.data() + 20);
  if (version != kSembVersion || reserved != 0 || dim == 0) {
    fail(ErrorCode::kSembBadHeader,
         fmt::format("{}: unsupported header (version {}, dim {}, reserved {})",
                     matrix_path.string(), version, dim, reserved));
  }
  if (rows != ids.size()) {
    fail(ErrorCode::kSembCountMismatch,
         fmt::format("{} ids but matrix declares {} rows", ids.size(), rows));
  }
  const std::size_t payload = static_cast<std::size_t>(rows) * dim * sizeof(float);
  if (bytes.size() - kSembHeaderBytes < payload) {
    fail(ErrorCode::kSembTruncated,
         fmt::format("{}: expected {} payload bytes, found {}", matrix_path.string(), payload,
                     bytes.size() - kSembHeaderBytes));
  }
  if (bytes.size() - kSembHeaderBytes > payload) {
    fail(ErrorCode::kSembBadHeader, fmt::format("{}: trailing bytes after payload", matrix_path.string()));
  }
  std::vector<float> values(static_cast<std::size_t>(rows) * dim);
  for (std::size_t v = 0; v < values.size(); ++v) {
    values[v] = std::bit_cast<float>(read_le<std::uint32_t>(bytes.data() + kSembHeaderBytes + 4 * v));
  }

  std::string tag = source_tag;
  if (tag.empty()) {
    std::ifstream meta(sidecar_path(matrix_path));
    if (meta) {
      auto j = nlohmann::json::parse(meta, nullptr, false);
      if (!j.is_discarded() && j.contains("source_tag")) tag = j["source_tag"].get<std::string>();
    }
    if (tag.empty()) tag = matrix_path.stem().string();
  }
  return EmbeddingMatrix(std::move(ids), std::move(values), dim, std::move(tag));
}

void save_embeddings(const EmbeddingMatrix& emb, const std::filesystem::path& ids_path,
                     const std::filesystem::path& matrix_path) {
  {
    std::ofstream out(ids_path);
    if (!out) fail(ErrorCode::kIo, fmt::format("cannot write {}", ids_path.string()));
    for (const auto& id : emb.ids()) out << id << '\n';
  }
  std::string buf = "SEMB";
  write_le<std::uint32_t>(buf, kSembVersion);
  write_le<std::uint64_t>(buf, emb.rows());
  write_le<std::uint32_t>(buf, static_cast<std::uint32_t>(emb.dim()));
  write_le<std::uint32_t>(buf, 0);
  buf.reserve(buf.size() + emb.values().size() * 4);
  for (float v : emb.values()) write_le<std::uint32_t>(buf, std::bit_cast<std::uint32_t>(v));
  {
    std::ofstream out(matrix_path, std::ios::binary);
    if (!out) fail(ErrorCode::kIo, fmt::format("cannot write {}", matrix_path.string()));
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  }
  std::ofstream meta(sidecar_path(matrix_path));
  meta << nlohmann::json{{"source_tag", emb.source_tag()}, {"rows", emb.rows()}, {"dim", emb.dim()}}.dump(2)
       << '\n';
}

EmbeddingMatrix select_rows(const EmbeddingMatrix& emb, const std::vector<std::string>& ids) {
  std::vector<float> values;
  values.reserve(ids.size() * emb.dim());
  for (const auto& id : ids) {
    auto r = emb.find(id);
    if (!r) fail(ErrorCode::kMissingEmbeddings, fmt::format("no embedding for '{}'", id));
    auto row = emb.row(*r);
    values.insert(values.end(), row.begin(), row.end());
  }
  return EmbeddingMatrix(ids, std::move(values), emb.dim(), emb.source_tag());
}

AlignResult align(const EmbeddingMatrix& emb, const InteractionSet& corpus, AlignPolicy policy) {
  AlignResult out;
  std::vector<char> missing(corpus.num_items(), 0);
  for (Index i = 0; i < corpus.num_items(); ++i) {
    if (!emb.find(corpus.item_id(i))) {
      missing[i] = 1;
      out.dropped.push_back(corpus.item_id(i));
    }
  }
  if (!out.dropped.empty() && policy == AlignPolicy::kError) {
    std::string list;
    for (std::size_t n = 0; n < out.dropped.size() && n < 20; ++n) {
      list += (n ? ", " : "") + out.dropped[n];
    }
    if (out.dropped.size() > 20) list += ", ...";
    fail(ErrorCode::kMissingEmbeddings,
         fmt::format("{} items lack embeddings: {}", out.dropped.size(), list));
  }
  if (out.dropped.empty()) {
    out.corpus = corpus;
  } else {
    std::vector<Edge> kept;
    for (const Edge& e : corpus.edges()) {
      if (!missing[e.item]) kept.push_back(e);
    }
    if (kept.empty()) fail(ErrorCode::kEmptyDataset, "no items left after alignment");
    out.corpus = InteractionSet::build(corpus.user_ids(), corpus.item_ids(), std::move(kept));
  }
  out.embeddings = select_rows(emb, out.corpus.item_ids());
  return out;
}

}  // namespace simaug
