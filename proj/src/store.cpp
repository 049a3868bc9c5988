// Copyright 2026 The fgrain Authors.
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

#include "fgrain/store.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <unordered_set>

#include "fgrain/error.hpp"
#include "text_io.hpp"

namespace fgrain {
namespace {

constexpr std::size_t kHeaderSize = 4 + 2 + 2 + 4 + 8;

template <typename T>
void put_le(std::vector<std::uint8_t>& out, T value) {
  using U = std::make_unsigned_t<T>;
  auto bits = static_cast<U>(value);
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    out.push_back(static_cast<std::uint8_t>(bits >> (8 * i)));
  }
}

void put_f32(std::vector<std::uint8_t>& out, float value) {
  put_le(out, std::bit_cast<std::uint32_t>(value));
}

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  bool has(std::size_t n) const { return bytes_.size() - pos_ >= n; }
  std::size_t pos() const { return pos_; }

  template <typename T>
  T get_le() {
    T value = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) {
      value |= static_cast<T>(static_cast<T>(bytes_[pos_ + i]) << (8 * i));
    }
    pos_ += sizeof(T);
    return value;
  }

  std::string get_string(std::size_t n) {
    std::string s(reinterpret_cast<const char*>(bytes_.data() + pos_), n);
    pos_ += n;
    return s;
  }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

double l2_norm(std::span<const float> v) {
  double sum = 0.0;
  for (float x : v) sum += static_cast<double>(x) * x;
  return std::sqrt(sum);
}

std::uint32_t validate_entries(std::span<const StoreEntry> entries,
                               bool normalized,
                               std::optional<std::uint32_t> dim) {
  std::uint32_t d = dim.value_or(entries.empty()
                                     ? 1u
                                     : static_cast<std::uint32_t>(
                                           entries.front().vector.size()));
  if (d == 0) throw Error(ErrorCode::kInvariantViolation, "dimension must be positive");
  std::unordered_set<std::string_view> seen;
  seen.reserve(entries.size());
  for (const auto& e : entries) {
    if (e.vector.size() != d) {
      throw Error(ErrorCode::kInvariantViolation,
                  "vector '" + e.id + "' has " + std::to_string(e.vector.size()) +
                      " components, expected " + std::to_string(d));
    }
    if (e.id.size() > 0xFFFF) {
      throw Error(ErrorCode::kInvariantViolation, "id longer than 65535 bytes");
    }
    if (!seen.insert(e.id).second) {
      throw Error(ErrorCode::kInvariantViolation, "duplicate id '" + e.id + "'");
    }
    if (normalized) {
      double norm = l2_norm(e.vector);
      if (!(std::fabs(norm - 1.0) <= kUnitNormTolerance)) {
        throw Error(ErrorCode::kInvariantViolation,
                    "vector '" + e.id + "' has norm " + std::to_string(norm) +
                        " in a normalized store");
      }
    }
  }
  return d;
}

}  // namespace

std::vector<std::uint8_t> encode_store(std::span<const StoreEntry> entries,
                                       bool normalized,
                                       std::optional<std::uint32_t> dim) {
  const std::uint32_t d = validate_entries(entries, normalized, dim);
  std::vector<std::uint8_t> out(std::begin(kStoreMagic), std::end(kStoreMagic));
  put_le<std::uint16_t>(out, kStoreVersion);
  put_le<std::uint16_t>(out, normalized ? kStoreFlagNormalized : 0);
  put_le<std::uint32_t>(out, d);
  put_le<std::uint64_t>(out, entries.size());

  std::size_t index_size = 0;
  for (const auto& e : entries) index_size += 2 + e.id.size() + 8;
  std::uint64_t offset = kHeaderSize + index_size;
  const std::uint64_t stride = std::uint64_t{d} * sizeof(float);
  out.reserve(offset + entries.size() * stride);
  for (const auto& e : entries) {
    put_le<std::uint16_t>(out, static_cast<std::uint16_t>(e.id.size()));
    out.insert(out.end(), e.id.begin(), e.id.end());
    put_le<std::uint64_t>(out, offset);
    offset += stride;
  }
  for (const auto& e : entries) {
    for (float x : e.vector) put_f32(out, x);
  }
  return out;
}

EmbeddingStore decode_store(std::span<const std::uint8_t> bytes) {
  Reader r(bytes);
  if (!r.has(kHeaderSize) ||
      std::memcmp(bytes.data(), kStoreMagic, sizeof(kStoreMagic)) != 0) {
    throw Error(ErrorCode::kMalformedHeader, "missing FGRN magic");
  }
  r.get_string(4);
  const auto version = r.get_le<std::uint16_t>();
  if (version != kStoreVersion) {
    throw Error(ErrorCode::kMalformedHeader,
                "unsupported format version " + std::to_string(version));
  }
  const auto flags = r.get_le<std::uint16_t>();
  if ((flags & ~kStoreFlagNormalized) != 0) {
    throw Error(ErrorCode::kMalformedHeader, "unknown flag bits");
  }
  const auto dim = r.get_le<std::uint32_t>();
  const auto count = r.get_le<std::uint64_t>();
  if (dim == 0) throw Error(ErrorCode::kMalformedHeader, "dimension is zero");

  EmbeddingStore store;
  store.dim_ = dim;
  store.normalized_ = (flags & kStoreFlagNormalized) != 0;
  // Each index entry takes at least 10 bytes.
  if (count > bytes.size() / 10 + 1) {
    throw Error(ErrorCode::kMalformedHeader, "entry count exceeds file size");
  }
  std::vector<std::uint64_t> offsets;
  offsets.reserve(count);
  store.ids_.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    if (!r.has(2)) throw Error(ErrorCode::kMalformedHeader, "truncated index");
    const auto len = r.get_le<std::uint16_t>();
    if (!r.has(len + 8u)) throw Error(ErrorCode::kMalformedHeader, "truncated index");
    store.ids_.push_back(r.get_string(len));
    offsets.push_back(r.get_le<std::uint64_t>());
  }
  const std::uint64_t payload_start = r.pos();
  const std::uint64_t stride = std::uint64_t{dim} * sizeof(float);
  const std::uint64_t expected = payload_start + count * stride;
  if (bytes.size() != expected) {
    throw Error(ErrorCode::kDimensionMismatch,
                "payload holds " + std::to_string(bytes.size() - payload_start) +
                    " bytes, header declares " + std::to_string(count) +
                    " x " + std::to_string(dim) + " floats");
  }
  store.data_.resize(count * dim);
  for (std::uint64_t i = 0; i < count; ++i) {
    const std::uint64_t off = offsets[i];
    if (off < payload_start || off + stride > bytes.size()) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "payload offset of '" + store.ids_[i] + "' out of range");
    }
    Reader v(bytes.subspan(off, stride));
    for (std::uint32_t k = 0; k < dim; ++k) {
      store.data_[i * dim + k] = std::bit_cast<float>(v.get_le<std::uint32_t>());
    }
  }
  store.build_index();
  if (store.normalized_) {
    for (std::size_t i = 0; i < store.size(); ++i) {
      double norm = l2_norm(store.vector_at(i));
      if (!(std::fabs(norm - 1.0) <= kUnitNormTolerance)) {
        throw Error(ErrorCode::kInvariantViolation,
                    "vector '" + store.ids_[i] + "' is not unit norm");
      }
    }
  }
  return store;
}

void EmbeddingStore::build_index() {
  index_.clear();
  index_.reserve(ids_.size());
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    if (!index_.emplace(ids_[i], i).second) {
      throw Error(ErrorCode::kDuplicateId, "'" + ids_[i] + "'");
    }
  }
}

EmbeddingStore EmbeddingStore::open(const std::filesystem::path& path) {
  const std::string raw = detail::read_file(path);
  try {
    return decode_store({reinterpret_cast<const std::uint8_t*>(raw.data()), raw.size()});
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.detail());
  }
}

EmbeddingStore EmbeddingStore::from_entries(std::span<const StoreEntry> entries,
                                            bool normalized,
                                            std::optional<std::uint32_t> dim) {
  EmbeddingStore store;
  store.dim_ = validate_entries(entries, normalized, dim);
  store.normalized_ = normalized;
  store.ids_.reserve(entries.size());
  store.data_.reserve(entries.size() * store.dim_);
  for (const auto& e : entries) {
    store.ids_.push_back(e.id);
    store.data_.insert(store.data_.end(), e.vector.begin(), e.vector.end());
  }
  store.build_index();
  return store;
}

std::span<const float> EmbeddingStore::get(std::string_view id) const {
  auto v = find(id);
  if (!v) throw UnknownIdError(std::string(id));
  return *v;
}

std::optional<std::span<const float>> EmbeddingStore::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return vector_at(it->second);
}

std::vector<StoreEntry> EmbeddingStore::entries() const {
  std::vector<StoreEntry> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) {
    auto v = vector_at(i);
    out.push_back({ids_[i], {v.begin(), v.end()}});
  }
  return out;
}

void write_store(const std::filesystem::path& path,
                 std::span<const StoreEntry> entries, bool normalized,
                 std::optional<std::uint32_t> dim) {
  const auto bytes = encode_store(entries, normalized, dim);
  detail::write_file(path, {reinterpret_cast<const char*>(bytes.data()), bytes.size()});
}

PairManifest parse_pair_manifest(std::string_view text) {
  PairManifest manifest;
  std::unordered_set<std::string> seen;
  constexpr std::string_view kWhat = "pair manifest";
  detail::for_each_record(text, kWhat, [&](const nlohmann::json& obj, std::size_t line) {
    PairRecord rec{detail::string_field(obj, "pairId", line, kWhat),
                   detail::string_field(obj, "imageId", line, kWhat),
                   detail::string_field(obj, "captionId", line, kWhat),
                   detail::string_field(obj, "captionText", line, kWhat)};
    if (!seen.insert(rec.pair_id).second) {
      throw Error(ErrorCode::kDuplicateId, "pairId '" + rec.pair_id + "' repeated on line " +
                                               std::to_string(line));
    }
    manifest.push_back(std::move(rec));
  });
  return manifest;
}

PairManifest read_pair_manifest(const std::filesystem::path& path) {
  return parse_pair_manifest(detail::read_file(path));
}

std::string format_pair_manifest(const PairManifest& manifest) {
  std::string out;
  for (const auto& r : manifest) {
    out += "{\"pairId\":" + detail::quote(r.pair_id) +
           ",\"imageId\":" + detail::quote(r.image_id) +
           ",\"captionId\":" + detail::quote(r.caption_id) +
           ",\"captionText\":" + detail::quote(r.caption_text) + "}\n";
  }
  return out;
}

void write_pair_manifest(const std::filesystem::path& path,
                         const PairManifest& manifest) {
  std::unordered_set<std::string_view> seen;
  for (const auto& r : manifest) {
    if (!seen.insert(r.pair_id).second) {
      throw Error(ErrorCode::kInvariantViolation, "duplicate pairId '" + r.pair_id + "'");
    }
  }
  detail::write_file(path, format_pair_manifest(manifest));
}

}  // namespace fgrain
