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

#ifndef FGRAIN_STORE_HPP_
#define FGRAIN_STORE_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace fgrain {

// On-disk layout, all integers and floats little-endian:
//
//   "FGRN" | version u16 | flags u16 | dim u32 | count u64
//   index:   count x (idLen u16 | id bytes | payload offset u64)
//   payload: count x (dim x f32)
//
// Payload offsets are absolute file offsets. Flag bit 0 marks a store whose
// vectors all have unit L2 norm.
inline constexpr char kStoreMagic[4] = {'F', 'G', 'R', 'N'};
inline constexpr std::uint16_t kStoreVersion = 1;
inline constexpr std::uint16_t kStoreFlagNormalized = 0x1;
inline constexpr double kUnitNormTolerance = 1e-4;

struct StoreEntry {
  std::string id;
  std::vector<float> vector;
};

class EmbeddingStore;
EmbeddingStore decode_store(std::span<const std::uint8_t> bytes);

// Immutable id-indexed vector collection. Safe for concurrent reads.
class EmbeddingStore {
 public:
  EmbeddingStore() = default;

  // Throws Error with kMalformedHeader, kDimensionMismatch, kDuplicateId,
  // kInvariantViolation or kIo.
  static EmbeddingStore open(const std::filesystem::path& path);

  // Builds a store in memory, enforcing the same invariants as write_store.
  static EmbeddingStore from_entries(std::span<const StoreEntry> entries,
                                     bool normalized,
                                     std::optional<std::uint32_t> dim = {});

  std::uint32_t dim() const { return dim_; }
  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }
  bool normalized() const { return normalized_; }

  // Throws UnknownIdError; never returns a default vector.
  std::span<const float> get(std::string_view id) const;
  // nullopt when absent.
  std::optional<std::span<const float>> find(std::string_view id) const;
  bool contains(std::string_view id) const { return find(id).has_value(); }

  const std::string& id_at(std::size_t index) const { return ids_[index]; }
  std::span<const float> vector_at(std::size_t index) const {
    return {data_.data() + index * dim_, dim_};
  }

  std::vector<StoreEntry> entries() const;

 private:
  friend EmbeddingStore decode_store(std::span<const std::uint8_t> bytes);
  void build_index();

  std::uint32_t dim_ = 1;
  bool normalized_ = false;
  std::vector<std::string> ids_;
  std::vector<float> data_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Writes a store file. When entries is empty the dimension defaults to 1
// unless given. Throws kInvariantViolation on ragged vectors, duplicate ids,
// or non-unit vectors under normalized=true; kIo with the path otherwise.
void write_store(const std::filesystem::path& path,
                 std::span<const StoreEntry> entries, bool normalized,
                 std::optional<std::uint32_t> dim = {});

// Serializes to the exact byte layout write_store produces.
std::vector<std::uint8_t> encode_store(std::span<const StoreEntry> entries,
                                       bool normalized,
                                       std::optional<std::uint32_t> dim = {});

// One image-caption pair to score.
struct PairRecord {
  std::string pair_id;
  std::string image_id;
  std::string caption_id;
  std::string caption_text;

  bool operator==(const PairRecord&) const = default;
};

using PairManifest = std::vector<PairRecord>;

// JSON Lines, one object per pair with keys pairId, imageId, captionId,
// captionText in that order. Duplicate pairIds raise kDuplicateId.
PairManifest read_pair_manifest(const std::filesystem::path& path);
PairManifest parse_pair_manifest(std::string_view text);
std::string format_pair_manifest(const PairManifest& manifest);
void write_pair_manifest(const std::filesystem::path& path,
                         const PairManifest& manifest);

}  // namespace fgrain

#endif  // FGRAIN_STORE_HPP_
