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

#ifndef FGRAIN_PROVIDER_HPP_
#define FGRAIN_PROVIDER_HPP_

#include <atomic>
#include <cstddef>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fgrain/store.hpp"
#include "fgrain/tagger.hpp"

namespace fgrain {

enum class PayloadKind { kText, kImage };

std::string_view payload_kind_name(PayloadKind kind);

struct EmbeddingRequest {
  PayloadKind kind = PayloadKind::kText;
  std::vector<std::string> payloads;  // texts or image content identifiers
  std::string model_tag;
};

struct ProviderConfig {
  std::string endpoint_url;  // FGRAIN_EMBED_URL overrides when set
  int timeout_ms = 10000;
  std::size_t max_batch = 64;
  std::optional<std::filesystem::path> cache_path;
  int retries = 2;
  // Sent as "Authorization: Bearer <token>" when present.
  std::optional<std::string> bearer_token;
  // First retry delay; doubles on every further attempt.
  int backoff_ms = 100;
};

inline constexpr const char* kEmbedUrlEnv = "FGRAIN_EMBED_URL";

// Throws kInvalidArgument unless retries <= 5, timeout_ms >= 100 and
// max_batch > 0.
void validate(const ProviderConfig& cfg);

// Client for the /embed service with an optional persistent cache.
//
// Wire format: POST <endpoint>/embed with body
//   {"kind": "text"|"image", "modelTag": ..., "payloads": [...]}
// answered by {"dim": d, "vectors": [[f32, ...], ...]}. Non-200 responses
// are RemoteError; transport failures and 429/5xx are retried with
// exponential backoff.
//
// The cache reuses the FGRN store format keyed by (modelTag, kind, payload)
// and is rewritten atomically after every successful fetch. Safe for
// concurrent use; cache writes are serialized.
class EmbeddingProvider {
 public:
  explicit EmbeddingProvider(ProviderConfig cfg);

  // One vector per payload in request order. Requests larger than max_batch
  // are sent as several wire batches. Throws kTimeout, RemoteError,
  // kDimensionInconsistent, kCacheCorrupt.
  std::vector<std::vector<float>> embed(const EmbeddingRequest& req);

  const ProviderConfig& config() const { return cfg_; }
  // Number of HTTP requests issued, including retries.
  std::size_t network_calls() const { return network_calls_.load(); }

 private:
  static std::string cache_key(const std::string& model_tag, PayloadKind kind,
                               const std::string& payload);
  std::vector<std::vector<float>> fetch(PayloadKind kind, const std::string& model_tag,
                                        std::span<const std::string> payloads);
  void persist_cache_locked() const;

  ProviderConfig cfg_;
  std::mutex mutex_;
  std::map<std::string, std::vector<float>> cache_;
  std::optional<std::size_t> cache_dim_;
  std::atomic<std::size_t> network_calls_{0};
};

// Stateless convenience wrapper.
std::vector<std::vector<float>> embed(const ProviderConfig& cfg,
                                      const EmbeddingRequest& req);

// Looks every unit up in the store by lowercased surface. Misses are
// deduplicated and sent to the provider in one request; without a provider
// they raise UnknownIdError naming every unresolved surface.
std::vector<std::vector<float>> resolve_unit_embeddings(
    std::span<const TextUnit> units, const EmbeddingStore& store,
    EmbeddingProvider* provider, const std::string& model_tag = "default");

// Lowercases ASCII letters; the lookup key for unit embeddings.
std::string unit_key(std::string_view surface);

}  // namespace fgrain

#endif  // FGRAIN_PROVIDER_HPP_
