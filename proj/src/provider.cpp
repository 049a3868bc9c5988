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

#include "fgrain/provider.hpp"

#include <cctype>
#include <chrono>
#include <cstdlib>
#include <thread>
#include <unordered_map>

#include "fgrain/error.hpp"
#include "httplib.h"
#include "json.hpp"

namespace fgrain {
namespace {

constexpr char kKeySep = '\x1f';

struct ParsedUrl {
  std::string origin;     // scheme://host[:port]
  std::string base_path;  // without trailing slash
};

ParsedUrl parse_url(const std::string& url) {
  auto scheme = url.find("://");
  if (scheme == std::string::npos) {
    throw Error(ErrorCode::kInvalidArgument, "endpoint URL lacks a scheme: " + url);
  }
  auto slash = url.find('/', scheme + 3);
  ParsedUrl out;
  out.origin = url.substr(0, slash);
  if (slash != std::string::npos) out.base_path = url.substr(slash);
  while (!out.base_path.empty() && out.base_path.back() == '/') out.base_path.pop_back();
  return out;
}

std::string excerpt(const std::string& body) {
  constexpr std::size_t kMax = 200;
  return body.size() <= kMax ? body : body.substr(0, kMax) + "...";
}

bool transient_status(int status) { return status == 429 || status >= 500; }

}  // namespace

std::string_view payload_kind_name(PayloadKind kind) {
  return kind == PayloadKind::kImage ? "image" : "text";
}

void validate(const ProviderConfig& cfg) {
  if (cfg.retries < 0 || cfg.retries > 5) {
    throw Error(ErrorCode::kInvalidArgument, "retries must be in [0, 5]");
  }
  if (cfg.timeout_ms < 100) throw Error(ErrorCode::kInvalidArgument, "timeout must be >= 100 ms");
  if (cfg.max_batch == 0) throw Error(ErrorCode::kInvalidArgument, "max batch must be positive");
  if (cfg.backoff_ms < 0) throw Error(ErrorCode::kInvalidArgument, "backoff must be >= 0");
}

std::string unit_key(std::string_view surface) {
  std::string out(surface);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string EmbeddingProvider::cache_key(const std::string& model_tag, PayloadKind kind,
                                         const std::string& payload) {
  return model_tag + kKeySep + std::string(payload_kind_name(kind)) + kKeySep + payload;
}

EmbeddingProvider::EmbeddingProvider(ProviderConfig cfg) : cfg_(std::move(cfg)) {
  if (const char* env = std::getenv(kEmbedUrlEnv); env != nullptr && *env != '\0') {
    cfg_.endpoint_url = env;
  }
  validate(cfg_);
  if (cfg_.cache_path && std::filesystem::exists(*cfg_.cache_path)) {
    EmbeddingStore cached;
    try {
      cached = EmbeddingStore::open(*cfg_.cache_path);
    } catch (const Error& e) {
      throw Error(ErrorCode::kCacheCorrupt, e.detail());
    }
    for (std::size_t i = 0; i < cached.size(); ++i) {
      if (cached.id_at(i).find(kKeySep) == std::string::npos) {
        throw Error(ErrorCode::kCacheCorrupt,
                    cfg_.cache_path->string() + ": entry '" + cached.id_at(i) +
                        "' is not a cache key");
      }
      auto v = cached.vector_at(i);
      cache_.emplace(cached.id_at(i), std::vector<float>(v.begin(), v.end()));
    }
    if (!cached.empty()) cache_dim_ = cached.dim();
  }
}

void EmbeddingProvider::persist_cache_locked() const {
  if (!cfg_.cache_path || cache_.empty()) return;
  std::vector<StoreEntry> entries;
  entries.reserve(cache_.size());
  for (const auto& [key, v] : cache_) entries.push_back({key, v});
  auto tmp = *cfg_.cache_path;
  tmp += ".tmp";
  write_store(tmp, entries, /*normalized=*/false);
  std::error_code ec;
  std::filesystem::rename(tmp, *cfg_.cache_path, ec);
  if (ec) {
    throw Error(ErrorCode::kIo, "cannot replace cache " + cfg_.cache_path->string() +
                                    ": " + ec.message());
  }
}

std::vector<std::vector<float>> EmbeddingProvider::fetch(
    PayloadKind kind, const std::string& model_tag, std::span<const std::string> payloads) {
  if (cfg_.endpoint_url.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "no embedding endpoint configured");
  }
  const ParsedUrl url = parse_url(cfg_.endpoint_url);
  nlohmann::json body = {{"kind", std::string(payload_kind_name(kind))},
                         {"modelTag", model_tag},
                         {"payloads", std::vector<std::string>(payloads.begin(), payloads.end())}};
  const std::string body_text = body.dump();

  httplib::Client client(url.origin);
  const auto timeout = std::chrono::milliseconds(cfg_.timeout_ms);
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);
  client.set_write_timeout(timeout);
  httplib::Headers headers;
  if (cfg_.bearer_token) headers.emplace("Authorization", "Bearer " + *cfg_.bearer_token);

  std::string last_failure;
  bool last_was_timeout = false;
  for (int attempt = 0; attempt <= cfg_.retries; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(std::chrono::milliseconds(
          static_cast<long long>(cfg_.backoff_ms) << (attempt - 1)));
    }
    ++network_calls_;
    auto res = client.Post(url.base_path + "/embed", headers, body_text, "application/json");
    if (!res) {
      const auto err = res.error();
      last_was_timeout = err == httplib::Error::Read || err == httplib::Error::ConnectionTimeout;
      last_failure = httplib::to_string(err);
      continue;
    }
    if (res->status != 200) {
      if (transient_status(res->status) && attempt < cfg_.retries) {
        last_was_timeout = false;
        continue;
      }
      throw RemoteError(res->status, excerpt(res->body));
    }

    nlohmann::json reply;
    try {
      reply = nlohmann::json::parse(res->body);
    } catch (const nlohmann::json::exception&) {
      throw RemoteError(res->status, "unparseable body: " + excerpt(res->body));
    }
    if (!reply.is_object() || !reply.contains("dim") || !reply["dim"].is_number_integer() ||
        !reply.contains("vectors") || !reply["vectors"].is_array()) {
      throw RemoteError(res->status, "malformed body: " + excerpt(res->body));
    }
    const auto dim = reply["dim"].get<long long>();
    const auto& vectors = reply["vectors"];
    if (vectors.size() != payloads.size()) {
      throw Error(ErrorCode::kDimensionInconsistent,
                  "service returned " + std::to_string(vectors.size()) + " vectors for " +
                      std::to_string(payloads.size()) + " payloads");
    }
    std::vector<std::vector<float>> out;
    out.reserve(vectors.size());
    for (const auto& v : vectors) {
      if (!v.is_array() || static_cast<long long>(v.size()) != dim || dim <= 0) {
        throw Error(ErrorCode::kDimensionInconsistent,
                    "vector of length " + std::to_string(v.is_array() ? v.size() : 0) +
                        " in a dim-" + std::to_string(dim) + " response");
      }
      std::vector<float> vec;
      vec.reserve(v.size());
      for (const auto& x : v) {
        if (!x.is_number()) throw RemoteError(res->status, "non-numeric vector component");
        vec.push_back(x.get<float>());
      }
      out.push_back(std::move(vec));
    }
    return out;
  }
  if (last_was_timeout) {
    throw Error(ErrorCode::kTimeout, cfg_.endpoint_url + " after " +
                                         std::to_string(cfg_.retries + 1) + " attempts");
  }
  throw RemoteError(0, "transport failure (" + last_failure + ") after " +
                           std::to_string(cfg_.retries + 1) + " attempts");
}

std::vector<std::vector<float>> EmbeddingProvider::embed(const EmbeddingRequest& req) {
  if (req.payloads.empty()) throw Error(ErrorCode::kInvalidArgument, "empty embedding request");

  std::vector<std::vector<float>> out(req.payloads.size());
  std::vector<std::string> missing;  // unique, first-seen order
  std::unordered_map<std::string, std::vector<std::size_t>> waiting;
  {
    std::lock_guard lock(mutex_);
    for (std::size_t i = 0; i < req.payloads.size(); ++i) {
      const auto& p = req.payloads[i];
      if (auto it = cache_.find(cache_key(req.model_tag, req.kind, p)); it != cache_.end()) {
        out[i] = it->second;
        continue;
      }
      auto [slot, inserted] = waiting.try_emplace(p);
      if (inserted) missing.push_back(p);
      slot->second.push_back(i);
    }
  }

  for (std::size_t begin = 0; begin < missing.size(); begin += cfg_.max_batch) {
    const std::size_t end = std::min(missing.size(), begin + cfg_.max_batch);
    std::span<const std::string> batch(missing.data() + begin, end - begin);
    auto vectors = fetch(req.kind, req.model_tag, batch);

    std::lock_guard lock(mutex_);
    const std::size_t dim = vectors.front().size();
    if (cache_dim_ && *cache_dim_ != dim) {
      throw Error(ErrorCode::kDimensionInconsistent,
                  "service returned dim " + std::to_string(dim) + ", cache holds dim " +
                      std::to_string(*cache_dim_));
    }
    for (std::size_t k = 0; k < batch.size(); ++k) {
      for (std::size_t i : waiting[batch[k]]) out[i] = vectors[k];
      cache_.insert_or_assign(cache_key(req.model_tag, req.kind, batch[k]), std::move(vectors[k]));
    }
    cache_dim_ = dim;
    persist_cache_locked();
  }

  for (const auto& v : out) {
    if (v.size() != out.front().size()) {
      throw Error(ErrorCode::kDimensionInconsistent, "mixed dimensions across the response");
    }
  }
  return out;
}

std::vector<std::vector<float>> embed(const ProviderConfig& cfg, const EmbeddingRequest& req) {
  EmbeddingProvider provider(cfg);
  return provider.embed(req);
}

std::vector<std::vector<float>> resolve_unit_embeddings(std::span<const TextUnit> units,
                                                        const EmbeddingStore& store,
                                                        EmbeddingProvider* provider,
                                                        const std::string& model_tag) {
  std::vector<std::vector<float>> out(units.size());
  std::vector<std::string> missing;
  std::unordered_map<std::string, std::vector<std::size_t>> waiting;
  for (std::size_t i = 0; i < units.size(); ++i) {
    std::string key = unit_key(units[i].surface);
    if (auto v = store.find(key)) {
      out[i].assign(v->begin(), v->end());
      continue;
    }
    auto [slot, inserted] = waiting.try_emplace(key);
    if (inserted) missing.push_back(key);
    slot->second.push_back(i);
  }
  if (missing.empty()) return out;
  if (provider == nullptr) {
    std::string joined;
    for (const auto& m : missing) joined += (joined.empty() ? "" : ", ") + m;
    throw UnknownIdError(joined, "unit embeddings not in store");
  }
  auto vectors = provider->embed({PayloadKind::kText, missing, model_tag});
  for (std::size_t k = 0; k < missing.size(); ++k) {
    if (vectors[k].size() != store.dim()) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "provider dim " + std::to_string(vectors[k].size()) + " vs store dim " +
                      std::to_string(store.dim()));
    }
    for (std::size_t i : waiting[missing[k]]) out[i] = vectors[k];
  }
  return out;
}

}  // namespace fgrain
