// Copyright 2026 The layoutplan Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "layoutplan/embedding.h"

#include <bit>
#include <cctype>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <stdexcept>

#include <fmt/format.h>

#include "http_client.h"
#include "json_codec.h"
#include "layoutplan/endpoint.h"
#include "layoutplan/errors.h"
#include "layoutplan/hashing.h"

namespace layoutplan {

HashedBagOfWordsEmbedder::HashedBagOfWordsEmbedder(std::size_t dim) : dim_(dim) {
  if (dim == 0) throw std::invalid_argument("embedding dimension must be positive");
}

Embedding HashedBagOfWordsEmbedder::embed(std::string_view text) const {
  Embedding v(dim_, 0.0);
  std::string token;
  auto flush = [&] {
    if (token.empty()) return;
    v[fnv1a64(token) % dim_] += 1.0;
    token.clear();
  };
  for (char ch : text) {
    const auto uc = static_cast<unsigned char>(ch);
    if (std::isalnum(uc)) {
      token.push_back(static_cast<char>(std::tolower(uc)));
    } else {
      flush();
    }
  }
  flush();
  return v;
}

std::string HashedBagOfWordsEmbedder::name() const { return fmt::format("hashed-bow-{}", dim_); }

RemoteEmbeddingProvider::RemoteEmbeddingProvider(RemoteEmbeddingConfig config)
    : config_(std::move(config)) {}

Embedding RemoteEmbeddingProvider::embed(std::string_view text) const {
  const std::string key = read_credential(config_.api_key_env);
  detail::ojson req;
  req["model"] = config_.model;
  req["input"] = std::string(text);
  auto res = detail::post_json(config_.base_url, config_.path, key, req.dump(), config_.timeout_s);
  if (res.status < 200 || res.status >= 300) throw detail::error_for_status(res.status, res.body);
  try {
    auto j = nlohmann::json::parse(res.body);
    const auto& arr = j.at("data").at(0).at("embedding");
    Embedding v;
    v.reserve(arr.size());
    for (const auto& x : arr) v.push_back(x.get<double>());
    if (v.empty()) throw std::runtime_error("empty embedding");
    return v;
  } catch (const std::exception& e) {
    throw BackendError(BackendError::Kind::kMalformedResponse,
                       fmt::format("embedding response: {}", e.what()));
  }
}

std::string RemoteEmbeddingProvider::name() const { return "remote:" + config_.model; }

const Embedding* EmbeddingCache::find(const std::string& id) const {
  auto it = entries_.find(id);
  return it == entries_.end() ? nullptr : &it->second;
}

void EmbeddingCache::put(const std::string& id, Embedding v) {
  if (v.empty()) throw std::invalid_argument("cannot cache an empty embedding");
  if (dim_ != 0 && v.size() != dim_) {
    throw std::invalid_argument(
        fmt::format("embedding for '{}' has dim {}, cache holds {}", id, v.size(), dim_));
  }
  dim_ = v.size();
  entries_[id] = std::move(v);
}

namespace {

constexpr char kMagic[8] = {'L', 'P', 'E', 'M', 'B', '0', '0', '1'};

void put_le(std::string& out, std::uint64_t v, int bytes) {
  for (int i = 0; i < bytes; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

class Reader {
 public:
  Reader(const std::string& buf, const std::filesystem::path& path) : buf_(buf), path_(path) {}

  std::uint64_t le(int bytes) {
    need(bytes);
    std::uint64_t v = 0;
    for (int i = 0; i < bytes; ++i) {
      v |= static_cast<std::uint64_t>(static_cast<unsigned char>(buf_[pos_ + i])) << (8 * i);
    }
    pos_ += bytes;
    return v;
  }
  std::string bytes(std::size_t n) {
    need(n);
    std::string s = buf_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  bool done() const { return pos_ == buf_.size(); }

 private:
  void need(std::size_t n) const {
    if (buf_.size() - pos_ < n) {
      throw DataError(fmt::format("{}: truncated embedding cache at byte {}", path_.string(), pos_));
    }
  }
  const std::string& buf_;
  const std::filesystem::path& path_;
  std::size_t pos_ = 0;
};

}  // namespace

EmbeddingCache EmbeddingCache::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(fmt::format("{}: cannot open embedding cache", path.string()));
  std::string buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  Reader r(buf, path);
  if (r.bytes(8) != std::string_view(kMagic, 8)) {
    throw DataError(fmt::format("{}: not an embedding cache", path.string()));
  }
  EmbeddingCache cache;
  const auto dim = static_cast<std::size_t>(r.le(4));
  const auto count = r.le(8);
  for (std::uint64_t i = 0; i < count; ++i) {
    std::string id = r.bytes(static_cast<std::size_t>(r.le(4)));
    Embedding v(dim);
    for (auto& x : v) x = std::bit_cast<double>(r.le(8));
    cache.put(id, std::move(v));
  }
  if (!r.done()) throw DataError(fmt::format("{}: trailing bytes in embedding cache", path.string()));
  cache.dim_ = dim;
  return cache;
}

void EmbeddingCache::save(const std::filesystem::path& path) const {
  std::string out(kMagic, 8);
  put_le(out, dim_, 4);
  put_le(out, entries_.size(), 8);
  for (const auto& [id, v] : entries_) {
    put_le(out, id.size(), 4);
    out += id;
    for (double x : v) put_le(out, std::bit_cast<std::uint64_t>(x), 8);
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw DataError(fmt::format("{}: cannot write embedding cache", path.string()));
  f.write(out.data(), static_cast<std::streamsize>(out.size()));
}

}  // namespace layoutplan
