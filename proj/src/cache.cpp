#include "tas/cache.hpp"

#include <cstdint>
#include <fstream>

#include <json.hpp>

#include "tas/errors.hpp"
#include "tas/hash.hpp"
#include "tas/text_util.hpp"

namespace tas {

namespace fs = std::filesystem;
using nlohmann::json;

EmbeddingCache::EmbeddingCache(fs::path dir) : dir_(std::move(dir)) {
    fs::create_directories(dir_);
    std::ifstream in(dir_ / "index.json");
    if (!in) return;
    json idx;
    in >> idx;
    for (auto it = idx.at("entries").begin(); it != idx.at("entries").end(); ++it) {
        Entry e;
        e.row = it.value().at("row").get<std::size_t>();
        e.dim = it.value().at("dim").get<std::size_t>();
        if (it.value().at("dtype").get<std::string>() != "f32le") {
            throw IoError("embedding cache: unsupported dtype");
        }
        index_[it.key()] = e;
        rows_ = std::max(rows_, e.row + 1);
    }
}

void EmbeddingCache::save_index() const {
    json entries = json::object();
    for (const auto& [key, e] : index_) {
        entries[key] = {{"row", e.row}, {"dim", e.dim}, {"dtype", "f32le"}};
    }
    std::ofstream out(dir_ / "index.json");
    out << json{{"entries", entries}}.dump(2) << "\n";
}

std::optional<EmbeddingVector> EmbeddingCache::get(const std::string& key,
                                                   Modality modality) const {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = index_.find(key);
    if (it == index_.end()) return std::nullopt;
    std::ifstream rows(dir_ / "embeddings.f32", std::ios::binary);
    if (!rows) return std::nullopt;
    EmbeddingVector e;
    e.modality = modality;
    e.values.resize(it->second.dim);
    rows.seekg(static_cast<std::streamoff>(it->second.row * it->second.dim * sizeof(float)));
    rows.read(reinterpret_cast<char*>(e.values.data()),
              static_cast<std::streamsize>(e.values.size() * sizeof(float)));
    if (!rows) return std::nullopt;
    return e;
}

void EmbeddingCache::put(const std::string& key, const EmbeddingVector& emb) {
    std::lock_guard<std::mutex> lock(mutex_);
    if (index_.count(key)) return;
    std::ofstream rows(dir_ / "embeddings.f32", std::ios::binary | std::ios::app);
    rows.write(reinterpret_cast<const char*>(emb.values.data()),
               static_cast<std::streamsize>(emb.values.size() * sizeof(float)));
    rows.close();
    index_[key] = {rows_, emb.values.size()};
    ++rows_;
    save_index();
}

CaptionCache::CaptionCache(fs::path dir) : file_(dir / "captions.json") {
    fs::create_directories(dir);
    std::ifstream in(file_);
    if (!in) return;
    json doc;
    in >> doc;
    for (auto it = doc.begin(); it != doc.end(); ++it) {
        entries_[it.key()] = it.value().get<std::string>();
    }
}

std::optional<std::string> CaptionCache::get(const std::string& key) const {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

void CaptionCache::put(const std::string& key, const std::string& caption) {
    std::lock_guard<std::mutex> lock(mutex_);
    if (!entries_.emplace(key, caption).second) return;
    std::ofstream out(file_);
    out << json(entries_).dump(2) << "\n";
}

std::string image_cache_key(const Image& image, const std::string& backend_identity) {
    std::uint64_t h = fnv1a64(backend_identity);
    h = fnv1a64(std::string_view("image"), h);
    h = fnv1a64(&image.width, sizeof image.width, h);
    h = fnv1a64(&image.height, sizeof image.height, h);
    h = fnv1a64(image.pixels.data(), image.pixels.size(), h);
    return to_hex(h);
}

std::string text_cache_key(const std::string& text, const std::string& backend_identity) {
    std::uint64_t h = fnv1a64(backend_identity);
    h = fnv1a64(std::string_view("text"), h);
    h = fnv1a64(text, h);
    return to_hex(h);
}

CachingEncoder::CachingEncoder(std::shared_ptr<const ImageTextEncoderInterface> inner,
                               std::shared_ptr<EmbeddingCache> cache)
    : inner_(std::move(inner)), cache_(std::move(cache)) {}

EmbeddingVector CachingEncoder::embed_image(const Image& image) const {
    const std::string key = image_cache_key(image, inner_->identity());
    if (auto hit = cache_->get(key, Modality::image)) return *hit;
    EmbeddingVector e = inner_->embed_image(image);
    cache_->put(key, e);
    return e;
}

EmbeddingVector CachingEncoder::embed_text(const std::string& text) const {
    const std::string key = text_cache_key(text, inner_->identity());
    if (auto hit = cache_->get(key, Modality::text)) return *hit;
    EmbeddingVector e = inner_->embed_text(text);
    cache_->put(key, e);
    return e;
}

CachingCaptioner::CachingCaptioner(std::shared_ptr<const CaptionerInterface> inner,
                                   std::shared_ptr<CaptionCache> cache)
    : inner_(std::move(inner)), cache_(std::move(cache)) {}

std::string CachingCaptioner::caption(const Image& image) const {
    const std::string key = image_cache_key(image, inner_->identity());
    if (auto hit = cache_->get(key)) return *hit;
    std::string c = inner_->caption(image);
    cache_->put(key, c);
    return c;
}

Backends with_caches(Backends backends, const std::string& cache_dir) {
    if (cache_dir.empty()) return backends;
    const fs::path root(cache_dir);
    backends.encoder = std::make_shared<CachingEncoder>(
        backends.encoder, std::make_shared<EmbeddingCache>(root / "embeddings"));
    backends.captioner = std::make_shared<CachingCaptioner>(
        backends.captioner, std::make_shared<CaptionCache>(root / "captions"));
    return backends;
}

}  // namespace tas
