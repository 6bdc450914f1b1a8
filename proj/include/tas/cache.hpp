#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "tas/backends.hpp"

namespace tas {

// index.json (input-hash -> {row, dim, dtype:"f32le"}) plus a flat
// little-endian float32 row file. Writes are serialized; the index is
// persisted on every insert so partial runs stay usable.
class EmbeddingCache {
public:
    explicit EmbeddingCache(std::filesystem::path dir);

    std::optional<EmbeddingVector> get(const std::string& key, Modality modality) const;
    void put(const std::string& key, const EmbeddingVector& emb);

private:
    struct Entry {
        std::size_t row = 0;
        std::size_t dim = 0;
    };
    void save_index() const;

    std::filesystem::path dir_;
    std::map<std::string, Entry> index_;
    std::size_t rows_ = 0;
    mutable std::mutex mutex_;
};

// captions.json: input-hash -> caption string.
class CaptionCache {
public:
    explicit CaptionCache(std::filesystem::path dir);

    std::optional<std::string> get(const std::string& key) const;
    void put(const std::string& key, const std::string& caption);

private:
    std::filesystem::path file_;
    std::map<std::string, std::string> entries_;
    mutable std::mutex mutex_;
};

// Content-hash key over input bytes plus the backend identity, so swapping
// backends or seeds can never alias.
std::string image_cache_key(const Image& image, const std::string& backend_identity);
std::string text_cache_key(const std::string& text, const std::string& backend_identity);

class CachingEncoder : public ImageTextEncoderInterface {
public:
    CachingEncoder(std::shared_ptr<const ImageTextEncoderInterface> inner,
                   std::shared_ptr<EmbeddingCache> cache);

    EmbeddingVector embed_image(const Image& image) const override;
    EmbeddingVector embed_text(const std::string& text) const override;
    std::size_t dimension() const override { return inner_->dimension(); }
    std::string identity() const override { return inner_->identity(); }

private:
    std::shared_ptr<const ImageTextEncoderInterface> inner_;
    std::shared_ptr<EmbeddingCache> cache_;
};

class CachingCaptioner : public CaptionerInterface {
public:
    CachingCaptioner(std::shared_ptr<const CaptionerInterface> inner,
                     std::shared_ptr<CaptionCache> cache);

    std::string caption(const Image& image) const override;
    std::string identity() const override { return inner_->identity(); }

private:
    std::shared_ptr<const CaptionerInterface> inner_;
    std::shared_ptr<CaptionCache> cache_;
};

// Wrap encoder/captioner with caches rooted at cache_dir; pass-through when
// cache_dir is empty.
Backends with_caches(Backends backends, const std::string& cache_dir);

}  // namespace tas
