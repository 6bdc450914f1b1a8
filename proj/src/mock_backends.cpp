#include "tas/mock_backends.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <sstream>

#include "tas/hash.hpp"
#include "tas/text_util.hpp"

namespace tas {

int ConceptRegistry::match(Rgb c) const {
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const Rgb& e = entries[i].color;
        bool ok = true;
        for (int ch = 0; ch < 3; ++ch) {
            if (std::abs(static_cast<int>(c[ch]) - static_cast<int>(e[ch])) > tolerance) {
                ok = false;
                break;
            }
        }
        if (ok) return static_cast<int>(i);
    }
    return -1;
}

std::string ConceptRegistry::fingerprint() const {
    std::uint64_t h = fnv1a64("registry");
    for (const Entry& e : entries) {
        h = fnv1a64(e.name, h);
        h = fnv1a64(e.color.data(), e.color.size(), h);
    }
    h = fnv1a64(&tolerance, sizeof tolerance, h);
    return to_hex(h);
}

MockEncoder::MockEncoder(std::size_t dimension, std::uint64_t seed,
                         ConceptRegistry registry)
    : dim_(dimension), seed_(seed), registry_(std::move(registry)) {}

EmbeddingVector MockEncoder::hash_vector(std::uint64_t key, Modality modality) const {
    std::uint64_t state = key ^ (seed_ * 0x9e3779b97f4a7c15ull);
    EmbeddingVector e;
    e.modality = modality;
    e.values.resize(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        // uniform in [-1, 1)
        const std::uint64_t r = splitmix64(state);
        e.values[i] = static_cast<float>(
            static_cast<double>(r >> 11) / static_cast<double>(1ull << 53) * 2.0 - 1.0);
    }
    normalize(e.values);
    return e;
}

EmbeddingVector MockEncoder::concept_vector(const std::vector<int>& entry_indices,
                                            Modality modality) const {
    std::vector<float> acc(dim_, 0.0f);
    for (int idx : entry_indices) {
        EmbeddingVector base =
            hash_vector(fnv1a64(registry_.entries[idx].name), Modality::text);
        for (std::size_t i = 0; i < dim_; ++i) acc[i] += base.values[i];
    }
    normalize(acc);
    EmbeddingVector e;
    e.modality = modality;
    e.values = std::move(acc);
    return e;
}

EmbeddingVector MockEncoder::embed_text(const std::string& text) const {
    const std::string norm = normalize_text(text);
    if (!registry_.entries.empty()) {
        std::vector<int> hits;
        for (const std::string& tok : tokenize(norm)) {
            for (std::size_t i = 0; i < registry_.entries.size(); ++i) {
                if (registry_.entries[i].name == tok &&
                    std::find(hits.begin(), hits.end(), static_cast<int>(i)) == hits.end()) {
                    hits.push_back(static_cast<int>(i));
                }
            }
        }
        if (!hits.empty()) return concept_vector(hits, Modality::text);
    }
    return hash_vector(fnv1a64(norm, fnv1a64("text")), Modality::text);
}

EmbeddingVector MockEncoder::embed_image(const Image& image) const {
    if (!registry_.entries.empty()) {
        std::vector<long long> counts(registry_.entries.size(), 0);
        long long non_black = 0;
        for (int y = 0; y < image.height; ++y) {
            for (int x = 0; x < image.width; ++x) {
                Rgb c = image.get(x, y);
                if (c[0] <= 8 && c[1] <= 8 && c[2] <= 8) continue;  // padding/background
                ++non_black;
                int m = registry_.match(c);
                if (m >= 0) ++counts[m];
            }
        }
        if (non_black > 0) {
            int best = static_cast<int>(
                std::max_element(counts.begin(), counts.end()) - counts.begin());
            if (counts[best] > 0 &&
                static_cast<double>(counts[best]) >= registry_.dominance * non_black) {
                return concept_vector({best}, Modality::image);
            }
        }
    }
    std::uint64_t h = fnv1a64("image");
    h = fnv1a64(&image.width, sizeof image.width, h);
    h = fnv1a64(&image.height, sizeof image.height, h);
    h = fnv1a64(image.pixels.data(), image.pixels.size(), h);
    return hash_vector(h, Modality::image);
}

std::string MockEncoder::identity() const {
    std::ostringstream os;
    os << "mock-encoder/d" << dim_ << "/s" << seed_;
    if (!registry_.entries.empty()) os << "/r" << registry_.fingerprint();
    return os.str();
}

ScriptedCaptioner::ScriptedCaptioner(std::map<std::string, std::string> script)
    : script_(std::move(script)) {}

std::string ScriptedCaptioner::fingerprint(const Image& image) {
    std::uint64_t h = fnv1a64(&image.width, sizeof image.width);
    h = fnv1a64(&image.height, sizeof image.height, h);
    h = fnv1a64(image.pixels.data(), image.pixels.size(), h);
    return to_hex(h);
}

std::string ScriptedCaptioner::caption(const Image& image) const {
    auto it = script_.find(fingerprint(image));
    return it != script_.end() ? it->second : "an image";
}

std::string ScriptedCaptioner::identity() const {
    std::uint64_t h = fnv1a64("scripted-captioner");
    for (const auto& [k, v] : script_) {
        h = fnv1a64(k, h);
        h = fnv1a64(v, h);
    }
    return "scripted-captioner/" + to_hex(h);
}

ColorSceneCaptioner::ColorSceneCaptioner(ConceptRegistry registry, long long min_pixels)
    : registry_(std::move(registry)), min_pixels_(min_pixels) {}

std::string ColorSceneCaptioner::caption(const Image& image) const {
    std::vector<long long> counts(registry_.entries.size(), 0);
    std::vector<int> order;  // entries in raster order of first occurrence
    for (int y = 0; y < image.height; ++y) {
        for (int x = 0; x < image.width; ++x) {
            int m = registry_.match(image.get(x, y));
            if (m < 0) continue;
            if (counts[m] == 0) order.push_back(m);
            ++counts[m];
        }
    }
    std::vector<std::string> parts;
    for (int idx : order) {
        if (counts[idx] >= min_pixels_)
            parts.push_back("a " + registry_.entries[idx].name + " box");
    }
    if (parts.empty()) return "an image";
    std::string out = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i) out += " and " + parts[i];
    return out;
}

std::string ColorSceneCaptioner::identity() const {
    return "color-scene-captioner/" + registry_.fingerprint() + "/m" +
           std::to_string(min_pixels_);
}

ConnectedComponentsProposer::ConnectedComponentsProposer(Rgb background,
                                                         long long min_area)
    : background_(background), min_area_(min_area) {}

std::vector<MaskProposal> ConnectedComponentsProposer::propose(const Image& image) const {
    const int w = image.width, h = image.height;
    std::vector<int> label(static_cast<std::size_t>(w) * h, -1);
    std::vector<MaskProposal> out;
    int next_label = 0;
    std::vector<std::pair<int, int>> stack;
    for (int y0 = 0; y0 < h; ++y0) {
        for (int x0 = 0; x0 < w; ++x0) {
            const std::size_t i0 = static_cast<std::size_t>(y0) * w + x0;
            if (label[i0] >= 0) continue;
            Rgb c = image.get(x0, y0);
            if (c == background_) continue;
            BinaryMask mask(w, h);
            stack.clear();
            stack.emplace_back(x0, y0);
            label[i0] = next_label;
            while (!stack.empty()) {
                auto [x, y] = stack.back();
                stack.pop_back();
                mask.set(x, y, true);
                const int dx[4] = {1, -1, 0, 0};
                const int dy[4] = {0, 0, 1, -1};
                for (int k = 0; k < 4; ++k) {
                    int nx = x + dx[k], ny = y + dy[k];
                    if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
                    const std::size_t ni = static_cast<std::size_t>(ny) * w + nx;
                    if (label[ni] >= 0) continue;
                    if (image.get(nx, ny) != c) continue;
                    label[ni] = next_label;
                    stack.emplace_back(nx, ny);
                }
            }
            MaskProposal p = MaskProposal::from_mask(next_label, std::move(mask));
            if (p.area >= min_area_) {
                p.proposal_id = static_cast<int>(out.size());
                out.push_back(std::move(p));
            }
            ++next_label;
        }
    }
    // re-id after the min-area filter so ids stay dense
    for (std::size_t i = 0; i < out.size(); ++i) out[i].proposal_id = static_cast<int>(i);
    return out;
}

std::string ConnectedComponentsProposer::identity() const {
    std::ostringstream os;
    os << "cc-proposer/bg" << static_cast<int>(background_[0]) << ","
       << static_cast<int>(background_[1]) << "," << static_cast<int>(background_[2])
       << "/a" << min_area_;
    return os.str();
}

}  // namespace tas
