#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tas/backends.hpp"

namespace tas {

// Named solid colors shared by the mock encoder and the scene captioner.
// Registering {"red", {255,0,0}} makes a mostly-red crop embed to the same
// vector as the text "red", which is what lets synthetic scenes act as
// end-to-end oracles.
struct ConceptRegistry {
    struct Entry {
        std::string name;
        Rgb color;
    };
    std::vector<Entry> entries;
    int tolerance = 32;        // per-channel match slack
    double dominance = 0.5;    // fraction of non-black pixels required

    // Index of the entry matching (x) a pixel, or -1.
    int match(Rgb c) const;
    std::string fingerprint() const;
};

// Hash-derived unit vectors: bitwise-deterministic, seed-sensitive, and
// near-orthogonal for distinct inputs at reasonable dimensions.
class MockEncoder : public ImageTextEncoderInterface {
public:
    MockEncoder(std::size_t dimension, std::uint64_t seed,
                ConceptRegistry registry = {});

    EmbeddingVector embed_image(const Image& image) const override;
    EmbeddingVector embed_text(const std::string& text) const override;
    std::size_t dimension() const override { return dim_; }
    std::string identity() const override;

private:
    EmbeddingVector hash_vector(std::uint64_t key, Modality modality) const;
    EmbeddingVector concept_vector(const std::vector<int>& entry_indices,
                                   Modality modality) const;

    std::size_t dim_;
    std::uint64_t seed_;
    ConceptRegistry registry_;
};

// Returns the scripted caption for a known image fingerprint, else "an image".
class ScriptedCaptioner : public CaptionerInterface {
public:
    explicit ScriptedCaptioner(std::map<std::string, std::string> script = {});

    std::string caption(const Image& image) const override;
    std::string identity() const override;

    static std::string fingerprint(const Image& image);

private:
    std::map<std::string, std::string> script_;
};

// Captions an image by enumerating the registered colors present, in raster
// order of first occurrence: "a red box and a blue box". Falls back to
// "an image" when nothing matches.
class ColorSceneCaptioner : public CaptionerInterface {
public:
    ColorSceneCaptioner(ConceptRegistry registry, long long min_pixels = 16);

    std::string caption(const Image& image) const override;
    std::string identity() const override;

private:
    ConceptRegistry registry_;
    long long min_pixels_;
};

// Connected components of non-background pixels, 4-connectivity, exact color
// equality within a component. Components come out in raster order of their
// first pixel.
class ConnectedComponentsProposer : public MaskProposerInterface {
public:
    explicit ConnectedComponentsProposer(Rgb background = {0, 0, 0},
                                         long long min_area = 1);

    std::vector<MaskProposal> propose(const Image& image) const override;
    std::string identity() const override;

private:
    Rgb background_;
    long long min_area_;
};

}  // namespace tas
