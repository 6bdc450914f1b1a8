#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tas/embedding.hpp"
#include "tas/image.hpp"

namespace tas {

// Neural and lexical components sit behind these interfaces so the pipeline
// never depends on a particular model. Implementations must be deterministic
// for fixed weights/config and safe for concurrent read-only use; identity()
// feeds cache keys and must change whenever outputs could.

class MaskProposerInterface {
public:
    virtual ~MaskProposerInterface() = default;
    virtual std::vector<MaskProposal> propose(const Image& image) const = 0;
    virtual std::string identity() const = 0;
};

class ImageTextEncoderInterface {
public:
    virtual ~ImageTextEncoderInterface() = default;
    virtual EmbeddingVector embed_image(const Image& image) const = 0;
    virtual EmbeddingVector embed_text(const std::string& text) const = 0;
    virtual std::size_t dimension() const = 0;
    virtual std::string identity() const = 0;
};

class CaptionerInterface {
public:
    virtual ~CaptionerInterface() = default;
    virtual std::string caption(const Image& image) const = 0;
    virtual std::string identity() const = 0;
};

class PhraseExtractorInterface {
public:
    virtual ~PhraseExtractorInterface() = default;
    virtual std::vector<std::string> noun_phrases(const std::string& text) const = 0;
    // (head lemma, descriptor words)
    virtual std::pair<std::string, std::vector<std::string>>
    subject_with_descriptors(const std::string& text) const = 0;
};

class SynonymLexiconInterface {
public:
    virtual ~SynonymLexiconInterface() = default;
    // Best path similarity over all sense pairs, in (0, 1]; nullopt when
    // either lemma is unknown.
    virtual std::optional<double> path_similarity(const std::string& lemma_a,
                                                  const std::string& lemma_b) const = 0;
};

struct Backends {
    std::shared_ptr<const MaskProposerInterface> proposer;
    std::shared_ptr<const ImageTextEncoderInterface> encoder;
    std::shared_ptr<const CaptionerInterface> captioner;
    std::shared_ptr<const PhraseExtractorInterface> phrases;
    std::shared_ptr<const SynonymLexiconInterface> lexicon;
};

}  // namespace tas
