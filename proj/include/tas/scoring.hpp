#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tas/backends.hpp"
#include "tas/embedding.hpp"
#include "tas/mining.hpp"
#include "tas/preprocess.hpp"
#include "tas/query.hpp"
#include "tas/rectifier.hpp"

namespace tas {

struct FusionConfig {
    double alpha = 0.1;
    double lambda = 0.7;
};

// Per-mask score components and their fused total.
struct ScoreBreakdown {
    int proposal_id = 0;
    double v = 0.0;
    double p = 0.0;
    double n = 0.0;
    double total = 0.0;
};

struct SelectionResult {
    int chosen_id = 0;
    std::vector<ScoreBreakdown> per_mask;  // ordered by proposal_id
    bool rectified = false;
    std::optional<Orientation> orientation;
    NegativePhraseSet negatives;
    std::string overall_caption;
};

enum class SelectorMode { tas, clip_only, text_only };

std::string to_string(SelectorMode mode);
SelectorMode selector_mode_from_string(const std::string& s);

struct SelectorConfig {
    FusionConfig fusion;
    SelectorMode mode = SelectorMode::tas;
    bool rectify = true;
    ViewStyle encoder_style = ViewStyle::crop;
    ViewStyle captioner_style = ViewStyle::blur;
    double blur_sigma = 10.0;
    int resolution = 224;
    double synonym_threshold = 0.9;
    OrientationVocab orientation_vocab = default_orientation_vocab();
};

double v_score(const EmbeddingVector& image_emb, const EmbeddingVector& expr_emb);
double p_score(const EmbeddingVector& caption_emb, const EmbeddingVector& expr_emb);

// Negated mean similarity against the mined phrases; 0 for an empty set.
double n_score(const EmbeddingVector& image_emb,
               const std::vector<EmbeddingVector>& negative_text_embs);

double fuse(double v, double p, double n, const FusionConfig& cfg);

// One full selection: score every proposal, optionally restrict candidates
// with the spatial rectifier, then argmax (ties break toward the lowest
// proposal_id). Throws NoProposals on an empty proposal list.
SelectionResult select(const Image& image,
                       const std::vector<MaskProposal>& proposals,
                       const ReferringQuery& query, const Backends& backends,
                       const SelectorConfig& cfg);

// clip_only: argmax V. text_only: argmax P. Neither applies the rectifier.
SelectionResult select_baseline(SelectorMode mode, const Image& image,
                                const std::vector<MaskProposal>& proposals,
                                const ReferringQuery& query,
                                const Backends& backends,
                                const SelectorConfig& cfg);

}  // namespace tas
