#include "tas/scoring.hpp"

#include <algorithm>

#include "tas/errors.hpp"

namespace tas {
namespace {

MaskedView make_view(const Image& image, const MaskProposal& proposal,
                     ViewStyle style, double blur_sigma) {
    return style == ViewStyle::crop ? crop_masked(image, proposal)
                                    : blur_masked(image, proposal, blur_sigma);
}

int argmax_total(const std::vector<ScoreBreakdown>& per_mask,
                 const std::vector<int>& candidates) {
    int best_id = -1;
    double best_total = 0.0;
    for (const ScoreBreakdown& s : per_mask) {
        if (!candidates.empty() &&
            std::find(candidates.begin(), candidates.end(), s.proposal_id) ==
                candidates.end()) {
            continue;
        }
        if (best_id < 0 || s.total > best_total) {
            best_id = s.proposal_id;
            best_total = s.total;
        }
    }
    return best_id;
}

SelectionResult run_selection(SelectorMode mode, const Image& image,
                              const std::vector<MaskProposal>& proposals,
                              const ReferringQuery& query,
                              const Backends& backends,
                              const SelectorConfig& cfg, bool allow_rectify) {
    if (proposals.empty()) throw NoProposals("select: no mask proposals");

    SelectionResult result;
    const EmbeddingVector expr_emb = backends.encoder->embed_text(query.raw_text);

    const bool need_captions = mode != SelectorMode::clip_only;
    const bool need_negatives = mode == SelectorMode::tas;
    const bool need_image_emb = mode != SelectorMode::text_only;

    // negative embeddings are shared by every mask, so compute them once
    std::vector<EmbeddingVector> negative_embs;
    if (need_negatives) {
        result.overall_caption = backends.captioner->caption(image);
        result.negatives =
            mine_negatives(result.overall_caption, query, *backends.phrases,
                           *backends.lexicon, cfg.synonym_threshold);
        negative_embs.reserve(result.negatives.phrases.size());
        for (const std::string& phrase : result.negatives.phrases) {
            negative_embs.push_back(backends.encoder->embed_text(phrase));
        }
    }

    std::vector<const MaskProposal*> ordered;
    ordered.reserve(proposals.size());
    for (const MaskProposal& p : proposals) ordered.push_back(&p);
    std::sort(ordered.begin(), ordered.end(),
              [](const MaskProposal* a, const MaskProposal* b) {
                  return a->proposal_id < b->proposal_id;
              });

    for (const MaskProposal* p : ordered) {
        ScoreBreakdown s;
        s.proposal_id = p->proposal_id;
        EmbeddingVector image_emb;
        if (need_image_emb) {
            MaskedView view = make_view(image, *p, cfg.encoder_style, cfg.blur_sigma);
            image_emb = backends.encoder->embed_image(
                to_encoder_input(view, cfg.resolution));
            s.v = v_score(image_emb, expr_emb);
        }
        if (need_captions) {
            MaskedView view = make_view(image, *p, cfg.captioner_style, cfg.blur_sigma);
            const std::string caption = backends.captioner->caption(view.image);
            s.p = p_score(backends.encoder->embed_text(caption), expr_emb);
        }
        if (need_negatives) s.n = n_score(image_emb, negative_embs);
        switch (mode) {
            case SelectorMode::tas:
                s.total = fuse(s.v, s.p, s.n, cfg.fusion);
                break;
            case SelectorMode::clip_only:
                s.total = s.v;
                break;
            case SelectorMode::text_only:
                s.total = s.p;
                break;
        }
        result.per_mask.push_back(s);
    }

    std::vector<int> candidates;
    if (allow_rectify && cfg.rectify) {
        result.orientation = detect_orientation(query, cfg.orientation_vocab);
        if (result.orientation) {
            candidates = rectify(proposals, *result.orientation);
            result.rectified = true;
        }
    }
    result.chosen_id = argmax_total(result.per_mask, candidates);
    return result;
}

}  // namespace

std::string to_string(SelectorMode mode) {
    switch (mode) {
        case SelectorMode::tas: return "tas";
        case SelectorMode::clip_only: return "clip_only";
        case SelectorMode::text_only: return "text_only";
    }
    return "tas";
}

SelectorMode selector_mode_from_string(const std::string& s) {
    if (s == "tas") return SelectorMode::tas;
    if (s == "clip_only") return SelectorMode::clip_only;
    if (s == "text_only") return SelectorMode::text_only;
    throw ConfigError("unknown selector mode: " + s);
}

double v_score(const EmbeddingVector& image_emb, const EmbeddingVector& expr_emb) {
    return cosine(image_emb, expr_emb);
}

double p_score(const EmbeddingVector& caption_emb, const EmbeddingVector& expr_emb) {
    return cosine(caption_emb, expr_emb);
}

double n_score(const EmbeddingVector& image_emb,
               const std::vector<EmbeddingVector>& negative_text_embs) {
    if (negative_text_embs.empty()) return 0.0;
    double sum = 0.0;
    for (const EmbeddingVector& t : negative_text_embs) sum += cosine(image_emb, t);
    return -sum / static_cast<double>(negative_text_embs.size());
}

double fuse(double v, double p, double n, const FusionConfig& cfg) {
    return v + cfg.alpha * p + cfg.lambda * n;
}

SelectionResult select(const Image& image,
                       const std::vector<MaskProposal>& proposals,
                       const ReferringQuery& query, const Backends& backends,
                       const SelectorConfig& cfg) {
    if (cfg.mode != SelectorMode::tas) {
        return select_baseline(cfg.mode, image, proposals, query, backends, cfg);
    }
    return run_selection(SelectorMode::tas, image, proposals, query, backends,
                         cfg, /*allow_rectify=*/true);
}

SelectionResult select_baseline(SelectorMode mode, const Image& image,
                                const std::vector<MaskProposal>& proposals,
                                const ReferringQuery& query,
                                const Backends& backends,
                                const SelectorConfig& cfg) {
    return run_selection(mode, image, proposals, query, backends, cfg,
                         /*allow_rectify=*/false);
}

}  // namespace tas
