#pragma once

// Shared fixtures: random mask generators, synthetic rectangle scenes, and
// independent score oracles. Everything here recomputes results with plain
// loops so the library under test is never its own referee.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "tas/backends.hpp"
#include "tas/chunker.hpp"
#include "tas/eval.hpp"
#include "tas/lexicon.hpp"
#include "tas/image.hpp"
#include "tas/mining.hpp"
#include "tas/mock_backends.hpp"
#include "tas/preprocess.hpp"
#include "tas/scoring.hpp"

namespace tas_test {

inline tas::BinaryMask random_mask(int w, int h, std::mt19937& rng,
                                   double density = 0.4) {
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    tas::BinaryMask m(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (coin(rng) < density) m.set(x, y, true);
        }
    }
    return m;
}

inline tas::BinaryMask random_nonempty_mask(int w, int h, std::mt19937& rng,
                                            double density = 0.4) {
    tas::BinaryMask m = random_mask(w, h, rng, density);
    std::uniform_int_distribution<int> dx(0, w - 1), dy(0, h - 1);
    m.set(dx(rng), dy(rng), true);
    return m;
}

inline tas::BinaryMask rect_mask(int w, int h, const tas::BBox& b) {
    tas::BinaryMask m(w, h);
    for (int y = b.y_min; y <= b.y_max; ++y) {
        for (int x = b.x_min; x <= b.x_max; ++x) m.set(x, y, true);
    }
    return m;
}

inline tas::ConceptRegistry test_registry() {
    tas::ConceptRegistry reg;
    reg.entries = {{"red", {220, 30, 30}},
                   {"blue", {30, 30, 220}},
                   {"green", {30, 200, 30}},
                   {"yellow", {230, 220, 40}}};
    return reg;
}

struct SceneObject {
    std::string color;
    tas::BBox rect;
};

struct Scene {
    tas::Image image;
    std::vector<SceneObject> objects;
    std::string expression;
    int expected_object = 0;  // index into objects

    tas::BinaryMask gt_mask() const {
        return rect_mask(image.width, image.height, objects[expected_object].rect);
    }
};

inline Scene make_scene(int width, int height,
                        const std::vector<SceneObject>& objects,
                        const std::string& expression, int expected_object) {
    Scene s;
    s.image = tas::Image(width, height);
    s.objects = objects;
    s.expression = expression;
    s.expected_object = expected_object;
    const tas::ConceptRegistry reg = test_registry();
    for (const SceneObject& o : objects) {
        tas::Rgb color{0, 0, 0};
        for (const auto& e : reg.entries) {
            if (e.name == o.color) color = e.color;
        }
        for (int y = o.rect.y_min; y <= o.rect.y_max; ++y) {
            for (int x = o.rect.x_min; x <= o.rect.x_max; ++x) {
                s.image.set(x, y, color);
            }
        }
    }
    return s;
}

// Colored rectangles plus templated expressions. Indices 0..11 use unique
// colors ("the red box"), 12..19 use orientation phrases over same-color
// pairs; the orientation subset deliberately includes right/bottom cases a
// lowest-id tiebreak gets wrong.
inline std::vector<Scene> synthetic_suite() {
    std::vector<Scene> scenes;
    const std::vector<std::string> colors = {"red", "blue", "green", "yellow"};
    std::mt19937 rng(7);
    for (int i = 0; i < 12; ++i) {
        std::uniform_int_distribution<int> pick(0, 3);
        int a = pick(rng);
        int b = (a + 1 + pick(rng) % 3) % 4;
        std::vector<SceneObject> objs = {
            {colors[a], {4, 8, 19, 23}},
            {colors[b], {40, 24, 55, 39}},
        };
        int target = i % 2;
        scenes.push_back(make_scene(64, 48, objs,
                                    "the " + objs[target].color + " box", target));
    }
    const char* sides[] = {"left", "right", "top", "bottom"};
    for (int i = 0; i < 8; ++i) {
        const std::string side = sides[i % 4];
        const std::string color = colors[i % 4];
        std::vector<SceneObject> objs;
        int target;
        if (side == "left" || side == "right") {
            objs = {{color, {4, 16, 19, 31}}, {color, {44, 16, 59, 31}}};
            target = side == "left" ? 0 : 1;
        } else {
            objs = {{color, {24, 4, 39, 15}}, {color, {24, 32, 39, 43}}};
            target = side == "top" ? 0 : 1;
        }
        scenes.push_back(make_scene(64, 48, objs,
                                    "the " + color + " box on the " + side, target));
    }
    return scenes;
}

inline std::vector<tas::MaskProposal> scene_proposals(const Scene& s) {
    std::vector<tas::MaskProposal> out;
    for (std::size_t i = 0; i < s.objects.size(); ++i) {
        out.push_back(tas::MaskProposal::from_mask(
            static_cast<int>(i),
            rect_mask(s.image.width, s.image.height, s.objects[i].rect)));
    }
    return out;
}

inline tas::Backends scene_backends() {
    tas::Backends b;
    b.proposer = std::make_shared<tas::ConnectedComponentsProposer>();
    b.encoder = std::make_shared<tas::MockEncoder>(64, 42, test_registry());
    b.captioner = std::make_shared<tas::ColorSceneCaptioner>(test_registry());
    b.phrases = std::make_shared<tas::RuleBasedPhraseExtractor>();
    b.lexicon = std::make_shared<tas::PathSynonymLexicon>();
    return b;
}

// ------------------------------------------------------------------
// Independent oracles
// ------------------------------------------------------------------

// Exhaustive scripted evaluation of the score pipeline: per-mask scores with
// plain loops, manual fusion, manual rank-split rectification, manual argmax.
inline int oracle_select(const tas::Image& image,
                         const std::vector<tas::MaskProposal>& proposals,
                         const std::string& expression,
                         const tas::Backends& backends,
                         const tas::SelectorConfig& cfg) {
    const tas::EmbeddingVector expr = backends.encoder->embed_text(expression);
    const tas::ReferringQuery query = tas::parse_query(expression, *backends.phrases);

    std::vector<tas::EmbeddingVector> neg;
    if (cfg.mode == tas::SelectorMode::tas) {
        const std::string overall = backends.captioner->caption(image);
        tas::NegativePhraseSet mined =
            tas::mine_negatives(overall, query, *backends.phrases,
                                *backends.lexicon, cfg.synonym_threshold);
        for (const std::string& t : mined.phrases) {
            neg.push_back(backends.encoder->embed_text(t));
        }
    }

    std::vector<int> ids;
    std::vector<double> totals;
    for (const tas::MaskProposal& p : proposals) {
        tas::MaskedView enc_view =
            cfg.encoder_style == tas::ViewStyle::crop
                ? tas::crop_masked(image, p)
                : tas::blur_masked(image, p, cfg.blur_sigma);
        tas::EmbeddingVector img =
            backends.encoder->embed_image(tas::to_encoder_input(enc_view, cfg.resolution));
        double v = tas::cosine(img, expr);
        double total = v;
        if (cfg.mode != tas::SelectorMode::clip_only) {
            tas::MaskedView cap_view =
                cfg.captioner_style == tas::ViewStyle::crop
                    ? tas::crop_masked(image, p)
                    : tas::blur_masked(image, p, cfg.blur_sigma);
            double pscore = tas::cosine(
                backends.encoder->embed_text(backends.captioner->caption(cap_view.image)),
                expr);
            if (cfg.mode == tas::SelectorMode::text_only) {
                total = pscore;
            } else {
                double sum = 0.0;
                for (const tas::EmbeddingVector& t : neg) sum += tas::cosine(img, t);
                double nscore = neg.empty() ? 0.0 : -sum / static_cast<double>(neg.size());
                total = v + cfg.fusion.alpha * pscore + cfg.fusion.lambda * nscore;
            }
        }
        ids.push_back(p.proposal_id);
        totals.push_back(total);
    }

    std::vector<bool> allowed(ids.size(), true);
    if (cfg.mode == tas::SelectorMode::tas && cfg.rectify) {
        auto orient = tas::detect_orientation(query, cfg.orientation_vocab);
        if (orient) {
            // rank split, ties by proposal_id
            std::vector<std::size_t> order(proposals.size());
            for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
            std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                double ca = orient->axis == tas::Axis::horizontal
                                ? proposals[a].centroid.x
                                : proposals[a].centroid.y;
                double cb = orient->axis == tas::Axis::horizontal
                                ? proposals[b].centroid.x
                                : proposals[b].centroid.y;
                if (ca != cb) return ca < cb;
                return proposals[a].proposal_id < proposals[b].proposal_id;
            });
            const std::size_t half = (proposals.size() + 1) / 2;
            std::fill(allowed.begin(), allowed.end(), false);
            if (orient->side == tas::Side::low) {
                for (std::size_t i = 0; i < half; ++i) allowed[order[i]] = true;
            } else {
                for (std::size_t i = proposals.size() - half; i < proposals.size(); ++i) {
                    allowed[order[i]] = true;
                }
            }
        }
    }

    int best = -1;
    double best_total = 0.0;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (!allowed[i]) continue;
        if (best < 0 || totals[i] > best_total ||
            (totals[i] == best_total && ids[i] < best)) {
            best = ids[i];
            best_total = totals[i];
        }
    }
    return best;
}

// Per-pixel counting IoU.
inline tas::IouResult oracle_iou(const tas::BinaryMask& a, const tas::BinaryMask& b) {
    tas::IouResult r;
    for (int y = 0; y < a.height; ++y) {
        for (int x = 0; x < a.width; ++x) {
            bool va = a.get(x, y), vb = b.get(x, y);
            if (va && vb) ++r.intersection;
            if (va || vb) ++r.union_;
        }
    }
    r.ratio = r.union_ == 0 ? 0.0
                            : static_cast<double>(r.intersection) / r.union_;
    return r;
}

// Randomized instance for the fusion/reduction oracles: up to 8 rectangle
// proposals over a small colored-rectangle image.
struct MockInstance {
    tas::Image image;
    std::vector<tas::MaskProposal> proposals;
    std::string expression;
};

inline MockInstance random_instance(std::mt19937& rng) {
    const int w = 48, h = 32;
    MockInstance inst;
    inst.image = tas::Image(w, h);
    const tas::ConceptRegistry reg = test_registry();
    std::uniform_int_distribution<int> nprop(1, 8), coord_x(0, w - 9),
        coord_y(0, h - 9), size(3, 8), color(0, 3);
    const int k = nprop(rng);
    for (int i = 0; i < k; ++i) {
        int x0 = coord_x(rng), y0 = coord_y(rng);
        tas::BBox b{x0, y0, x0 + size(rng), y0 + size(rng)};
        tas::Rgb c = reg.entries[color(rng)].color;
        for (int y = b.y_min; y <= b.y_max; ++y) {
            for (int x = b.x_min; x <= b.x_max; ++x) inst.image.set(x, y, c);
        }
        inst.proposals.push_back(
            tas::MaskProposal::from_mask(i, rect_mask(w, h, b)));
    }
    static const char* templates[] = {
        "the red box",        "the blue box",          "the green box",
        "the yellow box",     "the box on the left",   "the box on the right",
        "the top yellow box", "the red box on the bottom",
    };
    std::uniform_int_distribution<int> t(0, 7);
    inst.expression = templates[t(rng)];
    return inst;
}

inline std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        auto base = std::filesystem::temp_directory_path();
        std::random_device rd;
        path_ = base / ("tas_" + tag + "_" + std::to_string(rd()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

}  // namespace tas_test
