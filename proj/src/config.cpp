#include "tas/config.hpp"

#include <cstdlib>
#include <fstream>

#include "tas/chunker.hpp"
#include "tas/errors.hpp"
#include "tas/hash.hpp"
#include "tas/lexicon.hpp"
#include "tas/mock_backends.hpp"
#include "tas/text_util.hpp"

namespace tas {
namespace {

using nlohmann::json;

json default_backend_json() {
    // Real-model adapter operating point is recorded here even though only
    // the deterministic in-tree implementations ship: a sam proposer plugin
    // reads pred_iou_thresh/stability_score_thresh/points_per_side, a clip
    // encoder plugin reads resolution from preprocess.resolution, a blip2
    // captioner plugin reads decoding.
    return json{
        {"proposer",
         {{"name", "connected_components"},
          {"background", {0, 0, 0}},
          {"min_area", 1},
          {"pred_iou_thresh", 0.7},
          {"stability_score_thresh", 0.7},
          {"points_per_side", 8}}},
        {"encoder",
         {{"name", "mock"},
          {"dimension", 64},
          {"seed", 42},
          {"registry", json::array()},
          {"tolerance", 32},
          {"dominance", 0.5}}},
        {"captioner",
         {{"name", "scripted"},
          {"script", json::object()},
          {"registry", json::array()},
          {"min_pixels", 16},
          {"decoding", "greedy"}}},
        {"phrases", {{"name", "rule_based"}}},
        {"lexicon", {{"name", "bundled_path"}}},
    };
}

void merge_checked(json& base, const json& user, const std::string& path) {
    if (!user.is_object()) {
        throw ConfigError("config: expected object at " + path);
    }
    for (auto it = user.begin(); it != user.end(); ++it) {
        if (!base.contains(it.key())) {
            throw ConfigError("config: unknown key " + path + it.key());
        }
        json& slot = base[it.key()];
        // free-form maps replace wholesale; backend blocks overlay without
        // key validation since their parameters vary per implementation
        const bool free_form = (path == "rectifier." && it.key() == "vocab") ||
                               it.key() == "script" || it.key() == "registry";
        if (slot.is_object() && it.value().is_object() && path == "backend.") {
            for (auto jt = it.value().begin(); jt != it.value().end(); ++jt) {
                slot[jt.key()] = jt.value();
            }
        } else if (slot.is_object() && it.value().is_object() && !free_form) {
            merge_checked(slot, it.value(), path + it.key() + ".");
        } else {
            slot = it.value();
        }
    }
}

ViewStyle style_from_string(const std::string& s) {
    if (s == "crop") return ViewStyle::crop;
    if (s == "blur") return ViewStyle::blur;
    throw ConfigError("config: unknown view style: " + s);
}

Orientation orientation_from_string(const std::string& s) {
    if (s == "left") return Orientation::left();
    if (s == "right") return Orientation::right();
    if (s == "top") return Orientation::top();
    if (s == "bottom") return Orientation::bottom();
    throw ConfigError("config: unknown orientation: " + s);
}

Rgb rgb_from_json(const json& j) {
    if (!j.is_array() || j.size() != 3) throw ConfigError("config: color must be [r,g,b]");
    return {j[0].get<std::uint8_t>(), j[1].get<std::uint8_t>(), j[2].get<std::uint8_t>()};
}

ConceptRegistry registry_from_json(const json& block) {
    ConceptRegistry reg;
    for (const json& e : block.at("registry")) {
        reg.entries.push_back({e.at("name").get<std::string>(),
                               rgb_from_json(e.at("color"))});
    }
    if (block.contains("tolerance")) reg.tolerance = block.at("tolerance").get<int>();
    if (block.contains("dominance")) reg.dominance = block.at("dominance").get<double>();
    return reg;
}

}  // namespace

json default_config_json() {
    json vocab;
    for (const auto& [word, orient] : default_orientation_vocab()) {
        std::string name;
        if (orient == Orientation::left()) name = "left";
        else if (orient == Orientation::right()) name = "right";
        else if (orient == Orientation::top()) name = "top";
        else name = "bottom";
        vocab[word] = name;
    }
    return json{
        {"backend", default_backend_json()},
        {"preprocess",
         {{"encoder_style", "crop"},
          {"captioner_style", "blur"},
          {"blur_sigma", 10.0},
          {"resolution", 224}}},
        {"mining", {{"synonym_threshold", 0.9}}},
        {"fusion", {{"alpha", 0.1}, {"lambda", 0.7}}},
        {"selector", {{"mode", "tas"}, {"rectify", true}}},
        {"rectifier", {{"enabled", true}, {"vocab", vocab}}},
        {"eval", {{"min_mask_area", 100}}},
        {"io", {{"workers", 1}, {"cache_dir", ""}}},
    };
}

RunConfig RunConfig::defaults() { return from_json(json::object()); }

RunConfig RunConfig::from_json(const json& doc) {
    json resolved = default_config_json();
    merge_checked(resolved, doc, "");

    RunConfig c;
    c.resolved = resolved;

    const json& pre = resolved.at("preprocess");
    c.selector.encoder_style = style_from_string(pre.at("encoder_style"));
    c.selector.captioner_style = style_from_string(pre.at("captioner_style"));
    c.selector.blur_sigma = pre.at("blur_sigma").get<double>();
    c.selector.resolution = pre.at("resolution").get<int>();

    c.selector.synonym_threshold =
        resolved.at("mining").at("synonym_threshold").get<double>();

    const json& fusion = resolved.at("fusion");
    c.selector.fusion.alpha = fusion.at("alpha").get<double>();
    c.selector.fusion.lambda = fusion.at("lambda").get<double>();
    if (!(c.selector.fusion.alpha >= 0.0) || !(c.selector.fusion.lambda >= 0.0)) {
        throw ConfigError("config: fusion weights must be finite and non-negative");
    }

    const json& sel = resolved.at("selector");
    c.selector.mode = selector_mode_from_string(sel.at("mode").get<std::string>());
    const json& rect = resolved.at("rectifier");
    c.selector.rectify =
        sel.at("rectify").get<bool>() && rect.at("enabled").get<bool>();
    c.selector.orientation_vocab.clear();
    for (auto it = rect.at("vocab").begin(); it != rect.at("vocab").end(); ++it) {
        c.selector.orientation_vocab[it.key()] =
            orientation_from_string(it.value().get<std::string>());
    }

    c.min_mask_area = resolved.at("eval").at("min_mask_area").get<long long>();
    c.workers = resolved.at("io").at("workers").get<int>();
    if (c.workers < 1) throw ConfigError("config: io.workers must be >= 1");
    c.cache_dir = resolved.at("io").at("cache_dir").get<std::string>();
    if (c.cache_dir.empty()) {
        if (const char* env = std::getenv("TAS_CACHE_DIR")) c.cache_dir = env;
    }
    return c;
}

RunConfig RunConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("config: cannot read " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw ConfigError("config: parse error in " + path + ": " + e.what());
    }
    return from_json(doc);
}

std::string RunConfig::fingerprint() const {
    return to_hex(fnv1a64(resolved.dump()));
}

Backends make_backends(const RunConfig& config) {
    const json& b = config.resolved.at("backend");
    Backends out;

    const json& prop = b.at("proposer");
    const std::string prop_name = prop.at("name").get<std::string>();
    if (prop_name == "connected_components") {
        out.proposer = std::make_shared<ConnectedComponentsProposer>(
            rgb_from_json(prop.at("background")),
            prop.at("min_area").get<long long>());
    } else {
        throw ConfigError("backend.proposer: no registered implementation named '" +
                          prop_name + "' (external adapters must be plugged in)");
    }

    const json& enc = b.at("encoder");
    const std::string enc_name = enc.at("name").get<std::string>();
    if (enc_name == "mock") {
        out.encoder = std::make_shared<MockEncoder>(
            enc.at("dimension").get<std::size_t>(),
            enc.at("seed").get<std::uint64_t>(), registry_from_json(enc));
    } else {
        throw ConfigError("backend.encoder: no registered implementation named '" +
                          enc_name + "'");
    }

    const json& cap = b.at("captioner");
    const std::string cap_name = cap.at("name").get<std::string>();
    if (cap_name == "scripted") {
        std::map<std::string, std::string> script;
        for (auto it = cap.at("script").begin(); it != cap.at("script").end(); ++it) {
            script[it.key()] = it.value().get<std::string>();
        }
        out.captioner = std::make_shared<ScriptedCaptioner>(std::move(script));
    } else if (cap_name == "color_scene") {
        out.captioner = std::make_shared<ColorSceneCaptioner>(
            registry_from_json(cap), cap.at("min_pixels").get<long long>());
    } else {
        throw ConfigError("backend.captioner: no registered implementation named '" +
                          cap_name + "'");
    }

    const std::string phr_name = b.at("phrases").at("name").get<std::string>();
    if (phr_name == "rule_based") {
        out.phrases = std::make_shared<RuleBasedPhraseExtractor>();
    } else {
        throw ConfigError("backend.phrases: no registered implementation named '" +
                          phr_name + "'");
    }

    const std::string lex_name = b.at("lexicon").at("name").get<std::string>();
    if (lex_name == "bundled_path") {
        out.lexicon = std::make_shared<PathSynonymLexicon>();
    } else {
        throw ConfigError("backend.lexicon: no registered implementation named '" +
                          lex_name + "'");
    }
    return out;
}

}  // namespace tas
