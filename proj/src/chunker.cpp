#include "tas/chunker.hpp"

#include <algorithm>

#include "tas/text_util.hpp"

namespace tas {
namespace {

const char* kDeterminers[] = {
    "a",    "an",   "the",  "this", "that",  "these", "those", "his",
    "her",  "its",  "their", "my",  "your",  "our",   "some",  "any",
    "each", "every", "no",  "one",  "two",   "three", "four",  "five",
};

const char* kAdjectives[] = {
    // colors
    "red", "blue", "green", "yellow", "orange", "purple", "pink", "brown",
    "black", "white", "gray", "grey", "golden", "silver", "dark", "light",
    // size / shape
    "big", "small", "large", "little", "tiny", "huge", "tall", "short",
    "long", "wide", "narrow", "thin", "thick", "round", "flat",
    // age / state
    "young", "old", "elderly", "new", "broken", "empty", "full", "open",
    "closed", "wet", "dry", "happy", "sad", "smiling", "standing", "sitting",
    // material / pattern
    "wooden", "plastic", "metal", "glass", "striped", "plaid", "furry",
    "shiny", "fuzzy",
    // position
    "left", "right", "top", "bottom", "upper", "lower", "leftmost",
    "rightmost", "middle", "center", "front", "back", "near", "far",
    "first", "second", "third", "last", "other", "nearest", "farthest",
    "closest",
};

const char* kNouns[] = {
    // people
    "person", "man", "gentleman", "guy", "woman", "lady", "boy", "lad",
    "girl", "child", "kid", "baby", "adult", "worker", "athlete", "player",
    "rider", "driver", "skier", "surfer", "batter", "pitcher", "catcher",
    // animals
    "animal", "dog", "cat", "kitty", "horse", "bird", "cow", "sheep",
    "bear", "elephant", "zebra", "giraffe", "mouse", "goose",
    // vehicles
    "vehicle", "car", "auto", "automobile", "bus", "truck", "train",
    "bicycle", "bike", "motorcycle", "boat", "airplane", "plane",
    // furniture
    "furniture", "chair", "couch", "sofa", "bench", "table", "desk", "bed",
    // containers
    "container", "box", "bottle", "cup", "mug", "bowl", "plate", "bag",
    "suitcase", "vase", "basket",
    // clothing
    "clothing", "hat", "cap", "helmet", "shirt", "jacket", "coat", "dress",
    "shoe", "tie", "jeans", "sweater",
    // devices
    "device", "tv", "television", "laptop", "computer", "phone", "keyboard",
    "remote", "clock", "camera",
    // food
    "food", "banana", "apple", "sandwich", "pizza", "donut", "cake",
    // structures / scene
    "building", "house", "wall", "fence", "window", "door", "sign", "floor",
    "ground", "field", "road", "street", "tree", "grass", "flower", "plant",
    "sky", "water", "river", "mountain", "rock", "light", "pole", "hydrant",
    // sports / toys
    "ball", "kite", "frisbee", "teddy", "toy", "bat", "glove", "racket",
    "skateboard", "surfboard", "umbrella",
    // geometry / generic
    "object", "thing", "shape", "square", "rectangle", "circle", "triangle",
    "patch", "region", "area", "side", "part", "picture", "photo", "image",
    "background", "book", "knife", "fork", "spoon",
};

const char* kOrientation[] = {
    "left", "right", "top", "bottom", "up", "down", "upper", "lower",
    "leftmost", "rightmost",
};

const std::unordered_map<std::string, std::string>& irregular_lemmas() {
    static const std::unordered_map<std::string, std::string> table = {
        {"men", "man"},     {"women", "woman"},   {"children", "child"},
        {"people", "person"}, {"mice", "mouse"},  {"geese", "goose"},
        {"knives", "knife"}, {"ladies", "lady"},  {"feet", "foot"},
        {"teeth", "tooth"}, {"buses", "bus"},     {"boxes", "box"},
        {"dishes", "dish"}, {"dresses", "dress"}, {"babies", "baby"},
        {"kitties", "kitty"}, {"shoes", "shoe"},
    };
    return table;
}

bool ends_with(const std::string& s, const char* suffix) {
    const std::size_t n = std::char_traits<char>::length(suffix);
    return s.size() >= n && s.compare(s.size() - n, n, suffix) == 0;
}

}  // namespace

RuleBasedPhraseExtractor::RuleBasedPhraseExtractor() {
    for (const char* w : kDeterminers) determiners_.insert(w);
    for (const char* w : kAdjectives) adjectives_.insert(w);
    for (const char* w : kNouns) nouns_.insert(w);
    for (const char* w : kOrientation) orientation_.insert(w);
}

std::string RuleBasedPhraseExtractor::lemma(const std::string& token) {
    std::string t;
    t.reserve(token.size());
    for (unsigned char c : token) t.push_back(static_cast<char>(std::tolower(c)));
    auto it = irregular_lemmas().find(t);
    if (it != irregular_lemmas().end()) return it->second;
    if (t.size() > 3 && ends_with(t, "ies")) return t.substr(0, t.size() - 3) + "y";
    if (t.size() > 3 &&
        (ends_with(t, "ses") || ends_with(t, "xes") || ends_with(t, "zes") ||
         ends_with(t, "ches") || ends_with(t, "shes"))) {
        return t.substr(0, t.size() - 2);
    }
    if (t.size() > 2 && t.back() == 's' && t[t.size() - 2] != 's' &&
        t[t.size() - 2] != 'u') {
        return t.substr(0, t.size() - 1);
    }
    return t;
}

bool RuleBasedPhraseExtractor::is_noun(const std::string& token) const {
    return nouns_.count(lemma(token)) > 0;
}

bool RuleBasedPhraseExtractor::is_adjective(const std::string& token) const {
    return adjectives_.count(token) > 0;
}

bool RuleBasedPhraseExtractor::is_determiner(const std::string& token) const {
    return determiners_.count(token) > 0;
}

std::vector<RuleBasedPhraseExtractor::Chunk>
RuleBasedPhraseExtractor::chunks(const std::vector<std::string>& tokens) const {
    std::vector<Chunk> out;
    std::size_t i = 0;
    while (i < tokens.size()) {
        std::size_t start = i;
        std::size_t j = i;
        if (j < tokens.size() && is_determiner(tokens[j])) ++j;
        // adjectives; a word that is both adjective and noun counts as an
        // adjective only when a noun can still follow
        while (j < tokens.size() && is_adjective(tokens[j])) {
            if (is_noun(tokens[j]) &&
                !(j + 1 < tokens.size() &&
                  (is_noun(tokens[j + 1]) || is_adjective(tokens[j + 1])))) {
                break;
            }
            ++j;
        }
        std::size_t noun_begin = j;
        while (j < tokens.size() && is_noun(tokens[j])) ++j;
        if (j > noun_begin) {
            out.push_back({start, j, j - 1});
            i = j;
        } else {
            i = start + 1;
        }
    }
    return out;
}

std::vector<std::string>
RuleBasedPhraseExtractor::noun_phrases(const std::string& text) const {
    const std::vector<std::string> tokens = tokenize(text);
    std::vector<std::string> out;
    for (const Chunk& c : chunks(tokens)) {
        out.push_back(join_tokens(tokens, c.begin, c.end));
    }
    return out;
}

std::pair<std::string, std::vector<std::string>>
RuleBasedPhraseExtractor::subject_with_descriptors(const std::string& text) const {
    const std::vector<std::string> tokens = tokenize(text);
    std::string head;
    std::vector<std::string> descriptors;
    const std::vector<Chunk> np = chunks(tokens);
    if (!np.empty()) {
        const Chunk& c = np.front();
        head = lemma(tokens[c.head]);
        for (std::size_t i = c.begin; i < c.end; ++i) {
            if (i != c.head) descriptors.push_back(tokens[i]);
        }
        // orientation words outside the subject phrase still describe it
        // ("man to the left")
        for (std::size_t i = 0; i < tokens.size(); ++i) {
            if (i >= c.begin && i < c.end) continue;
            if (orientation_.count(tokens[i]) &&
                std::find(descriptors.begin(), descriptors.end(), tokens[i]) ==
                    descriptors.end()) {
                descriptors.push_back(tokens[i]);
            }
        }
    } else if (!tokens.empty()) {
        // fallback: last token is the head, the rest describe it
        head = lemma(tokens.back());
        descriptors.assign(tokens.begin(), tokens.end() - 1);
    }
    return {head, descriptors};
}

}  // namespace tas
