#include "tas/mining.hpp"

#include <unordered_set>

#include "tas/chunker.hpp"
#include "tas/errors.hpp"
#include "tas/text_util.hpp"

namespace tas {
namespace {

// "a dog" and "the dog" are one distractor
std::string dedup_key(const std::string& phrase) {
    std::vector<std::string> tokens = tokenize(phrase);
    std::size_t begin = 0;
    if (tokens.size() > 1 &&
        (tokens[0] == "a" || tokens[0] == "an" || tokens[0] == "the")) {
        begin = 1;
    }
    return join_tokens(tokens, begin, tokens.size());
}

}  // namespace

ReferringQuery parse_query(const std::string& raw_text,
                           const PhraseExtractorInterface& extractor) {
    ReferringQuery q;
    q.raw_text = raw_text;
    auto [head, descriptors] = extractor.subject_with_descriptors(raw_text);
    q.subject_head = head;
    q.descriptors = std::move(descriptors);
    return q;
}

NegativePhraseSet mine_negatives(const std::string& overall_caption,
                                 const ReferringQuery& query,
                                 const PhraseExtractorInterface& extractor,
                                 const SynonymLexiconInterface& lexicon,
                                 double threshold) {
    if (threshold <= 0.0 || threshold > 1.0) {
        throw ConfigError("mine_negatives: threshold must be in (0, 1]");
    }
    NegativePhraseSet out;
    out.source_caption = overall_caption;
    std::unordered_set<std::string> seen;
    for (const std::string& phrase : extractor.noun_phrases(overall_caption)) {
        const std::string key = dedup_key(phrase);
        if (!seen.insert(key).second) continue;
        std::string head = extractor.subject_with_descriptors(phrase).first;
        if (head.empty()) {
            std::vector<std::string> tokens = tokenize(phrase);
            if (!tokens.empty()) head = RuleBasedPhraseExtractor::lemma(tokens.back());
        }
        if (head == query.subject_head) {
            out.pruned.emplace_back(phrase, "head lemma equals query subject");
            continue;
        }
        auto sim = lexicon.path_similarity(head, query.subject_head);
        if (sim && *sim >= threshold) {
            out.pruned.emplace_back(
                phrase, "path similarity " + std::to_string(*sim) + " >= threshold");
            continue;
        }
        out.phrases.push_back(phrase);
    }
    return out;
}

}  // namespace tas
