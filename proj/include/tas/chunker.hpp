#pragma once

#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "tas/backends.hpp"

namespace tas {

// POS-lexicon noun-phrase chunker over a bundled English word-class list.
// Grammar: determiner? adjective* noun+. Keeps the core testable with zero
// model downloads; a spacy-backed adapter can replace it via config.
class RuleBasedPhraseExtractor : public PhraseExtractorInterface {
public:
    RuleBasedPhraseExtractor();

    std::vector<std::string> noun_phrases(const std::string& text) const override;
    std::pair<std::string, std::vector<std::string>>
    subject_with_descriptors(const std::string& text) const override;

    // Singular lowercase lemma: irregular table first, then suffix rules.
    static std::string lemma(const std::string& token);

    bool is_noun(const std::string& token) const;
    bool is_adjective(const std::string& token) const;
    bool is_determiner(const std::string& token) const;

private:
    struct Chunk {
        std::size_t begin = 0;   // token index
        std::size_t end = 0;     // one past last
        std::size_t head = 0;    // index of head noun (last noun)
    };
    std::vector<Chunk> chunks(const std::vector<std::string>& tokens) const;

    std::unordered_set<std::string> determiners_;
    std::unordered_set<std::string> adjectives_;
    std::unordered_set<std::string> nouns_;       // lemma forms
    std::unordered_set<std::string> orientation_;
};

}  // namespace tas
