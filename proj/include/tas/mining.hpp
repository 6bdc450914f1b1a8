#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tas/backends.hpp"
#include "tas/query.hpp"

namespace tas {

// Distractor noun phrases mined from the overall image caption, minus
// anything synonymous with the query subject.
struct NegativePhraseSet {
    std::vector<std::string> phrases;
    std::string source_caption;
    std::vector<std::pair<std::string, std::string>> pruned;  // (phrase, reason)
};

ReferringQuery parse_query(const std::string& raw_text,
                           const PhraseExtractorInterface& extractor);

// Keep each caption noun phrase unless its head lemma equals the subject
// head or their path similarity reaches the threshold. Duplicate phrases
// (case-insensitive, leading article stripped) collapse to the first
// occurrence. Unknown lemmas count as similarity 0.
NegativePhraseSet mine_negatives(const std::string& overall_caption,
                                 const ReferringQuery& query,
                                 const PhraseExtractorInterface& extractor,
                                 const SynonymLexiconInterface& lexicon,
                                 double threshold);

}  // namespace tas
