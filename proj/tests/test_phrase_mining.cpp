#include <doctest.h>

#include <random>

#include "tas/chunker.hpp"
#include "tas/lexicon.hpp"
#include "tas/mining.hpp"
#include "tas/text_util.hpp"
#include "support.hpp"

using namespace tas;

namespace {
RuleBasedPhraseExtractor extractor;
PathSynonymLexicon lexicon;
}  // namespace

TEST_CASE("parse_query: the left cat") {
    ReferringQuery q = parse_query("the left cat", extractor);
    CHECK(q.subject_head == "cat");
    CHECK(q.descriptors == std::vector<std::string>{"the", "left"});
}

TEST_CASE("parse_query: bare noun") {
    ReferringQuery q = parse_query("cat", extractor);
    CHECK(q.subject_head == "cat");
    CHECK(q.descriptors.empty());
}

TEST_CASE("parse_query: man to the left carries the orientation word") {
    ReferringQuery q = parse_query("man to the left", extractor);
    CHECK(q.subject_head == "man");
    CHECK(std::find(q.descriptors.begin(), q.descriptors.end(), "left") !=
          q.descriptors.end());
}

TEST_CASE("parse_query falls back to the last token") {
    ReferringQuery q = parse_query("glorp flibber", extractor);
    CHECK(q.subject_head == "flibber");
    CHECK(q.descriptors == std::vector<std::string>{"glorp"});
}

TEST_CASE("noun phrases are contiguous substrings") {
    auto phrases = extractor.noun_phrases("a man riding a horse next to a dog");
    CHECK(phrases == std::vector<std::string>{"a man", "a horse", "a dog"});
}

TEST_CASE("lemma handles plurals and irregulars") {
    CHECK(RuleBasedPhraseExtractor::lemma("Cats") == "cat");
    CHECK(RuleBasedPhraseExtractor::lemma("men") == "man");
    CHECK(RuleBasedPhraseExtractor::lemma("boxes") == "box");
    CHECK(RuleBasedPhraseExtractor::lemma("ladies") == "lady");
    CHECK(RuleBasedPhraseExtractor::lemma("grass") == "grass");
}

TEST_CASE("lexicon path similarity is symmetric and 1 on itself") {
    CHECK(lexicon.path_similarity("dog", "dog") == doctest::Approx(1.0));
    auto ab = lexicon.path_similarity("dog", "cat");
    auto ba = lexicon.path_similarity("cat", "dog");
    REQUIRE(ab);
    REQUIRE(ba);
    CHECK(*ab == doctest::Approx(*ba));
    CHECK(*ab > 0.0);
    CHECK(*ab < 1.0);
    CHECK(!lexicon.path_similarity("dog", "zzyx"));
}

TEST_CASE("same-synset members score 1") {
    CHECK(lexicon.path_similarity("couch", "sofa") == doctest::Approx(1.0));
    CHECK(lexicon.path_similarity("man", "guy") == doctest::Approx(1.0));
}

TEST_CASE("mine_negatives prunes the subject, keeps distractors") {
    ReferringQuery q = parse_query("the man", extractor);
    NegativePhraseSet t = mine_negatives("a man riding a horse next to a dog", q,
                                         extractor, lexicon, 0.9);
    CHECK(t.phrases == std::vector<std::string>{"a horse", "a dog"});
    REQUIRE(t.pruned.size() == 1);
    CHECK(t.pruned[0].first == "a man");
}

TEST_CASE("caption with no noun phrases yields an empty set") {
    ReferringQuery q = parse_query("the cat", extractor);
    NegativePhraseSet t =
        mine_negatives("running quickly", q, extractor, lexicon, 0.9);
    CHECK(t.phrases.empty());
    CHECK(t.pruned.empty());
}

TEST_CASE("young man is retained for the query head boy") {
    ReferringQuery q = parse_query("the boy", extractor);
    NegativePhraseSet t = mine_negatives("a young man holding a frisbee", q,
                                         extractor, lexicon, 0.9);
    REQUIRE(t.phrases.size() == 2);
    CHECK(t.phrases[0] == "a young man");
    CHECK(t.phrases[1] == "a frisbee");
}

TEST_CASE("articles do not create duplicate distractors") {
    ReferringQuery q = parse_query("the man", extractor);
    NegativePhraseSet t = mine_negatives("a dog chasing the dog", q, extractor,
                                         lexicon, 0.9);
    CHECK(t.phrases == std::vector<std::string>{"a dog"});
}

TEST_CASE("unknown head lemmas are retained") {
    ReferringQuery q = parse_query("the man", extractor);
    // "picture" is in the chunker's noun list but absent from the lexicon
    CHECK(!lexicon.path_similarity("picture", "man"));
    NegativePhraseSet t =
        mine_negatives("a picture on a wall", q, extractor, lexicon, 0.9);
    CHECK(t.phrases == std::vector<std::string>{"a picture", "a wall"});
}

TEST_CASE("exact head match is pruned even without lexicon coverage") {
    ReferringQuery q;
    q.raw_text = "the zorgon";
    q.subject_head = "zorgon";
    struct OneNoun : PhraseExtractorInterface {
        std::vector<std::string> noun_phrases(const std::string&) const override {
            return {"a zorgon", "a dog"};
        }
        std::pair<std::string, std::vector<std::string>>
        subject_with_descriptors(const std::string& text) const override {
            return {RuleBasedPhraseExtractor::lemma(tokenize(text).back()), {}};
        }
    } one;
    NegativePhraseSet t = mine_negatives("ignored", q, one, lexicon, 0.9);
    CHECK(t.phrases == std::vector<std::string>{"a dog"});
}

TEST_CASE("threshold out of range is rejected") {
    ReferringQuery q = parse_query("the man", extractor);
    CHECK_THROWS_AS(mine_negatives("a dog", q, extractor, lexicon, 0.0), ConfigError);
    CHECK_THROWS_AS(mine_negatives("a dog", q, extractor, lexicon, 1.5), ConfigError);
}

TEST_CASE("pruning is monotone in the threshold over random lexicon graphs") {
    std::mt19937 rng(11);
    const std::vector<std::string> vocab = {"man", "dog", "cat", "horse", "car",
                                            "tree", "chair", "boy"};
    for (int trial = 0; trial < 100; ++trial) {
        // random synset graph over the vocabulary
        std::uniform_int_distribution<int> nsyn(2, 6);
        const int k = nsyn(rng);
        std::vector<std::vector<std::string>> synsets(k);
        std::uniform_int_distribution<int> syn(0, k - 1);
        for (const std::string& w : vocab) synsets[syn(rng)].push_back(w);
        std::vector<std::pair<int, int>> edges;
        for (int i = 1; i < k; ++i) edges.emplace_back(std::uniform_int_distribution<int>(0, i - 1)(rng), i);
        PathSynonymLexicon random_lex(synsets, edges);

        ReferringQuery q = parse_query("the man", extractor);
        const std::string caption =
            "a dog and a cat and a horse and a car and a tree and a chair and a boy";
        std::size_t prev = 0;
        for (double threshold : {0.2, 0.4, 0.6, 0.8, 1.0}) {
            std::size_t n =
                mine_negatives(caption, q, extractor, random_lex, threshold)
                    .phrases.size();
            REQUIRE(n >= prev);
            prev = n;
        }
    }
}

TEST_CASE("negatives never contain the subject head") {
    std::mt19937 rng(13);
    const std::vector<std::string> captions = {
        "a man and a dog", "the dog near the man", "a man a man a man",
        "a horse and a man riding"};
    for (const std::string& caption : captions) {
        ReferringQuery q = parse_query("the man", extractor);
        NegativePhraseSet t = mine_negatives(caption, q, extractor, lexicon, 0.9);
        for (const std::string& phrase : t.phrases) {
            auto toks = tokenize(phrase);
            CHECK(RuleBasedPhraseExtractor::lemma(toks.back()) != "man");
        }
    }
}
