#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "tas/backends.hpp"

namespace tas {

// Small bundled synset graph over common object nouns. Synsets hold lemma
// members; undirected edges are hypernym links. Path similarity is
// 1/(1+d) with d the shortest path between synsets, maximized over all
// sense pairs of the two lemmas.
class PathSynonymLexicon : public SynonymLexiconInterface {
public:
    // Bundled English graph.
    PathSynonymLexicon();

    // Custom graph: each synset is a lemma list; edges index into synsets.
    PathSynonymLexicon(std::vector<std::vector<std::string>> synsets,
                       std::vector<std::pair<int, int>> edges);

    std::optional<double> path_similarity(const std::string& lemma_a,
                                           const std::string& lemma_b) const override;

private:
    void build(std::vector<std::vector<std::string>> synsets,
               std::vector<std::pair<int, int>> edges);
    int shortest_path(int a, int b) const;  // -1 when disconnected

    std::vector<std::vector<int>> adjacency_;
    std::unordered_map<std::string, std::vector<int>> senses_;  // lemma -> synsets
};

}  // namespace tas
