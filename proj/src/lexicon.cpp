#include "tas/lexicon.hpp"

#include <deque>
#include <limits>

namespace tas {
namespace {

struct BundledGraph {
    std::vector<std::vector<std::string>> synsets;
    std::vector<std::pair<int, int>> edges;

    int add(std::vector<std::string> members, int parent = -1) {
        synsets.push_back(std::move(members));
        int id = static_cast<int>(synsets.size()) - 1;
        if (parent >= 0) edges.emplace_back(parent, id);
        return id;
    }
};

BundledGraph bundled_graph() {
    BundledGraph g;
    int entity = g.add({"entity"});
    int living = g.add({"living", "organism"}, entity);
    int artifact = g.add({"artifact", "object", "thing"}, entity);
    int nature = g.add({"nature"}, entity);

    // people
    int person = g.add({"person", "human"}, living);
    int adult = g.add({"adult", "grownup"}, person);
    g.add({"man", "gentleman", "guy"}, adult);
    g.add({"woman", "lady"}, adult);
    int child = g.add({"child", "kid"}, person);
    g.add({"boy", "lad"}, child);
    g.add({"girl"}, child);
    g.add({"baby", "infant"}, child);
    int athlete = g.add({"athlete"}, person);
    g.add({"player"}, athlete);
    g.add({"skier"}, athlete);
    g.add({"surfer"}, athlete);
    g.add({"batter"}, athlete);
    g.add({"pitcher"}, athlete);
    g.add({"catcher"}, athlete);
    g.add({"rider"}, person);
    g.add({"driver"}, person);
    g.add({"worker"}, person);

    // animals
    int animal = g.add({"animal", "creature"}, living);
    g.add({"dog", "canine"}, animal);
    g.add({"cat", "kitty"}, animal);
    g.add({"horse"}, animal);
    g.add({"bird"}, animal);
    g.add({"cow"}, animal);
    g.add({"sheep"}, animal);
    g.add({"bear"}, animal);
    g.add({"elephant"}, animal);
    g.add({"zebra"}, animal);
    g.add({"giraffe"}, animal);
    g.add({"mouse"}, animal);
    g.add({"goose"}, animal);

    // plants
    int plant = g.add({"plant", "flora"}, living);
    g.add({"tree"}, plant);
    g.add({"grass"}, plant);
    g.add({"flower"}, plant);

    // vehicles
    int vehicle = g.add({"vehicle"}, artifact);
    g.add({"car", "auto", "automobile"}, vehicle);
    g.add({"bus"}, vehicle);
    g.add({"truck"}, vehicle);
    g.add({"train"}, vehicle);
    g.add({"bicycle", "bike"}, vehicle);
    g.add({"motorcycle"}, vehicle);
    g.add({"boat"}, vehicle);
    g.add({"airplane", "plane", "aircraft"}, vehicle);

    // furniture
    int furniture = g.add({"furniture"}, artifact);
    g.add({"chair"}, furniture);
    g.add({"couch", "sofa"}, furniture);
    g.add({"bench"}, furniture);
    g.add({"table"}, furniture);
    g.add({"desk"}, furniture);
    g.add({"bed"}, furniture);

    // containers
    int container = g.add({"container"}, artifact);
    g.add({"box"}, container);
    g.add({"bottle"}, container);
    g.add({"cup", "mug"}, container);
    g.add({"bowl"}, container);
    g.add({"plate"}, container);
    g.add({"bag", "handbag"}, container);
    g.add({"suitcase"}, container);
    g.add({"vase"}, container);
    g.add({"basket"}, container);

    // clothing
    int clothing = g.add({"clothing", "clothes"}, artifact);
    g.add({"hat", "cap"}, clothing);
    g.add({"helmet"}, clothing);
    g.add({"shirt"}, clothing);
    g.add({"jacket", "coat"}, clothing);
    g.add({"dress"}, clothing);
    g.add({"shoe"}, clothing);
    g.add({"tie"}, clothing);
    g.add({"jeans"}, clothing);
    g.add({"sweater"}, clothing);

    // devices
    int device = g.add({"device"}, artifact);
    g.add({"tv", "television"}, device);
    g.add({"laptop"}, device);
    g.add({"computer"}, device);
    g.add({"phone", "telephone"}, device);
    g.add({"keyboard"}, device);
    g.add({"remote"}, device);
    g.add({"clock"}, device);
    g.add({"camera"}, device);

    // food
    int food = g.add({"food"}, entity);
    g.add({"banana"}, food);
    g.add({"apple"}, food);
    g.add({"sandwich"}, food);
    g.add({"pizza"}, food);
    g.add({"donut", "doughnut"}, food);
    g.add({"cake"}, food);

    // structures
    int structure = g.add({"structure"}, artifact);
    g.add({"building"}, structure);
    g.add({"house", "home"}, structure);
    g.add({"wall"}, structure);
    g.add({"fence"}, structure);
    g.add({"window"}, structure);
    g.add({"door"}, structure);
    g.add({"sign"}, structure);

    // toys and sports gear
    int toy = g.add({"toy"}, artifact);
    g.add({"ball"}, toy);
    g.add({"kite"}, toy);
    g.add({"frisbee"}, toy);
    g.add({"teddy"}, toy);
    int gear = g.add({"gear", "equipment"}, artifact);
    g.add({"bat"}, gear);
    g.add({"glove"}, gear);
    g.add({"racket"}, gear);
    g.add({"skateboard"}, gear);
    g.add({"surfboard"}, gear);
    g.add({"umbrella"}, gear);

    // natural scene
    g.add({"sky"}, nature);
    g.add({"water"}, nature);
    g.add({"river"}, nature);
    g.add({"mountain"}, nature);
    g.add({"rock", "stone"}, nature);
    g.add({"field"}, nature);
    g.add({"ground", "floor"}, nature);
    int road = g.add({"road", "street"}, artifact);
    g.add({"pole"}, road);

    // geometry
    int shape = g.add({"shape"}, artifact);
    g.add({"square"}, shape);
    g.add({"rectangle"}, shape);
    g.add({"circle"}, shape);
    g.add({"triangle"}, shape);
    g.add({"patch"}, shape);

    return g;
}

}  // namespace

PathSynonymLexicon::PathSynonymLexicon() {
    BundledGraph g = bundled_graph();
    build(std::move(g.synsets), std::move(g.edges));
}

PathSynonymLexicon::PathSynonymLexicon(
    std::vector<std::vector<std::string>> synsets,
    std::vector<std::pair<int, int>> edges) {
    build(std::move(synsets), std::move(edges));
}

void PathSynonymLexicon::build(std::vector<std::vector<std::string>> synsets,
                               std::vector<std::pair<int, int>> edges) {
    adjacency_.assign(synsets.size(), {});
    for (auto [a, b] : edges) {
        adjacency_[a].push_back(b);
        adjacency_[b].push_back(a);
    }
    for (std::size_t s = 0; s < synsets.size(); ++s) {
        for (const std::string& lemma : synsets[s]) {
            senses_[lemma].push_back(static_cast<int>(s));
        }
    }
}

int PathSynonymLexicon::shortest_path(int a, int b) const {
    if (a == b) return 0;
    std::vector<int> dist(adjacency_.size(), -1);
    std::deque<int> queue{a};
    dist[a] = 0;
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        for (int v : adjacency_[u]) {
            if (dist[v] >= 0) continue;
            dist[v] = dist[u] + 1;
            if (v == b) return dist[v];
            queue.push_back(v);
        }
    }
    return -1;
}

std::optional<double> PathSynonymLexicon::path_similarity(
    const std::string& lemma_a, const std::string& lemma_b) const {
    auto ia = senses_.find(lemma_a);
    auto ib = senses_.find(lemma_b);
    if (ia == senses_.end() || ib == senses_.end()) return std::nullopt;
    double best = -1.0;
    for (int sa : ia->second) {
        for (int sb : ib->second) {
            int d = shortest_path(sa, sb);
            if (d < 0) continue;
            best = std::max(best, 1.0 / (1.0 + d));
        }
    }
    if (best < 0.0) return std::nullopt;
    return best;
}

}  // namespace tas
