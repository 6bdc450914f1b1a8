#include "tas/rectifier.hpp"

#include <algorithm>

namespace tas {

OrientationVocab default_orientation_vocab() {
    return {
        {"left", Orientation::left()},      {"leftmost", Orientation::left()},
        {"right", Orientation::right()},    {"rightmost", Orientation::right()},
        {"top", Orientation::top()},        {"up", Orientation::top()},
        {"upper", Orientation::top()},      {"bottom", Orientation::bottom()},
        {"lower", Orientation::bottom()},   {"down", Orientation::bottom()},
    };
}

std::optional<Orientation> detect_orientation(const ReferringQuery& query,
                                              const OrientationVocab& vocab) {
    for (const std::string& word : query.descriptors) {
        auto it = vocab.find(word);
        if (it != vocab.end()) return it->second;
    }
    return std::nullopt;
}

std::vector<int> rectify(const std::vector<MaskProposal>& proposals,
                         Orientation orientation) {
    const std::size_t k = proposals.size();
    std::vector<std::size_t> order(k);
    for (std::size_t i = 0; i < k; ++i) order[i] = i;
    auto coord = [&](std::size_t i) {
        return orientation.axis == Axis::horizontal ? proposals[i].centroid.x
                                                    : proposals[i].centroid.y;
    };
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (coord(a) != coord(b)) return coord(a) < coord(b);
        return proposals[a].proposal_id < proposals[b].proposal_id;
    });
    const std::size_t half = (k + 1) / 2;  // ceil(K/2)
    std::vector<int> kept;
    kept.reserve(half);
    if (orientation.side == Side::low) {
        for (std::size_t i = 0; i < half; ++i)
            kept.push_back(proposals[order[i]].proposal_id);
    } else {
        for (std::size_t i = k - half; i < k; ++i)
            kept.push_back(proposals[order[i]].proposal_id);
    }
    std::sort(kept.begin(), kept.end());
    return kept;
}

}  // namespace tas
