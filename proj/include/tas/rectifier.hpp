#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tas/image.hpp"
#include "tas/query.hpp"

namespace tas {

enum class Axis { horizontal, vertical };
enum class Side { low, high };

// left=(horizontal,low), right=(horizontal,high),
// top/up=(vertical,low), bottom/down=(vertical,high)
struct Orientation {
    Axis axis = Axis::horizontal;
    Side side = Side::low;

    bool operator==(const Orientation&) const = default;

    static Orientation left() { return {Axis::horizontal, Side::low}; }
    static Orientation right() { return {Axis::horizontal, Side::high}; }
    static Orientation top() { return {Axis::vertical, Side::low}; }
    static Orientation bottom() { return {Axis::vertical, Side::high}; }
};

using OrientationVocab = std::map<std::string, Orientation>;

// left/leftmost, right/rightmost, top/up/upper, bottom/lower/down.
OrientationVocab default_orientation_vocab();

// First descriptor (in token order) present in the vocab; the head is never
// scanned.
std::optional<Orientation> detect_orientation(const ReferringQuery& query,
                                              const OrientationVocab& vocab);

// Rank-split over centroids on the orientation axis: keep the first
// ceil(K/2) ids for side=low, the last ceil(K/2) for side=high. Rank ties
// break by proposal_id. Never empty.
std::vector<int> rectify(const std::vector<MaskProposal>& proposals,
                         Orientation orientation);

}  // namespace tas
