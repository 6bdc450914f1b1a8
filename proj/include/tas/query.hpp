#pragma once

#include <string>
#include <vector>

namespace tas {

// A referring expression with its parsed subject head and descriptor words.
struct ReferringQuery {
    std::string raw_text;
    std::string subject_head;              // lowercase lemma
    std::vector<std::string> descriptors;  // modifiers of the subject, in token order

    bool operator==(const ReferringQuery&) const = default;
};

}  // namespace tas
