#pragma once

#include <string>
#include <vector>

namespace tas {

// Lowercase, non-alphanumerics collapsed to single spaces, trimmed.
std::string normalize_text(const std::string& text);

// Tokens of normalize_text(text).
std::vector<std::string> tokenize(const std::string& text);

// Join tokens with single spaces.
std::string join_tokens(const std::vector<std::string>& tokens,
                        std::size_t begin, std::size_t end);

}  // namespace tas
