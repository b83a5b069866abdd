#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace evaudit {

// Lowercase alphanumeric token runs, in order of appearance.
std::vector<std::string> tokenize(std::string_view s);

// Deduplicated token set.
std::set<std::string> token_set(std::string_view s);

// |query_tokens ∩ tokens(body)| / |query_tokens|, 0 when the query has no
// tokens. The shared lexical-overlap measure used by the mock proxies and
// the stub helpfulness oracle.
double term_overlap(const std::set<std::string>& query_tokens,
                    std::string_view body);

// Answer normalization for token-level F1: lowercase, strip punctuation,
// drop the articles a/an/the, collapse whitespace.
std::vector<std::string> normalize_answer_tokens(std::string_view s);

// Half-open [begin, end) byte ranges of sentences, split after . ! ?
// (consuming any run of closing punctuation plus trailing whitespace).
// The ranges tile the input exactly, so slices are verbatim substrings.
struct Range {
    std::size_t begin = 0;
    std::size_t end = 0;
};
std::vector<Range> sentence_ranges(std::string_view body);

}  // namespace evaudit
