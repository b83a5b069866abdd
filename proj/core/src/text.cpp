#include "evaudit/text.hpp"

#include <cctype>

namespace evaudit {

namespace {

bool is_token_char(unsigned char c) { return std::isalnum(c) != 0; }

char lower(unsigned char c) { return static_cast<char>(std::tolower(c)); }

}  // namespace

std::vector<std::string> tokenize(std::string_view s) {
    std::vector<std::string> out;
    std::string cur;
    for (unsigned char c : s) {
        if (is_token_char(c)) {
            cur.push_back(lower(c));
        } else if (!cur.empty()) {
            out.push_back(std::move(cur));
            cur.clear();
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

std::set<std::string> token_set(std::string_view s) {
    auto toks = tokenize(s);
    return {toks.begin(), toks.end()};
}

double term_overlap(const std::set<std::string>& query_tokens,
                    std::string_view body) {
    if (query_tokens.empty()) return 0.0;
    const auto body_tokens = token_set(body);
    std::size_t hits = 0;
    for (const auto& t : query_tokens) {
        if (body_tokens.count(t)) ++hits;
    }
    return static_cast<double>(hits) /
           static_cast<double>(query_tokens.size());
}

std::vector<std::string> normalize_answer_tokens(std::string_view s) {
    auto toks = tokenize(s);
    std::vector<std::string> out;
    out.reserve(toks.size());
    for (auto& t : toks) {
        if (t == "a" || t == "an" || t == "the") continue;
        out.push_back(std::move(t));
    }
    return out;
}

std::vector<Range> sentence_ranges(std::string_view body) {
    std::vector<Range> out;
    std::size_t start = 0;
    std::size_t i = 0;
    const std::size_t n = body.size();
    while (i < n) {
        const char c = body[i];
        if (c == '.' || c == '!' || c == '?') {
            ++i;
            while (i < n && (body[i] == '.' || body[i] == '!' ||
                             body[i] == '?' || body[i] == '"' ||
                             body[i] == '\'' || body[i] == ')')) {
                ++i;
            }
            while (i < n && std::isspace(static_cast<unsigned char>(body[i]))) {
                ++i;
            }
            out.push_back({start, i});
            start = i;
        } else {
            ++i;
        }
    }
    if (start < n) out.push_back({start, n});
    return out;
}

}  // namespace evaudit
