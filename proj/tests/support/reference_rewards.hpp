#pragma once

// A from-scratch reimplementation of the whole scoring pipeline, used only
// to cross-check the production code. It shares the data model, the stub
// oracle objects, and the perturber's replacement data; every rule,
// normalization, and random draw is re-derived here from the documented
// contracts rather than calling into the library's scoring code.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "evaudit/oracles.hpp"
#include "evaudit/perturbation.hpp"
#include "evaudit/protocol.hpp"

namespace refscore {

// ---- pinned randomness, rewritten from the published recipes ----

inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

inline std::uint64_t pick64(std::uint64_t raw, std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(raw) * n) >> 64);
}

inline std::uint64_t step_seed(std::uint64_t run_seed, int step_index) {
    return mix64(run_seed ^ (static_cast<std::uint64_t>(step_index) *
                             0x9E3779B97F4A7C15ULL));
}

// First k of a seeded Fisher-Yates pass over [0, n), selection order kept.
inline std::vector<std::size_t> prefix_sample(std::size_t n, std::size_t k,
                                              std::uint64_t seed) {
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    std::mt19937_64 eng(seed);
    if (k > n) k = n;
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j =
            i + static_cast<std::size_t>(pick64(eng(), n - i));
        std::swap(idx[i], idx[j]);
    }
    idx.resize(k);
    return idx;
}

// ---- step checks ----

struct Verdict {
    bool parse = false;
    bool consistent = false;
    bool resolvable = false;

    bool pass() const { return parse && consistent && resolvable; }
};

inline bool well_formed_refs(const std::vector<int>& ids) {
    if (ids.empty()) return false;
    std::set<int> seen;
    for (int id : ids) {
        if (id < 1) return false;
        if (!seen.insert(id).second) return false;
    }
    return true;
}

inline Verdict judge_step(const evaudit::Step& s,
                          const evaudit::ProxyResponse* prior) {
    Verdict v;
    v.parse = s.defects.empty() && !(s.index >= 2 && !s.contract) &&
              !(s.contract && s.contract->refs &&
                !well_formed_refs(*s.contract->refs)) &&
              !(s.tool_response && !s.tool_call);
    v.consistent = s.contract &&
                   ((s.contract->helpful == evaudit::Helpful::yes) ==
                    s.contract->refs.has_value());
    if (!s.contract || !s.contract->refs || s.contract->refs->empty()) {
        v.resolvable = true;
    } else if (prior == nullptr) {
        v.resolvable = false;
    } else {
        v.resolvable = true;
        for (int id : *s.contract->refs) {
            bool found = false;
            for (const auto& item : prior->items) {
                if (item.id == id) {
                    found = true;
                    break;
                }
            }
            if (!found) {
                v.resolvable = false;
                break;
            }
        }
    }
    return v;
}

inline bool format_ok(const evaudit::Trajectory& t) {
    if (!t.defects.empty()) return false;
    if (t.steps.empty()) return false;
    if (!t.answer) return false;
    for (const auto& s : t.steps) {
        if (!s.defects.empty()) return false;
        if (s.index >= 2 && !s.contract) return false;
        if (s.contract && s.contract->refs &&
            !well_formed_refs(*s.contract->refs)) {
            return false;
        }
        if (s.tool_response && !s.tool_call) return false;
    }
    return true;
}

// ---- answer normalization and token F1, rewritten ----

inline std::vector<std::string> answer_tokens(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    auto flush = [&] {
        if (!cur.empty() && cur != "a" && cur != "an" && cur != "the") {
            out.push_back(cur);
        }
        cur.clear();
    };
    for (unsigned char c : s) {
        if (std::isalnum(c)) {
            cur.push_back(static_cast<char>(std::tolower(c)));
        } else {
            flush();
        }
    }
    flush();
    return out;
}

inline double f1(const std::string& pred, const std::string& gold) {
    auto p = answer_tokens(pred);
    auto g = answer_tokens(gold);
    if (p.empty()) return 0.0;
    std::multiset<std::string> bag(g.begin(), g.end());
    int common = 0;
    for (const auto& tok : p) {
        auto it = bag.find(tok);
        if (it != bag.end()) {
            bag.erase(it);
            ++common;
        }
    }
    if (common == 0) return 0.0;
    return 2.0 * common / static_cast<double>(p.size() + g.size());
}

// ---- the pipeline ----

struct Result {
    bool format_valid = false;
    double cite = 0.0;
    std::optional<double> pt;
    double accuracy = 0.0;
    double answer_f1 = 0.0;
    double answer_score = 0.0;
    double final_reward = -1.0;
};

inline Result score(const evaudit::Trajectory& t, const std::string& gold,
                    evaudit::HelpfulnessOracle& oracle, evaudit::Judge& judge,
                    int b_max, std::uint64_t seed) {
    using evaudit::Helpful;
    Result out;
    const int T = static_cast<int>(t.steps.size());

    std::vector<Verdict> verdicts;
    verdicts.reserve(t.steps.size());
    for (int i = 0; i < T; ++i) {
        const evaudit::ProxyResponse* prior = nullptr;
        if (i > 0 && t.steps[static_cast<std::size_t>(i - 1)].tool_response) {
            prior = &*t.steps[static_cast<std::size_t>(i - 1)].tool_response;
        }
        verdicts.push_back(
            judge_step(t.steps[static_cast<std::size_t>(i)], prior));
    }

    out.format_valid = format_ok(t);

    if (T > 1) {
        double sum = 0.0;
        for (int i = 1; i < T; ++i) {
            sum += verdicts[static_cast<std::size_t>(i)].pass() ? 1.0 : -1.0;
        }
        out.cite = sum / static_cast<double>(T - 1);
    }

    std::vector<int> passing;  // 1-based indices of passing steps from 2 on
    for (int i = 1; i < T; ++i) {
        if (verdicts[static_cast<std::size_t>(i)].pass()) {
            passing.push_back(i + 1);
        }
    }
    const int budget = std::min(std::min(T - 1, b_max),
                                static_cast<int>(passing.size()));
    std::vector<int> chosen;
    if (budget > 0) {
        for (std::size_t pos : prefix_sample(
                 passing.size(), static_cast<std::size_t>(budget), seed)) {
            chosen.push_back(passing[pos]);
        }
    }

    const auto& pool = evaudit::SnippetPoolPerturber::snippet_pool();
    std::vector<double> values;
    for (int idx : chosen) {
        const auto& step = t.steps[static_cast<std::size_t>(idx - 1)];
        const auto& prev = t.steps[static_cast<std::size_t>(idx - 2)];
        if (!prev.tool_response) continue;
        auto items = prev.tool_response->items;
        const bool cited = step.contract && step.contract->refs.has_value();
        if (!cited && items.empty()) continue;

        const double before = oracle.score(t.query, items);
        std::mt19937_64 g(step_seed(seed, idx));
        if (cited) {
            for (int id : *step.contract->refs) {
                const std::uint64_t draw = g();
                for (auto& item : items) {
                    if (item.id == id) {
                        item.content = pool[pick64(draw, pool.size())];
                        break;
                    }
                }
            }
        } else {
            const std::size_t slot =
                static_cast<std::size_t>(pick64(g(), items.size()));
            items[slot].content =
                evaudit::SnippetPoolPerturber::lure_text(t.query);
        }
        const double after = oracle.score(t.query, items);
        values.push_back((cited ? -1.0 : 1.0) * (after - before));
    }
    if (!values.empty()) {
        double sum = 0.0;
        for (double v : values) sum += v;
        out.pt = sum / static_cast<double>(values.size());
    }

    bool any_pass = false;
    for (int i = 1; i < T; ++i) {
        if (verdicts[static_cast<std::size_t>(i)].pass()) {
            any_pass = true;
            break;
        }
    }
    if (T > 1 && any_pass && t.answer) {
        std::vector<evaudit::ReferenceItem> evidence;
        std::set<std::tuple<evaudit::Source, int, std::string>> seen;
        for (int i = 1; i < T; ++i) {
            const auto& s = t.steps[static_cast<std::size_t>(i)];
            if (!verdicts[static_cast<std::size_t>(i)].pass()) continue;
            if (!s.contract || s.contract->helpful != Helpful::yes ||
                !s.contract->refs) {
                continue;
            }
            const auto& prev = t.steps[static_cast<std::size_t>(i - 1)];
            if (!prev.tool_response) continue;
            for (int id : *s.contract->refs) {
                for (const auto& item : prev.tool_response->items) {
                    if (item.id != id) continue;
                    if (seen.insert({item.source, item.id, item.content})
                            .second) {
                        evidence.push_back(item);
                    }
                    break;
                }
            }
        }
        out.accuracy = judge.score(t.query, *t.answer, evidence);
    }
    if (t.answer) out.answer_f1 = f1(*t.answer, gold);
    out.answer_score = (out.accuracy + out.answer_f1) / 2.0;
    out.final_reward =
        out.format_valid
            ? (out.cite + (out.pt ? *out.pt : 0.0) + out.answer_score) / 3.0
            : -1.0;
    return out;
}

}  // namespace refscore
