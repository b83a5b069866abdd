#include <doctest.h>

#include <set>
#include <string>
#include <vector>

#include "evaudit/masking.hpp"
#include "evaudit/protocol.hpp"
#include "generators.hpp"

using namespace evaudit;

namespace {

// Independent rule: every byte trains except response interiors, and inside
// a response the content bytes of items cited by the following step train
// again. Expressed as a per-byte bitmap rather than span arithmetic.
std::vector<char> train_bitmap_oracle(const Trajectory& t) {
    std::vector<char> train(t.raw_text->size(), 1);
    for (std::size_t i = 0; i < t.steps.size(); ++i) {
        const Step& s = t.steps[i];
        if (!s.tool_response || !s.tool_response->span.valid()) continue;
        const ProxyResponse& resp = *s.tool_response;
        for (std::size_t b = resp.span.begin; b < resp.span.end; ++b) {
            train[b] = 0;
        }
        if (i + 1 >= t.steps.size()) continue;
        const Step& next = t.steps[i + 1];
        if (!next.contract || !next.contract->refs) continue;
        std::set<int> cited(next.contract->refs->begin(),
                            next.contract->refs->end());
        for (const auto& item : resp.items) {
            if (!cited.count(item.id) || !item.content_span.valid()) continue;
            for (std::size_t b = item.content_span.begin;
                 b < item.content_span.end; ++b) {
                train[b] = 1;
            }
        }
    }
    return train;
}

std::vector<char> expand(const std::vector<MaskSpan>& spans,
                         std::size_t size) {
    std::vector<char> train(size, 2);  // 2 = never written, catches gaps
    for (const auto& s : spans) {
        for (std::size_t b = s.begin; b < s.end; ++b) {
            train[b] = s.train ? 1 : 0;
        }
    }
    return train;
}

void check_partition(const std::vector<MaskSpan>& spans, std::size_t size) {
    REQUIRE(!spans.empty());
    CHECK(spans.front().begin == 0);
    CHECK(spans.back().end == size);
    for (std::size_t i = 0; i < spans.size(); ++i) {
        CHECK(spans[i].begin < spans[i].end);
        if (i > 0) {
            CHECK(spans[i].begin == spans[i - 1].end);  // no gap, no overlap
            CHECK(spans[i].train != spans[i - 1].train);  // coalesced
        }
    }
}

const std::string kTwoStep =
    "<think>starting out.</think>\n"
    "<tool_call>{\"tool\": \"web_search\", \"arguments\": {\"query\": "
    "\"velqor origins\"}}</tool_call>\n"
    "<tool_response>\n"
    "<ref_item id=\"1\" source=\"web_search\" granularity=\"page\">first "
    "body.</ref_item>\n"
    "<ref_item id=\"2\" source=\"web_search\" granularity=\"page\">second "
    "body.</ref_item>\n"
    "</tool_response>\n"
    "<think><helpful>yes</helpful> <ref>2</ref> that settles it.</think>\n"
    "<answer>the amber ledger</answer>\n";

}  // namespace

TEST_SUITE("masking") {

TEST_CASE("a cited item's content is the only trained part of a response") {
    auto t = parse_trajectory(kTwoStep, "velqor");
    const auto& resp = *t.steps[0].tool_response;
    const auto& cited = *resp.find(2);

    std::vector<MaskSpan> want = {
        {0, resp.span.begin, true},
        {resp.span.begin, cited.content_span.begin, false},
        {cited.content_span.begin, cited.content_span.end, true},
        {cited.content_span.end, resp.span.end, false},
        {resp.span.end, t.raw_text->size(), true},
    };
    CHECK(compute_masks(t) == want);

    // the trained middle span is exactly the cited text
    CHECK(t.raw_text->substr(cited.content_span.begin,
                             cited.content_span.size()) == "second body.");
}

TEST_CASE("uncited responses are masked end to end") {
    auto no_refs = kTwoStep;
    auto pos = no_refs.find("<helpful>yes</helpful> <ref>2</ref>");
    REQUIRE(pos != std::string::npos);
    no_refs.replace(pos, 35, "<helpful>no</helpful> <ref>null</ref>");

    auto t = parse_trajectory(no_refs, "velqor");
    const auto& resp = *t.steps[0].tool_response;
    std::vector<MaskSpan> want = {
        {0, resp.span.begin, true},
        {resp.span.begin, resp.span.end, false},
        {resp.span.end, t.raw_text->size(), true},
    };
    CHECK(compute_masks(t) == want);
}

TEST_CASE("citing every item re-opens each content span") {
    std::string raw = kTwoStep;
    auto pos = raw.find("<ref>2</ref>");
    raw.replace(pos, 12, "<ref>1, 2</ref>");
    auto t = parse_trajectory(raw, "velqor");
    auto spans = compute_masks(t);
    check_partition(spans, t.raw_text->size());
    CHECK(expand(spans, t.raw_text->size()) == train_bitmap_oracle(t));
    // two holes -> the response region alternates mask/train twice
    int trained_inside = 0;
    const auto& resp = *t.steps[0].tool_response;
    for (const auto& s : spans) {
        if (s.train && s.begin >= resp.span.begin && s.end <= resp.span.end) {
            ++trained_inside;
        }
    }
    CHECK(trained_inside == 2);
}

TEST_CASE("a declared id with no matching item opens no hole") {
    std::string raw = kTwoStep;
    auto pos = raw.find("<ref>2</ref>");
    raw.replace(pos, 12, "<ref>9</ref>");
    auto t = parse_trajectory(raw, "velqor");
    const auto& resp = *t.steps[0].tool_response;
    std::vector<MaskSpan> want = {
        {0, resp.span.begin, true},
        {resp.span.begin, resp.span.end, false},
        {resp.span.end, t.raw_text->size(), true},
    };
    // verdict checks would reject this rollout; the mask rule is indifferent
    CHECK(compute_masks(t) == want);
}

TEST_CASE("masks require the original byte offsets") {
    auto t = parse_trajectory(kTwoStep, "velqor");
    t.raw_text.reset();
    CHECK_THROWS_AS(compute_masks(t), MissingOffsets);

    auto built = fixtures::random_valid_trajectory(11).trajectory;
    built.raw_text.reset();
    CHECK_THROWS_AS(compute_masks(built), MissingOffsets);
}

TEST_CASE("spans tile the raw text and match the per-byte rule") {
    for (std::uint64_t seed = 500; seed < 560; ++seed) {
        auto built = fixtures::random_valid_trajectory(seed);
        const auto& t = built.trajectory;
        REQUIRE(t.raw_text.has_value());
        auto spans = compute_masks(t);
        check_partition(spans, t.raw_text->size());
        CHECK(expand(spans, t.raw_text->size()) == train_bitmap_oracle(t));
    }
}

TEST_CASE("single-step rollouts train every byte") {
    auto built = fixtures::t1_fixture(4);  // has a response, no step 2
    const auto& t = built.trajectory;
    REQUIRE(t.raw_text.has_value());
    REQUIRE(t.steps.size() == 1);
    REQUIRE(t.steps[0].tool_response.has_value());
    auto spans = compute_masks(t);
    check_partition(spans, t.raw_text->size());
    // no following step ever cites it, so the response span stays masked
    // but everything outside it trains
    const auto& resp = *t.steps[0].tool_response;
    std::vector<MaskSpan> want = {
        {0, resp.span.begin, true},
        {resp.span.begin, resp.span.end, false},
        {resp.span.end, t.raw_text->size(), true},
    };
    CHECK(spans == want);
}

}  // TEST_SUITE
