#include "evaudit/masking.hpp"

#include <algorithm>

namespace evaudit {

std::vector<MaskSpan> compute_masks(const Trajectory& t) {
    if (!t.raw_text) {
        throw MissingOffsets("trajectory carries no raw text");
    }
    std::size_t total = t.raw_text->size();

    // Masked regions: each response's outer span minus the content spans of
    // items cited by the following step.
    struct Hole {
        std::size_t begin, end;
    };
    std::vector<MaskSpan> masked;
    for (std::size_t i = 0; i < t.steps.size(); ++i) {
        const Step& s = t.steps[i];
        if (!s.tool_response || !s.tool_response->span.valid()) continue;
        const ProxyResponse& resp = *s.tool_response;

        std::vector<Hole> holes;
        if (i + 1 < t.steps.size()) {
            const Step& next = t.steps[i + 1];
            if (next.contract && next.contract->refs) {
                for (int id : *next.contract->refs) {
                    const ReferenceItem* item = resp.find(id);
                    if (item && item->content_span.valid()) {
                        holes.push_back({item->content_span.begin,
                                         item->content_span.end});
                    }
                }
            }
        }
        std::sort(holes.begin(), holes.end(),
                  [](const Hole& a, const Hole& b) { return a.begin < b.begin; });

        std::size_t pos = resp.span.begin;
        for (const auto& h : holes) {
            if (h.begin > pos) masked.push_back({pos, h.begin, false});
            pos = std::max(pos, h.end);
        }
        if (pos < resp.span.end) masked.push_back({pos, resp.span.end, false});
    }

    std::sort(masked.begin(), masked.end(),
              [](const MaskSpan& a, const MaskSpan& b) {
                  return a.begin < b.begin;
              });

    // Tile [0, total) alternating with training spans, coalescing as we go.
    std::vector<MaskSpan> out;
    auto emit = [&](std::size_t b, std::size_t e, bool train) {
        if (e <= b) return;
        if (!out.empty() && out.back().train == train && out.back().end == b) {
            out.back().end = e;
            return;
        }
        out.push_back({b, e, train});
    };
    std::size_t pos = 0;
    for (const auto& m : masked) {
        emit(pos, m.begin, true);
        emit(std::max(pos, m.begin), m.end, false);
        pos = std::max(pos, m.end);
    }
    emit(pos, total, true);
    return out;
}

}  // namespace evaudit
