#pragma once

// Trajectory data model and the tagged-text wire format.
//
// A trajectory is the model-generated side of one episode: an ordered list
// of reasoning steps, optionally ending in an answer. Serialized form:
//
//   <think><helpful>yes</helpful><ref>1,3</ref> ...free text...</think>
//   <tool_call>{"tool":"web_search","arguments":{"query":"..."}}</tool_call>
//   <tool_response>
//   <ref_item id="1" source="web_search" granularity="page" ...>text</ref_item>
//   </tool_response>
//   ...
//   <answer>...</answer>
//
// Step 1 carries no leading declaration; every later <think> must open with
// the <helpful>/<ref> pair (the step contract) before any free text. The
// parser records byte offsets of every element so that loss-mask spans can
// be computed against the original text.

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace evaudit {

struct ByteSpan {
    std::size_t begin = 0;
    std::size_t end = 0;

    std::size_t size() const { return end - begin; }
    bool valid() const { return end > begin; }
};

enum class Source { web_search, browser, local_search, kg_search };
enum class Granularity { page, chunk };
enum class Helpful { yes, no };

// The four registered proxies plus a passthrough bucket for foreign logs.
enum class ToolKind { web_search, browser, local_search, kg_search, other };

std::string to_string(Source s);
std::string to_string(Granularity g);
std::string to_string(Helpful h);
std::string to_string(ToolKind k);
std::optional<Source> source_from_string(std::string_view s);
std::optional<Granularity> granularity_from_string(std::string_view s);
ToolKind tool_kind_from_string(std::string_view s);

// One retrievable evidence unit. `id` is assigned by the environment,
// consecutively from 1 within each response. web_search items are
// page-granular; every other source returns chunks.
struct ReferenceItem {
    int id = 0;
    Source source = Source::web_search;
    Granularity granularity = Granularity::page;
    std::optional<std::string> title;
    std::optional<std::string> url;
    std::string content;

    // Escaped surface range of `content` inside raw_text (parsed input only).
    ByteSpan content_span{};

    bool operator==(const ReferenceItem& o) const {
        return id == o.id && source == o.source &&
               granularity == o.granularity && title == o.title &&
               url == o.url && content == o.content;
    }
};

struct ProxyResponse {
    std::vector<ReferenceItem> items;
    ByteSpan span{};  // outer element range in raw_text

    bool has_id(int id) const;
    const ReferenceItem* find(int id) const;

    bool operator==(const ProxyResponse& o) const { return items == o.items; }
};

struct ToolCall {
    ToolKind tool = ToolKind::web_search;
    std::string tool_name;  // verbatim payload name (kept for foreign tools)
    std::map<std::string, std::string> arguments;
    // Unknown top-level payload keys, preserved as compact JSON values.
    std::map<std::string, std::string> extras;
    ByteSpan span{};

    bool operator==(const ToolCall& o) const {
        return tool == o.tool && tool_name == o.tool_name &&
               arguments == o.arguments && extras == o.extras;
    }
};

// The per-step verdict/citation declaration. refs == nullopt is the
// literal `null` marker (no citations); an empty list is representable
// only through ingestion and never passes validation.
struct Contract {
    Helpful helpful = Helpful::yes;
    std::optional<std::vector<int>> refs;
    ByteSpan span{};

    bool cites_null() const { return !refs.has_value(); }

    bool operator==(const Contract& o) const {
        return helpful == o.helpful && refs == o.refs;
    }
};

enum class ParseCategory {
    unclosed_tag,
    malformed_contract,
    unknown_tag,
    out_of_order,
    malformed_payload,
};

std::string to_string(ParseCategory c);

// A tag-level finding recorded by the relaxed parser.
struct Defect {
    std::string tag;
    ParseCategory category = ParseCategory::unclosed_tag;
    std::size_t offset = 0;
};

struct Step {
    int index = 0;  // 1-based, contiguous
    std::string think;
    std::optional<Contract> contract;
    std::optional<ToolCall> tool_call;
    std::optional<ProxyResponse> tool_response;

    ByteSpan think_span{};
    std::vector<Defect> defects;

    bool operator==(const Step& o) const {
        return index == o.index && think == o.think &&
               contract == o.contract && tool_call == o.tool_call &&
               tool_response == o.tool_response;
    }
};

class ParseError : public std::runtime_error {
public:
    ParseError(ParseCategory category, std::size_t offset, int step_index,
               const std::string& message);

    ParseCategory category;
    std::size_t offset;    // first offending byte
    int step_index;        // 0 = trajectory level
};

enum class AnswerPosition { none, after_think, after_tool_response };

struct Trajectory {
    std::string query;
    std::vector<Step> steps;
    std::optional<std::string> answer;
    std::optional<std::string> raw_text;

    ByteSpan answer_span{};
    std::vector<Defect> defects;  // trajectory-level findings

    int step_count() const { return static_cast<int>(steps.size()); }

    bool operator==(const Trajectory& o) const {
        return query == o.query && steps == o.steps && answer == o.answer;
    }
};

// Where the final answer sat relative to the last step (recorded because
// both placements occur in the wild and downstream checks treat them the
// same).
AnswerPosition answer_position(const Trajectory& t);

// Strict parse: throws ParseError at the first tag-level violation
// (unclosed or unknown tags, malformed or missing step contracts,
// out-of-order elements, unparseable tool payloads). On success every
// element carries its byte span and raw_text is retained.
Trajectory parse_trajectory(const std::string& raw, std::string query = "");

// Relaxed parse: never throws; records what the strict parser would have
// rejected as per-step / trajectory defects so malformed rollouts can
// still be scored (they fail the format gate instead of crashing).
Trajectory parse_trajectory_relaxed(const std::string& raw,
                                    std::string query = "");

// Canonical tagged text. parse_trajectory(serialize_trajectory(t), t.query)
// is structurally equal to t for any invariant-satisfying trajectory.
// Free-text fields must not embed reserved closing tags.
std::string serialize_trajectory(const Trajectory& t);

// serialize + strict reparse: refreshes raw_text and element offsets on a
// structurally built trajectory.
Trajectory canonicalized(const Trajectory& t);

}  // namespace evaudit
