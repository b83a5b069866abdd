#pragma once

// JSON record form of trajectories, and JSONL corpus loading.
//
// One record per line:
//
//   {"query": "...",
//    "steps": [{"index": 1, "think": "...",
//               "contract": {"helpful":"yes","refs":[1,3]} | null,
//               "tool_call": {"tool":"web_search","arguments":{...}} | null,
//               "tool_response": {"items":[{"id":1,"source":"web_search",
//                 "granularity":"page","title":"...","url":"...",
//                 "content":"..."}]} | null}],
//    "answer": "..." | null,
//    "raw": "<think>..."}            // optional original tagged text
//
// A record may instead carry only {"raw": ..., "query": ...}; the tagged
// text is then relaxed-parsed. When both forms are present the raw text
// wins, because it alone carries byte offsets.

#include <istream>
#include <string>
#include <vector>

#include "evaudit/errors.hpp"
#include "evaudit/protocol.hpp"

namespace evaudit {

// Compact single-line JSON record (includes "raw" when present).
std::string trajectory_to_json(const Trajectory& t);

// Throws ConfigError on records that are not valid JSON or miss required
// fields. Tagged-text problems inside a "raw" field do not throw; they
// surface as defects on the relaxed-parsed result.
Trajectory trajectory_from_json(const std::string& record);

// All records of a JSONL stream/file, in order. Blank lines are skipped.
std::vector<Trajectory> load_trajectories_jsonl(std::istream& in);
std::vector<Trajectory> load_trajectories_jsonl(const std::string& path);

// Line-aligned gold answers: each line is either a bare string (taken
// verbatim) or a JSON object {"answer": "..."}.
std::vector<std::string> load_gold_answers(const std::string& path);

}  // namespace evaudit
