#pragma once

// Step-level and trajectory-level checks.
//
// Each step from the second onward must open with a declaration judging the
// evidence returned at the previous step. A step passes when all three
// checks hold:
//   parse_ok        structural well-formedness of the step itself
//   consistency_ok  helpful=yes iff the citation list is non-null
//   ids_valid       every cited id exists in the previous step's response
//
// The format gate is what the final-reward computation keys on: a rollout
// is format-valid when a strict parse would have accepted it and a final
// answer is present.

#include <string>
#include <vector>

#include "evaudit/protocol.hpp"

namespace evaudit {

struct StepVerdict {
    bool parse_ok = false;
    bool consistency_ok = false;
    bool ids_valid = false;

    bool passed() const { return parse_ok && consistency_ok && ids_valid; }
};

// `prior` is the previous step's response (nullptr when there is none).
StepVerdict check_step(const Step& step, const ProxyResponse* prior);

// Verdicts for every step, 1-based step i at [i-1]. Step 1 is checked with
// no prior response.
std::vector<StepVerdict> check_steps(const Trajectory& t);

struct FormatFailure {
    int step_index = 0;  // 0 = trajectory level
    std::string tag;
    ParseCategory category = ParseCategory::unclosed_tag;
};

struct FormatCheck {
    bool valid = false;
    std::vector<FormatFailure> failures;
};

// Assess an already-parsed (or structurally built) trajectory.
FormatCheck check_format(const Trajectory& t);

// Relaxed-parse raw tagged text and assess it.
FormatCheck check_format(const std::string& raw);

}  // namespace evaudit
