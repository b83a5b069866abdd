#pragma once

// Startup-corpus filtering.
//
// A candidate trajectory is kept only when
//   stage 1: the format gate passes and every step from 2..T passes all
//            three step checks, and
//   stage 2: the step count lies in [min_steps, max_steps] (3..10 by
//            default).
//
// Stage 1 is evaluated first, so a malformed eleven-step rollout reports
// its real problem rather than its length.

#include <cstddef>
#include <istream>
#include <ostream>
#include <string>

#include "evaudit/protocol.hpp"

namespace evaudit {

enum class FilterOutcome {
    accepted,
    format_invalid,
    step_check_failed,
    too_short,
    too_long,
};

std::string to_string(FilterOutcome o);

struct FilterDecision {
    FilterOutcome outcome = FilterOutcome::accepted;
    int failed_step = 0;  // first failing step for step_check_failed

    bool accepted() const { return outcome == FilterOutcome::accepted; }
};

FilterDecision filter_trajectory(const Trajectory& t, int min_steps = 3,
                                 int max_steps = 10);

struct FilterReport {
    std::size_t total = 0;
    std::size_t accepted = 0;
    std::size_t format_invalid = 0;
    std::size_t step_check_failed = 0;
    std::size_t too_short = 0;
    std::size_t too_long = 0;
    std::size_t unreadable = 0;  // lines that were not valid records
};

// Stream filter over JSONL records: accepted lines are copied verbatim to
// `accept`; when `reject` is given, every dropped line produces one JSON
// object {"line": N, "reason": "...", "failed_step": K?}. Unreadable lines
// count as dropped.
FilterReport filter_jsonl(std::istream& in, std::ostream& accept,
                          std::ostream* reject = nullptr, int min_steps = 3,
                          int max_steps = 10);

}  // namespace evaudit
