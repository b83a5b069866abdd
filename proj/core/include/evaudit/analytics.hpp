#pragma once

// Corpus-level behavior and reward summaries.

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "evaudit/protocol.hpp"
#include "evaudit/rewards.hpp"

namespace evaudit {

struct ToolCallStats {
    std::map<std::string, std::size_t> counts;  // tool name -> calls
    std::size_t total = 0;

    // Percentage of all calls, 0 when nothing was called.
    double percent(const std::string& tool) const;
};

// Counts every tool call across the corpus, keyed by the verbatim tool
// name (falling back to the kind for built trajectories with no name).
ToolCallStats tool_call_stats(const std::vector<Trajectory>& ts);

struct RewardReport {
    std::size_t rollouts = 0;
    std::size_t format_valid = 0;
    std::size_t steps_checked = 0;  // steps 2..T across all rollouts
    std::size_t steps_passed = 0;
    std::size_t probes_run = 0;
    std::size_t pt_present = 0;  // rollouts where any probe ran
    double mean_cite = 0.0;
    double mean_pt = 0.0;  // over rollouts with a probe
    double mean_accuracy = 0.0;
    double mean_answer_f1 = 0.0;
    double mean_answer_score = 0.0;
    double mean_final = 0.0;
};

RewardReport summarize_rewards(const std::vector<RewardBreakdown>& rows);

}  // namespace evaudit
