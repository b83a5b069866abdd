#include "evaudit/analytics.hpp"

namespace evaudit {

double ToolCallStats::percent(const std::string& tool) const {
    if (total == 0) return 0.0;
    auto it = counts.find(tool);
    if (it == counts.end()) return 0.0;
    return 100.0 * static_cast<double>(it->second) /
           static_cast<double>(total);
}

ToolCallStats tool_call_stats(const std::vector<Trajectory>& ts) {
    ToolCallStats out;
    for (const auto& t : ts) {
        for (const auto& s : t.steps) {
            if (!s.tool_call) continue;
            std::string name = s.tool_call->tool_name.empty()
                                   ? to_string(s.tool_call->tool)
                                   : s.tool_call->tool_name;
            ++out.counts[name];
            ++out.total;
        }
    }
    return out;
}

RewardReport summarize_rewards(const std::vector<RewardBreakdown>& rows) {
    RewardReport r;
    r.rollouts = rows.size();
    if (rows.empty()) return r;
    double sum_cite = 0, sum_pt = 0, sum_acc = 0, sum_f1 = 0, sum_ans = 0,
           sum_final = 0;
    for (const auto& row : rows) {
        if (row.format_valid) ++r.format_valid;
        for (std::size_t i = 1; i < row.step_verdicts.size(); ++i) {
            ++r.steps_checked;
            if (row.step_verdicts[i].passed()) ++r.steps_passed;
        }
        r.probes_run += row.probes.size();
        if (row.pt) {
            ++r.pt_present;
            sum_pt += *row.pt;
        }
        sum_cite += row.cite;
        sum_acc += row.accuracy;
        sum_f1 += row.answer_f1;
        sum_ans += row.answer_score;
        sum_final += row.final_reward;
    }
    double n = static_cast<double>(rows.size());
    r.mean_cite = sum_cite / n;
    r.mean_pt = r.pt_present ? sum_pt / static_cast<double>(r.pt_present) : 0.0;
    r.mean_accuracy = sum_acc / n;
    r.mean_answer_f1 = sum_f1 / n;
    r.mean_answer_score = sum_ans / n;
    r.mean_final = sum_final / n;
    return r;
}

}  // namespace evaudit
