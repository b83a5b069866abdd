#include "evaudit/filter.hpp"

#include <json.hpp>

#include "evaudit/json_io.hpp"
#include "evaudit/validation.hpp"

namespace evaudit {

std::string to_string(FilterOutcome o) {
    switch (o) {
        case FilterOutcome::accepted: return "accepted";
        case FilterOutcome::format_invalid: return "format_invalid";
        case FilterOutcome::step_check_failed: return "step_check_failed";
        case FilterOutcome::too_short: return "too_short";
        case FilterOutcome::too_long: return "too_long";
    }
    return "accepted";
}

FilterDecision filter_trajectory(const Trajectory& t, int min_steps,
                                 int max_steps) {
    if (!check_format(t).valid) {
        return {FilterOutcome::format_invalid, 0};
    }
    auto verdicts = check_steps(t);
    for (std::size_t i = 1; i < verdicts.size(); ++i) {
        if (!verdicts[i].passed()) {
            return {FilterOutcome::step_check_failed, t.steps[i].index};
        }
    }
    int T = t.step_count();
    if (T < min_steps) return {FilterOutcome::too_short, 0};
    if (T > max_steps) return {FilterOutcome::too_long, 0};
    return {FilterOutcome::accepted, 0};
}

FilterReport filter_jsonl(std::istream& in, std::ostream& accept,
                          std::ostream* reject, int min_steps,
                          int max_steps) {
    FilterReport report;
    std::string line;
    std::size_t lineno = 0;
    auto drop = [&](const std::string& reason, int failed_step) {
        if (!reject) return;
        nlohmann::json j;
        j["line"] = lineno;
        j["reason"] = reason;
        if (failed_step > 0) j["failed_step"] = failed_step;
        *reject << j.dump() << '\n';
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        bool blank = true;
        for (char c : line) {
            if (c != ' ' && c != '\t') {
                blank = false;
                break;
            }
        }
        if (blank) continue;
        ++report.total;
        Trajectory t;
        try {
            t = trajectory_from_json(line);
        } catch (const ConfigError&) {
            ++report.unreadable;
            drop("unreadable", 0);
            continue;
        }
        auto decision = filter_trajectory(t, min_steps, max_steps);
        switch (decision.outcome) {
            case FilterOutcome::accepted:
                ++report.accepted;
                accept << line << '\n';
                break;
            case FilterOutcome::format_invalid:
                ++report.format_invalid;
                drop(to_string(decision.outcome), 0);
                break;
            case FilterOutcome::step_check_failed:
                ++report.step_check_failed;
                drop(to_string(decision.outcome), decision.failed_step);
                break;
            case FilterOutcome::too_short:
                ++report.too_short;
                drop(to_string(decision.outcome), 0);
                break;
            case FilterOutcome::too_long:
                ++report.too_long;
                drop(to_string(decision.outcome), 0);
                break;
        }
    }
    return report;
}

}  // namespace evaudit
