#include "evaudit/validation.hpp"

namespace evaudit {

namespace {

bool refs_well_formed(const std::vector<int>& ids) {
    if (ids.empty()) return false;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (ids[i] < 1) return false;
        for (std::size_t j = i + 1; j < ids.size(); ++j) {
            if (ids[i] == ids[j]) return false;
        }
    }
    return true;
}

bool step_structure_ok(const Step& s) {
    if (!s.defects.empty()) return false;
    if (s.index >= 2 && !s.contract) return false;
    if (s.contract && s.contract->refs && !refs_well_formed(*s.contract->refs)) {
        return false;
    }
    if (s.tool_response && !s.tool_call) return false;
    return true;
}

}  // namespace

StepVerdict check_step(const Step& step, const ProxyResponse* prior) {
    StepVerdict v;
    v.parse_ok = step_structure_ok(step);

    if (step.contract) {
        bool cited = step.contract->refs.has_value();
        v.consistency_ok = (step.contract->helpful == Helpful::yes) == cited;
    } else {
        v.consistency_ok = false;
    }

    if (!step.contract || !step.contract->refs || step.contract->refs->empty()) {
        v.ids_valid = true;  // nothing cited, nothing to resolve
    } else {
        v.ids_valid = prior != nullptr;
        if (v.ids_valid) {
            for (int id : *step.contract->refs) {
                if (!prior->has_id(id)) {
                    v.ids_valid = false;
                    break;
                }
            }
        }
    }
    return v;
}

std::vector<StepVerdict> check_steps(const Trajectory& t) {
    std::vector<StepVerdict> out;
    out.reserve(t.steps.size());
    for (std::size_t i = 0; i < t.steps.size(); ++i) {
        const ProxyResponse* prior = nullptr;
        if (i > 0 && t.steps[i - 1].tool_response) {
            prior = &*t.steps[i - 1].tool_response;
        }
        out.push_back(check_step(t.steps[i], prior));
    }
    return out;
}

FormatCheck check_format(const Trajectory& t) {
    FormatCheck out;
    for (const auto& d : t.defects) {
        out.failures.push_back({0, d.tag, d.category});
    }
    if (t.steps.empty() && t.defects.empty()) {
        out.failures.push_back(
            {0, "trajectory", ParseCategory::out_of_order});
    }
    for (const auto& s : t.steps) {
        for (const auto& d : s.defects) {
            out.failures.push_back({s.index, d.tag, d.category});
        }
        if (!s.defects.empty()) continue;  // already reported
        if (s.index >= 2 && !s.contract) {
            out.failures.push_back(
                {s.index, "helpful", ParseCategory::malformed_contract});
        }
        if (s.contract && s.contract->refs &&
            !refs_well_formed(*s.contract->refs)) {
            out.failures.push_back(
                {s.index, "ref", ParseCategory::malformed_contract});
        }
        if (s.tool_response && !s.tool_call) {
            out.failures.push_back(
                {s.index, "tool_response", ParseCategory::out_of_order});
        }
    }
    if (!t.answer) {
        out.failures.push_back({0, "answer", ParseCategory::out_of_order});
    }
    out.valid = out.failures.empty();
    return out;
}

FormatCheck check_format(const std::string& raw) {
    return check_format(parse_trajectory_relaxed(raw));
}

}  // namespace evaudit
