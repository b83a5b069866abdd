#include "evaudit/rewards.hpp"

#include <algorithm>
#include <set>
#include <tuple>
#include <unordered_map>

#include "evaudit/rng.hpp"
#include "evaudit/text.hpp"

namespace evaudit {

double step_cite_reward(const StepVerdict& v) {
    return v.passed() ? 1.0 : -1.0;
}

double rollout_cite_reward(const Trajectory& t,
                           const std::vector<StepVerdict>& verdicts) {
    int T = t.step_count();
    if (T <= 1) return 0.0;
    double sum = 0.0;
    for (int i = 1; i < T; ++i) {
        sum += step_cite_reward(verdicts[static_cast<std::size_t>(i)]);
    }
    return sum / static_cast<double>(T - 1);
}

double token_f1(const std::string& prediction, const std::string& gold) {
    auto gold_tokens = normalize_answer_tokens(gold);
    if (gold_tokens.empty()) {
        throw ConfigError("gold answer normalizes to nothing");
    }
    auto pred_tokens = normalize_answer_tokens(prediction);
    if (pred_tokens.empty()) return 0.0;

    std::unordered_map<std::string, int> gold_counts;
    for (const auto& tok : gold_tokens) ++gold_counts[tok];
    int common = 0;
    for (const auto& tok : pred_tokens) {
        auto it = gold_counts.find(tok);
        if (it != gold_counts.end() && it->second > 0) {
            --it->second;
            ++common;
        }
    }
    if (common == 0) return 0.0;
    return 2.0 * common /
           static_cast<double>(pred_tokens.size() + gold_tokens.size());
}

std::vector<ReferenceItem> aggregate_evidence(
    const Trajectory& t, const std::vector<StepVerdict>& verdicts) {
    std::vector<ReferenceItem> out;
    std::set<std::tuple<Source, int, std::string>> seen;
    for (std::size_t i = 1; i < t.steps.size(); ++i) {
        const Step& s = t.steps[i];
        if (!verdicts[i].passed()) continue;
        if (!s.contract || s.contract->helpful != Helpful::yes ||
            !s.contract->refs) {
            continue;
        }
        if (!t.steps[i - 1].tool_response) continue;
        const ProxyResponse& prior = *t.steps[i - 1].tool_response;
        for (int id : *s.contract->refs) {
            const ReferenceItem* item = prior.find(id);
            if (!item) continue;
            auto key = std::make_tuple(item->source, item->id, item->content);
            if (seen.insert(key).second) out.push_back(*item);
        }
    }
    return out;
}

std::vector<int> select_perturb_steps(const Trajectory& t,
                                      const std::vector<StepVerdict>& verdicts,
                                      int b_max, std::uint64_t seed) {
    int T = t.step_count();
    std::vector<int> passing;
    for (int i = 1; i < T; ++i) {
        if (verdicts[static_cast<std::size_t>(i)].passed()) {
            passing.push_back(t.steps[static_cast<std::size_t>(i)].index);
        }
    }
    int budget = std::min({T - 1, b_max, static_cast<int>(passing.size())});
    if (budget <= 0) return {};
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(budget));
    for (std::size_t pick : sample_indices(passing.size(),
                                           static_cast<std::size_t>(budget),
                                           seed)) {
        out.push_back(passing[pick]);
    }
    return out;
}

std::vector<PerturbationRecord> run_perturb_probes(
    const Trajectory& t, const std::vector<StepVerdict>& verdicts,
    HelpfulnessOracle& oracle, Perturber& perturber, const ScoreConfig& cfg) {
    std::vector<PerturbationRecord> out;
    for (int idx : select_perturb_steps(t, verdicts, cfg.b_max, cfg.seed)) {
        const Step& step = t.steps[static_cast<std::size_t>(idx - 1)];
        const Step& prev = t.steps[static_cast<std::size_t>(idx - 2)];
        if (!prev.tool_response) continue;  // nothing to probe against
        const auto& original = prev.tool_response->items;
        bool cited = step.contract && step.contract->refs.has_value();
        if (!cited && original.empty()) continue;  // no slot for a lure

        PerturbationRecord rec;
        rec.step_index = idx;
        rec.kind = cited ? PerturbKind::degrade : PerturbKind::lure;
        rec.sign = cited ? -1.0 : 1.0;
        rec.q_before = oracle.score(t.query, original);

        std::vector<ReferenceItem> perturbed = original;
        std::uint64_t probe = probe_seed(cfg.seed, idx);
        if (cited) {
            perturber.degrade(perturbed, *step.contract->refs, probe);
        } else {
            perturber.lure(perturbed, t.query, probe);
        }
        for (std::size_t i = 0; i < perturbed.size(); ++i) {
            if (perturbed[i].content != original[i].content) {
                rec.touched_ids.push_back(perturbed[i].id);
            }
        }
        rec.q_after = oracle.score(t.query, perturbed);
        rec.value = rec.sign * (rec.q_after - rec.q_before);
        out.push_back(std::move(rec));
    }
    return out;
}

RewardBreakdown score_trajectory(const Trajectory& t,
                                 const std::string& gold_answer,
                                 HelpfulnessOracle& oracle, Judge& judge,
                                 Perturber& perturber,
                                 const ScoreConfig& cfg) {
    if (normalize_answer_tokens(gold_answer).empty()) {
        throw ConfigError("gold answer normalizes to nothing");
    }

    RewardBreakdown out;
    out.step_verdicts = check_steps(t);
    out.format_valid = check_format(t).valid;
    out.cite = rollout_cite_reward(t, out.step_verdicts);
    out.probes = run_perturb_probes(t, out.step_verdicts, oracle, perturber,
                                    cfg);
    if (!out.probes.empty()) {
        double sum = 0.0;
        for (const auto& p : out.probes) sum += p.value;
        out.pt = sum / static_cast<double>(out.probes.size());
    }

    int T = t.step_count();
    bool any_pass = false;
    for (int i = 1; i < T; ++i) {
        if (out.step_verdicts[static_cast<std::size_t>(i)].passed()) {
            any_pass = true;
            break;
        }
    }
    if (T > 1 && any_pass && t.answer) {
        auto evidence = aggregate_evidence(t, out.step_verdicts);
        out.accuracy = judge.score(t.query, *t.answer, evidence);
    }
    if (t.answer) {
        out.answer_f1 = token_f1(*t.answer, gold_answer);
    }
    out.answer_score = (out.accuracy + out.answer_f1) / 2.0;

    if (out.format_valid) {
        out.final_reward = (out.cite + out.pt.value_or(0.0) +
                            out.answer_score) / 3.0;
    } else {
        out.final_reward = -1.0;
    }
    return out;
}

}  // namespace evaudit
