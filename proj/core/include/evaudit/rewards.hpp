#pragma once

// Rollout scoring.
//
// A rollout earns three components, averaged into the final reward when the
// format gate passes and pinned to -1 when it does not:
//
//   cite    mean over steps 2..T of +1/-1 step citation rewards
//           (0 when T <= 1)
//   pt      mean probe value over the perturbed steps; the probe budget is
//           B = min(T-1, b_max, #passing steps), sampled without
//           replacement from the passing steps among 2..T. Absent when no
//           probe ran, in which case it contributes 0 to the final mean.
//   answer  (accuracy + token F1) / 2, where accuracy is the judge score
//           over the evidence aggregated from passing helpful=yes steps
//           (0 when T <= 1 or no step passed) and F1 compares the final
//           answer against the gold answer.
//
// Everything is deterministic given the config seed: probed steps come from
// sample_indices(seed) over the passing list, and each probe perturbs with
// probe_seed(seed, step_index).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "evaudit/errors.hpp"
#include "evaudit/oracles.hpp"
#include "evaudit/perturbation.hpp"
#include "evaudit/protocol.hpp"
#include "evaudit/validation.hpp"

namespace evaudit {

struct ScoreConfig {
    int b_max = 1;
    std::uint64_t seed = 0;
};

// +1 when all three step checks pass, else -1.
double step_cite_reward(const StepVerdict& v);

// Mean step citation reward over steps 2..T; 0 for single-step rollouts.
double rollout_cite_reward(const Trajectory& t,
                           const std::vector<StepVerdict>& verdicts);

// SQuAD-style token F1: lowercase, strip punctuation, drop articles,
// multiset overlap. Throws ConfigError when the gold answer normalizes to
// nothing.
double token_f1(const std::string& prediction, const std::string& gold);

// Distinct evidence cited by passing helpful=yes steps, in citation order,
// deduplicated by (source, id, content).
std::vector<ReferenceItem> aggregate_evidence(
    const Trajectory& t, const std::vector<StepVerdict>& verdicts);

// The probed step indices (1-based), in selection order. Budget law:
// B = min(T-1, b_max, #passing steps among 2..T).
std::vector<int> select_perturb_steps(const Trajectory& t,
                                      const std::vector<StepVerdict>& verdicts,
                                      int b_max, std::uint64_t seed);

// Run the helpfulness probes for the selected steps. Steps whose prior
// response has nothing to perturb (a no-case probe against an empty
// response) are skipped.
std::vector<PerturbationRecord> run_perturb_probes(
    const Trajectory& t, const std::vector<StepVerdict>& verdicts,
    HelpfulnessOracle& oracle, Perturber& perturber, const ScoreConfig& cfg);

struct RewardBreakdown {
    bool format_valid = false;
    double cite = 0.0;
    std::optional<double> pt;  // absent when no probe ran
    double accuracy = 0.0;
    double answer_f1 = 0.0;
    double answer_score = 0.0;  // (accuracy + answer_f1) / 2
    double final_reward = -1.0;
    std::vector<StepVerdict> step_verdicts;
    std::vector<PerturbationRecord> probes;
};

// Full pipeline over a parsed (or built) trajectory.
RewardBreakdown score_trajectory(const Trajectory& t,
                                 const std::string& gold_answer,
                                 HelpfulnessOracle& oracle, Judge& judge,
                                 Perturber& perturber,
                                 const ScoreConfig& cfg = {});

}  // namespace evaudit
