#pragma once

// Closed-world simulation: invented-entity lookup tasks over the fixture
// environment, driven by two scripted policies.
//
//   GroundedPolicy   searches, cites what actually matches the question,
//                    declares honestly, and answers from cited text
//   HackingPolicy    games the declaration in one of five seeded ways
//                    (invalid ids, yes-with-null, no-with-refs, citing a
//                    valid but irrelevant item, lazy repeated searching)
//                    and fabricates its answer
//
// Every episode is deterministic given a seed, so reward separation
// between the two policies is a stable, testable quantity.

#include <cstdint>
#include <string>
#include <vector>

#include "evaudit/environment.hpp"
#include "evaudit/protocol.hpp"
#include "evaudit/rewards.hpp"

namespace evaudit {

struct SimTask {
    std::string question;
    std::string gold_answer;
    std::string entity;
    std::string relation;
};

struct SimWorld {
    Corpus corpus;
    std::vector<SimTask> tasks;
};

// Invented entities, relations, and answers; every task gets a supporting
// web page, a registry entry in the local collection, and a knowledge
// graph triple, plus assorted distractor documents.
SimWorld make_synthetic_world(std::uint64_t seed, int num_tasks = 20);

class Policy {
public:
    virtual ~Policy() = default;
    virtual Trajectory run(const SimTask& task, const Corpus& corpus,
                           std::uint64_t seed) = 0;
};

class GroundedPolicy : public Policy {
public:
    Trajectory run(const SimTask& task, const Corpus& corpus,
                   std::uint64_t seed) override;
};

class HackingPolicy : public Policy {
public:
    Trajectory run(const SimTask& task, const Corpus& corpus,
                   std::uint64_t seed) override;

    static int variant_for(std::uint64_t seed) {
        return static_cast<int>(seed % 5);
    }
};

struct EpisodeResult {
    Trajectory trajectory;
    RewardBreakdown reward;
};

// Canonicalizes the policy output (serialize + strict reparse) and scores
// it with the overlap oracles and the snippet-pool perturber. The episode
// seed drives the policy and the probe sampling alike.
EpisodeResult run_episode(Policy& policy, const SimTask& task,
                          const Corpus& corpus, std::uint64_t seed,
                          int b_max = 1);

struct SimEpisode {
    int index = 0;
    std::string question;
    double grounded_final = 0.0;
    double hacking_final = 0.0;
    int hacking_variant = 0;
};

struct SimSummary {
    std::vector<SimEpisode> episodes;
    double mean_grounded = 0.0;
    double mean_hacking = 0.0;
    double separation = 0.0;  // mean_grounded - mean_hacking
};

// Runs both policies over `episodes` tasks (cycling through the world's
// task list) with per-episode sub-seeds derived from `seed`.
SimSummary simulate_batch(int episodes, std::uint64_t seed,
                          int num_tasks = 20, int b_max = 1);

}  // namespace evaudit
