#pragma once

// Evidence perturbations for the helpfulness probe.
//
// A probed step is re-scored against a counterfactual version of the
// evidence it judged:
//
//   yes-case (step cited evidence)   degrade exactly the cited items and
//                                    expect helpfulness to DROP
//   no-case (step declared null)     plant a lure built from the question
//                                    and expect helpfulness to RISE
//
// Both edits are deterministic given a seed. The exact recipe is part of
// the contract (independent reimplementations must match bit-for-bit):
//
//   degrade(evidence, cited, seed):
//     g = mt19937_64(seed)
//     for each id in `cited`, in the order given: draw = g(); if the id
//       resolves, item.content = snippet_pool()[bounded(draw, pool size)]
//     (one draw per id, consumed whether or not the id resolves)
//   lure(evidence, question, seed):
//     g = mt19937_64(seed)
//     evidence[bounded(g(), evidence size)].content = lure_text(question)
//
// The per-step seed is probe_seed(run_seed, step_index) from rng.hpp.

#include <cstdint>
#include <string>
#include <vector>

#include "evaudit/protocol.hpp"

namespace evaudit {

enum class PerturbKind { degrade, lure };

std::string to_string(PerturbKind k);

class Perturber {
public:
    virtual ~Perturber() = default;

    // Overwrite the cited items with topic-unrelated text. Ids that do not
    // resolve are skipped (a passing step never has any, but the interface
    // is safe on arbitrary input).
    virtual void degrade(std::vector<ReferenceItem>& evidence,
                         const std::vector<int>& cited_ids,
                         std::uint64_t seed) = 0;

    // Replace one item, chosen by the seed, with a passage engineered to
    // look maximally relevant to the question. No-op on empty evidence.
    virtual void lure(std::vector<ReferenceItem>& evidence,
                      const std::string& question, std::uint64_t seed) = 0;
};

// Default perturber backed by a fixed pool of off-topic paragraphs. The
// paragraphs share ordinary function words with any English question but
// no subject matter, so degraded evidence keeps a small, strictly positive
// overlap score while losing all content-word overlap.
class SnippetPoolPerturber : public Perturber {
public:
    void degrade(std::vector<ReferenceItem>& evidence,
                 const std::vector<int>& cited_ids,
                 std::uint64_t seed) override;
    void lure(std::vector<ReferenceItem>& evidence,
              const std::string& question, std::uint64_t seed) override;

    static const std::vector<std::string>& snippet_pool();
    static std::string lure_text(const std::string& question);
};

// One probe outcome: value = sign * (q_after - q_before), where sign is -1
// for degrade probes and +1 for lure probes.
struct PerturbationRecord {
    int step_index = 0;
    PerturbKind kind = PerturbKind::degrade;
    double q_before = 0.0;
    double q_after = 0.0;
    double sign = 0.0;
    double value = 0.0;
    std::vector<int> touched_ids;
};

}  // namespace evaudit
