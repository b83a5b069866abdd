#include "evaudit/perturbation.hpp"

#include <random>

#include "evaudit/rng.hpp"

namespace evaudit {

std::string to_string(PerturbKind k) {
    return k == PerturbKind::degrade ? "degrade" : "lure";
}

const std::vector<std::string>& SnippetPoolPerturber::snippet_pool() {
    static const std::vector<std::string> pool = {
        "The kiln must be warmed in stages, because a sudden change in the "
        "heat will crack the glaze before it has settled onto the clay.",
        "A moraine is the ridge of rubble that a glacier leaves behind as it "
        "retreats, and it can stand for thousands of years after the ice is "
        "gone.",
        "In letterpress work the spacing between characters is adjusted with "
        "thin slivers of brass, and a careful compositor checks the page "
        "against a proof before the run begins.",
        "At low tide the pools along the rocks hold anemones and small "
        "darting fish, and the water in them warms quickly under the sun.",
        "Before storing an accordion for the season, the bellows should be "
        "closed gently and the straps loosened so that the folds do not take "
        "a set.",
        "A hive that is short on stores in early spring can be fed a thick "
        "syrup, but the frames must be checked so that the cluster has not "
        "drifted away from the food.",
        "To season the pan, coat it with a very thin film of oil and heat it "
        "until the surface darkens; repeat this until the finish is smooth "
        "and even.",
        "The crease pattern for the crane begins with a square base, and "
        "every later fold depends on the accuracy of those first diagonal "
        "creases.",
        "The old lens assembly floats on a bath of mercury, which lets the "
        "whole array turn with almost no friction when the clockwork drives "
        "it.",
        "A starter that smells sharply of vinegar has been left too long "
        "between feedings, and it will need a few days of regular attention "
        "before the loaves rise well again.",
        "The bowline keeps its hold under load yet comes apart with a push "
        "of the thumb once the strain is off, which is why sailors reach for "
        "it so often.",
        "A weather vane must be balanced around its pivot, otherwise it "
        "reports the gusts and not the steady wind.",
    };
    return pool;
}

std::string SnippetPoolPerturber::lure_text(const std::string& question) {
    return "This passage directly addresses the question: \"" + question +
           "\" It states the answer plainly, cites primary sources, and "
           "resolves the matter in full detail.";
}

void SnippetPoolPerturber::degrade(std::vector<ReferenceItem>& evidence,
                                   const std::vector<int>& cited_ids,
                                   std::uint64_t seed) {
    const auto& pool = snippet_pool();
    std::mt19937_64 g(seed);
    for (int id : cited_ids) {
        std::uint64_t draw = g();
        for (auto& item : evidence) {
            if (item.id == id) {
                item.content = pool[bounded(draw, pool.size())];
                break;
            }
        }
    }
}

void SnippetPoolPerturber::lure(std::vector<ReferenceItem>& evidence,
                                const std::string& question,
                                std::uint64_t seed) {
    if (evidence.empty()) return;
    std::mt19937_64 g(seed);
    std::size_t idx = bounded(g(), evidence.size());
    evidence[idx].content = lure_text(question);
}

}  // namespace evaudit
