#include <doctest.h>

#include <set>
#include <string>

#include "evaudit/filter.hpp"
#include "evaudit/simulate.hpp"
#include "evaudit/validation.hpp"

using namespace evaudit;

TEST_SUITE("simulate") {

TEST_CASE("synthetic worlds are deterministic and self-consistent") {
    auto w1 = make_synthetic_world(7, 12);
    auto w2 = make_synthetic_world(7, 12);
    REQUIRE(w1.tasks.size() == 12);
    REQUIRE(w2.tasks.size() == 12);

    std::set<std::string> entities;
    for (std::size_t i = 0; i < w1.tasks.size(); ++i) {
        const auto& task = w1.tasks[i];
        CHECK(task.question == w2.tasks[i].question);
        CHECK(task.gold_answer == w2.tasks[i].gold_answer);
        entities.insert(task.entity);

        // every task is answerable from each retrieval surface
        bool on_web = false;
        for (const auto& d : w1.corpus.web) {
            if (d.text.find(task.gold_answer) != std::string::npos) {
                on_web = true;
                break;
            }
        }
        CHECK(on_web);
        bool in_kg = false;
        for (const auto& tr : w1.corpus.kg) {
            if (tr.subject == task.entity && tr.relation == task.relation &&
                tr.object == task.gold_answer) {
                in_kg = true;
                break;
            }
        }
        CHECK(in_kg);
    }
    CHECK(entities.size() == w1.tasks.size());  // no entity is reused

    auto other = make_synthetic_world(8, 12);
    bool differs = false;
    for (std::size_t i = 0; i < other.tasks.size(); ++i) {
        if (other.tasks[i].question != w1.tasks[i].question) differs = true;
    }
    CHECK(differs);
}

TEST_CASE("grounded episodes produce canonical, filterable rollouts") {
    auto world = make_synthetic_world(3, 6);
    GroundedPolicy grounded;
    for (std::size_t i = 0; i < 3; ++i) {
        auto ep = run_episode(grounded, world.tasks[i], world.corpus,
                              1000 + i);
        const auto& t = ep.trajectory;
        CHECK(t.raw_text.has_value());  // canonicalized through the parser
        CHECK(check_format(t).valid);
        CHECK(filter_trajectory(t).accepted());
        CHECK(ep.reward.format_valid);
        CHECK(ep.reward.cite == doctest::Approx(1.0));
        CHECK(ep.reward.final_reward > 0.0);
    }
}

TEST_CASE("hacking episodes cycle through five scripted variants") {
    CHECK(HackingPolicy::variant_for(0) == 0);
    CHECK(HackingPolicy::variant_for(7) == 2);
    CHECK(HackingPolicy::variant_for(14) == 4);

    auto world = make_synthetic_world(3, 6);
    HackingPolicy hacking;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        auto ep = run_episode(hacking, world.tasks[seed % 6], world.corpus,
                              seed);
        // gamed declarations keep the final reward far below grounded play
        CHECK(ep.reward.final_reward < 0.5);
    }
}

TEST_CASE("batches are reproducible and separate the two policies") {
    auto a = simulate_batch(10, 42);
    auto b = simulate_batch(10, 42);
    REQUIRE(a.episodes.size() == 10);
    CHECK(a.mean_grounded == b.mean_grounded);
    CHECK(a.mean_hacking == b.mean_hacking);
    CHECK(a.separation == b.separation);
    for (std::size_t i = 0; i < a.episodes.size(); ++i) {
        CHECK(a.episodes[i].grounded_final == b.episodes[i].grounded_final);
        CHECK(a.episodes[i].hacking_final == b.episodes[i].hacking_final);
        CHECK(a.episodes[i].hacking_variant ==
              b.episodes[i].hacking_variant);
    }

    CHECK(a.separation == doctest::Approx(a.mean_grounded - a.mean_hacking));
    CHECK(a.separation > 0.5);

    auto c = simulate_batch(10, 43);
    CHECK(c.separation > 0.5);  // separation is not seed luck
    bool differs = false;
    for (std::size_t i = 0; i < c.episodes.size(); ++i) {
        if (c.episodes[i].grounded_final != a.episodes[i].grounded_final) {
            differs = true;
        }
        if (c.episodes[i].hacking_final != a.episodes[i].hacking_final) {
            differs = true;
        }
    }
    CHECK(differs);
}

}  // TEST_SUITE
