#include "evaudit/simulate.hpp"

#include <algorithm>
#include <cctype>

#include "evaudit/rng.hpp"
#include "evaudit/text.hpp"

namespace evaudit {

namespace {

const std::vector<std::string>& firsts() {
    static const std::vector<std::string> v = {
        "Vel", "Zor", "Quin", "Mar", "Tes",
        "Bryn", "Kal", "Oru", "Fen", "Sil"};
    return v;
}

const std::vector<std::string>& seconds() {
    static const std::vector<std::string> v = {
        "dara", "mek", "this", "lune", "gorin",
        "vex", "ora", "bant", "cryl", "dun"};
    return v;
}

const std::vector<std::string>& suffixes() {
    static const std::vector<std::string> v = {
        "Prime", "Hollow", "Reach", "Spire", "Atoll",
        "Bastion", "Verge", "Cradle", "Summit", "Expanse"};
    return v;
}

const std::vector<std::string>& relations() {
    static const std::vector<std::string> v = {
        "founding charter", "signal color",   "chief export",
        "orbital cycle",    "anthem",         "guardian order",
        "twin city",        "ruling council", "border river",
        "harvest emblem"};
    return v;
}

const std::vector<std::string>& answer_pool() {
    static const std::vector<std::string> v = {
        "the amber concordat", "a cobalt meridian", "the ninth lantern",
        "the gilded quorum",   "a saffron banner",  "the hollow crown pact",
        "the veiled estuary",  "a twin obsidian",   "the drifting arcade",
        "the quiet armistice"};
    return v;
}

std::string slug_of(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (std::isalnum(static_cast<unsigned char>(c))) {
            out += static_cast<char>(
                std::tolower(static_cast<unsigned char>(c)));
        } else if (!out.empty() && out.back() != '-') {
            out += '-';
        }
    }
    return out;
}

Step make_step(int index, std::string think) {
    Step s;
    s.index = index;
    s.think = std::move(think);
    return s;
}

ToolCall make_call(ToolKind kind, const std::string& arg_name,
                   const std::string& arg_value) {
    ToolCall tc;
    tc.tool = kind;
    tc.tool_name = to_string(kind);
    tc.arguments[arg_name] = arg_value;
    return tc;
}

// Honest declaration about a prior response: cite everything that clears
// the relevance bar, otherwise declare the evidence unhelpful.
Contract assess(const ProxyResponse& prior, const std::string& question) {
    auto q_tokens = token_set(question);
    std::vector<int> ids;
    for (const auto& item : prior.items) {
        if (term_overlap(q_tokens, item.content) >= 0.5) {
            ids.push_back(item.id);
        }
    }
    Contract c;
    if (ids.empty()) {
        c.helpful = Helpful::no;
        c.refs = std::nullopt;
    } else {
        c.helpful = Helpful::yes;
        c.refs = std::move(ids);
    }
    return c;
}

std::string lowercase(const std::string& s) {
    std::string out = s;
    for (char& c : out) {
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    return out;
}

// Pull "the <relation> of <entity> is X." out of cited text.
std::string extract_answer(const SimTask& task,
                           const std::vector<const ReferenceItem*>& cited) {
    std::string needle = lowercase("the " + task.relation + " of " +
                                   task.entity + " is ");
    for (const auto* item : cited) {
        std::string low = lowercase(item->content);
        std::size_t at = low.find(needle);
        if (at == std::string::npos) continue;
        std::size_t start = at + needle.size();
        std::size_t dot = item->content.find('.', start);
        if (dot == std::string::npos) dot = item->content.size();
        return item->content.substr(start, dot - start);
    }
    return "unknown";
}

}  // namespace

SimWorld make_synthetic_world(std::uint64_t seed, int num_tasks) {
    SimWorld world;
    if (num_tasks < 1) num_tasks = 1;
    std::uint64_t r1 = splitmix64(seed) % 10;
    std::uint64_t r2 = splitmix64(seed ^ 1) % 10;
    std::uint64_t r3 = splitmix64(seed ^ 2) % 10;
    std::uint64_t r4 = splitmix64(seed ^ 3) % 10;
    std::uint64_t r5 = splitmix64(seed ^ 4) % 10;

    for (int i = 0; i < num_tasks; ++i) {
        auto u = static_cast<std::uint64_t>(i);
        std::string entity = firsts()[(u + r1) % 10] +
                             seconds()[(u / 10 + r2) % 10] + " " +
                             suffixes()[(u / 100 + r3) % 10];
        std::string relation = relations()[(u + r4) % 10];
        std::string answer = answer_pool()[(u * 3 + r5) % 10];

        SimTask task;
        task.entity = entity;
        task.relation = relation;
        task.gold_answer = answer;
        task.question =
            "What is the " + relation + " of " + entity + "?";
        world.tasks.push_back(task);

        Document support;
        support.id = "w" + std::to_string(i) + "s";
        support.title = entity;
        support.url = "https://wiki.test/" + slug_of(entity);
        support.text =
            entity + " is a place of standing interest to travelers and "
            "archivists alike. The " + relation + " of " + entity + " is " +
            answer + ". Registry clerks confirmed the record twice. "
            "Visitors still ask about it each year.";
        world.corpus.web.push_back(std::move(support));

        Document annex;
        annex.id = "w" + std::to_string(i) + "a";
        annex.title = entity + " Annex";
        annex.url = "https://wiki.test/" + slug_of(entity) + "-annex";
        annex.text =
            entity + " Annex keeps seasonal travel notes for the northern "
            "routes. Little else is recorded there.";
        world.corpus.web.push_back(std::move(annex));

        Document registry;
        registry.id = "l" + std::to_string(i);
        registry.title = "Registry: " + entity;
        registry.text =
            "According to the provincial registry, the " + relation + " of " +
            entity + " is " + answer + ". The entry was notarized in the "
            "spring session. Adjacent entries concern unrelated matters.";
        world.corpus.local.push_back(std::move(registry));

        world.corpus.kg.push_back({entity, relation, answer});
    }

    for (int g = 0; g < 3; ++g) {
        Document guild;
        guild.id = "g" + std::to_string(g);
        guild.title = "Guild Ledger " + std::to_string(g + 1);
        guild.url = "https://wiki.test/guild-ledger-" + std::to_string(g + 1);
        guild.text =
            "The ledger records dues collected by the porters' guild across "
            "three seasons. Most pages hold routine tallies. A few margins "
            "carry notes from the warden.";
        world.corpus.web.push_back(std::move(guild));
    }
    return world;
}

Trajectory GroundedPolicy::run(const SimTask& task, const Corpus& corpus,
                               std::uint64_t /*seed*/) {
    ProxyConfig env;
    Trajectory t;
    t.query = task.question;

    Step s1 = make_step(
        1, "The question asks about " + task.entity +
               "; I have no evidence yet, so a web search comes first.");
    s1.tool_call = make_call(ToolKind::web_search, "query", task.question);
    ProxyResponse r1 = web_search(corpus, task.question, env);
    s1.tool_response = r1;
    t.steps.push_back(std::move(s1));

    Step s2 = make_step(
        2, " The results that actually mention the " + task.relation +
               " are worth keeping. A registry lookup can confirm them.");
    s2.contract = assess(r1, task.question);
    s2.tool_call = make_call(ToolKind::local_search, "query", task.question);
    ProxyResponse r2 = local_search(corpus, task.question, env);
    s2.tool_response = r2;
    t.steps.push_back(std::move(s2));

    Step s3 = make_step(
        3, " The registry entry lines up with the web record. The knowledge "
           "graph should close the loop on " + task.entity + ".");
    s3.contract = assess(r2, task.question);
    s3.tool_call = make_call(ToolKind::kg_search, "entity", task.entity);
    ProxyResponse r3 = kg_search(corpus, task.entity, env);
    s3.tool_response = r3;
    t.steps.push_back(std::move(s3));

    Step s4 = make_step(
        4, " All three sources agree, so I can state the answer directly.");
    s4.contract = assess(r3, task.question);
    t.steps.push_back(std::move(s4));

    // Answer from the union of everything the declarations cited.
    std::vector<const ReferenceItem*> cited;
    for (std::size_t i = 1; i < t.steps.size(); ++i) {
        const auto& c = t.steps[i].contract;
        if (!c || !c->refs) continue;
        const auto& prior = t.steps[i - 1].tool_response;
        if (!prior) continue;
        for (int id : *c->refs) {
            if (const auto* item = prior->find(id)) cited.push_back(item);
        }
    }
    t.answer = extract_answer(task, cited);
    return t;
}

Trajectory HackingPolicy::run(const SimTask& task, const Corpus& corpus,
                              std::uint64_t seed) {
    int variant = variant_for(seed);
    ProxyConfig env;

    auto gamed_contract = [&](const ProxyResponse& prior) {
        Contract c;
        switch (variant) {
            case 0:  // cite an id that was never returned
                c.helpful = Helpful::yes;
                c.refs = std::vector<int>{99};
                break;
            case 1:  // claim helpfulness, cite nothing
                c.helpful = Helpful::yes;
                c.refs = std::nullopt;
                break;
            case 2:  // deny helpfulness, cite anyway
                c.helpful = Helpful::no;
                c.refs = std::vector<int>{1};
                break;
            case 3:  // cite the weakest-ranked item: valid, irrelevant
                c.helpful = Helpful::yes;
                c.refs = std::vector<int>{
                    prior.items.empty() ? 1 : prior.items.back().id};
                break;
            default:  // lazy but internally consistent
                c.helpful = Helpful::no;
                c.refs = std::nullopt;
                break;
        }
        return c;
    };

    Trajectory t;
    t.query = task.question;

    Step s1 = make_step(1, "Search first, think later.");
    s1.tool_call = make_call(ToolKind::web_search, "query", task.question);
    ProxyResponse r1 = web_search(corpus, task.question, env);
    s1.tool_response = r1;
    t.steps.push_back(std::move(s1));

    std::string query2 =
        variant == 4 ? task.question : task.entity + " overview";
    Step s2 = make_step(2, " More searching can only help.");
    s2.contract = gamed_contract(r1);
    s2.tool_call = make_call(ToolKind::web_search, "query", query2);
    ProxyResponse r2 = web_search(corpus, query2, env);
    s2.tool_response = r2;
    t.steps.push_back(std::move(s2));

    Step s3 = make_step(3, " That should be enough to answer something.");
    s3.contract = gamed_contract(r2);
    t.steps.push_back(std::move(s3));

    t.answer = "the Zenith Protocol";
    return t;
}

EpisodeResult run_episode(Policy& policy, const SimTask& task,
                          const Corpus& corpus, std::uint64_t seed,
                          int b_max) {
    EpisodeResult out;
    out.trajectory = canonicalized(policy.run(task, corpus, seed));
    OverlapHelpfulnessOracle oracle;
    OverlapJudge judge;
    SnippetPoolPerturber perturber;
    ScoreConfig cfg;
    cfg.b_max = b_max;
    cfg.seed = seed;
    out.reward = score_trajectory(out.trajectory, task.gold_answer, oracle,
                                  judge, perturber, cfg);
    return out;
}

SimSummary simulate_batch(int episodes, std::uint64_t seed, int num_tasks,
                          int b_max) {
    SimWorld world = make_synthetic_world(seed, num_tasks);
    GroundedPolicy grounded;
    HackingPolicy hacking;

    SimSummary summary;
    double sum_g = 0.0, sum_h = 0.0;
    for (int e = 0; e < episodes; ++e) {
        const SimTask& task =
            world.tasks[static_cast<std::size_t>(e) % world.tasks.size()];
        std::uint64_t g_seed = probe_seed(seed, e);
        std::uint64_t h_seed = probe_seed(seed ^ 0x5eedULL, e);

        auto g = run_episode(grounded, task, world.corpus, g_seed, b_max);
        auto h = run_episode(hacking, task, world.corpus, h_seed, b_max);

        SimEpisode row;
        row.index = e;
        row.question = task.question;
        row.grounded_final = g.reward.final_reward;
        row.hacking_final = h.reward.final_reward;
        row.hacking_variant = HackingPolicy::variant_for(h_seed);
        summary.episodes.push_back(std::move(row));
        sum_g += g.reward.final_reward;
        sum_h += h.reward.final_reward;
    }
    if (episodes > 0) {
        summary.mean_grounded = sum_g / episodes;
        summary.mean_hacking = sum_h / episodes;
        summary.separation = summary.mean_grounded - summary.mean_hacking;
    }
    return summary;
}

}  // namespace evaudit
