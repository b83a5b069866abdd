// evaudit — inspect, score, perturb, filter, and simulate tagged agent
// trajectories from the command line.
//
// Inputs are JSONL record files by default; --raw treats the whole input
// file as a single raw tagged trajectory instead. Per-record results go to
// stdout as JSON lines; human-oriented summaries go to stderr.

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "evaudit/analytics.hpp"
#include "evaudit/environment.hpp"
#include "evaudit/errors.hpp"
#include "evaudit/filter.hpp"
#include "evaudit/json_io.hpp"
#include "evaudit/masking.hpp"
#include "evaudit/oracles.hpp"
#include "evaudit/perturbation.hpp"
#include "evaudit/protocol.hpp"
#include "evaudit/rewards.hpp"
#include "evaudit/simulate.hpp"
#include "evaudit/validation.hpp"

namespace {

using nlohmann::json;
using namespace evaudit;

struct InputOptions {
    std::string path;
    bool raw = false;
    std::string query;  // query for --raw input
};

std::vector<Trajectory> load_input(const InputOptions& in) {
    if (!in.raw) return load_trajectories_jsonl(in.path);
    std::ifstream f(in.path);
    if (!f) throw ConfigError("cannot open input file: " + in.path);
    std::stringstream buf;
    buf << f.rdbuf();
    std::vector<Trajectory> out;
    out.push_back(parse_trajectory_relaxed(buf.str(), in.query));
    return out;
}

void add_input_options(CLI::App* cmd, InputOptions& in) {
    cmd->add_option("--in", in.path, "input file (JSONL records, or raw tagged text with --raw)")
        ->required();
    cmd->add_flag("--raw", in.raw, "treat the input file as one raw tagged trajectory");
    cmd->add_option("--query", in.query, "question for --raw input");
}

struct OracleOptions {
    std::string oracle = "stub";
    std::string judge = "stub";
    std::string oracle_url;
    std::string judge_url;
};

void add_oracle_options(CLI::App* cmd, OracleOptions& o) {
    cmd->add_option("--oracle", o.oracle, "helpfulness oracle: stub or remote")
        ->check(CLI::IsMember({"stub", "remote"}));
    cmd->add_option("--judge", o.judge, "answer judge: stub or remote")
        ->check(CLI::IsMember({"stub", "remote"}));
    cmd->add_option("--oracle-url", o.oracle_url, "base URL for --oracle remote");
    cmd->add_option("--judge-url", o.judge_url, "base URL for --judge remote");
}

std::unique_ptr<HelpfulnessOracle> make_oracle(const OracleOptions& o) {
    if (o.oracle == "remote") {
        if (o.oracle_url.empty()) {
            throw ConfigError("--oracle remote needs --oracle-url");
        }
        return std::make_unique<RemoteHelpfulnessOracle>(o.oracle_url);
    }
    return std::make_unique<OverlapHelpfulnessOracle>();
}

std::unique_ptr<Judge> make_judge(const OracleOptions& o) {
    if (o.judge == "remote") {
        if (o.judge_url.empty()) {
            throw ConfigError("--judge remote needs --judge-url");
        }
        return std::make_unique<RemoteJudge>(o.judge_url);
    }
    return std::make_unique<OverlapJudge>();
}

json verdicts_json(const std::vector<StepVerdict>& verdicts) {
    auto arr = json::array();
    for (const auto& v : verdicts) {
        arr.push_back({{"parse_ok", v.parse_ok},
                       {"consistency_ok", v.consistency_ok},
                       {"ids_valid", v.ids_valid},
                       {"passed", v.passed()}});
    }
    return arr;
}

json probes_json(const std::vector<PerturbationRecord>& probes) {
    auto arr = json::array();
    for (const auto& p : probes) {
        arr.push_back({{"step", p.step_index},
                       {"kind", to_string(p.kind)},
                       {"q_before", p.q_before},
                       {"q_after", p.q_after},
                       {"sign", p.sign},
                       {"value", p.value},
                       {"touched_ids", p.touched_ids}});
    }
    return arr;
}

int cmd_validate(const InputOptions& in) {
    auto records = load_input(in);
    bool all_ok = true;
    std::size_t idx = 0;
    for (const auto& t : records) {
        auto fmt = check_format(t);
        auto verdicts = check_steps(t);
        json j;
        j["index"] = idx;
        j["format_valid"] = fmt.valid;
        auto failures = json::array();
        for (const auto& f : fmt.failures) {
            failures.push_back({{"step", f.step_index},
                                {"tag", f.tag},
                                {"category", to_string(f.category)}});
        }
        j["failures"] = failures;
        j["verdicts"] = verdicts_json(verdicts);
        bool steps_ok = true;
        for (std::size_t i = 1; i < verdicts.size(); ++i) {
            if (!verdicts[i].passed()) steps_ok = false;
        }
        j["steps_passed"] = steps_ok;
        std::cout << j.dump() << '\n';
        if (!fmt.valid || !steps_ok) all_ok = false;
        ++idx;
    }
    std::cerr << (all_ok ? "all records valid" : "some records invalid")
              << " (" << records.size() << " checked)\n";
    return all_ok ? 0 : 1;
}

int cmd_score(const InputOptions& in, const OracleOptions& oracles,
              const std::string& gold_path, const std::string& gold_text,
              int b_max, std::uint64_t seed) {
    auto records = load_input(in);
    std::vector<std::string> gold;
    if (!gold_text.empty()) {
        gold.assign(records.size(), gold_text);
    } else {
        if (gold_path.empty()) {
            throw ConfigError("score needs --gold FILE or --gold-text");
        }
        gold = load_gold_answers(gold_path);
        if (gold.size() != records.size()) {
            throw ConfigError(
                "gold answers are line-aligned with records: got " +
                std::to_string(gold.size()) + " answers for " +
                std::to_string(records.size()) + " records");
        }
    }
    auto oracle = make_oracle(oracles);
    auto judge = make_judge(oracles);
    SnippetPoolPerturber perturber;
    ScoreConfig cfg;
    cfg.b_max = b_max;
    cfg.seed = seed;

    std::vector<RewardBreakdown> rows;
    for (std::size_t i = 0; i < records.size(); ++i) {
        auto r = score_trajectory(records[i], gold[i], *oracle, *judge,
                                  perturber, cfg);
        json j;
        j["index"] = i;
        j["format_valid"] = r.format_valid;
        j["cite"] = r.cite;
        j["pt"] = r.pt ? json(*r.pt) : json(nullptr);
        j["accuracy"] = r.accuracy;
        j["answer_f1"] = r.answer_f1;
        j["answer_score"] = r.answer_score;
        j["final"] = r.final_reward;
        j["verdicts"] = verdicts_json(r.step_verdicts);
        j["probes"] = probes_json(r.probes);
        std::cout << j.dump() << '\n';
        rows.push_back(std::move(r));
    }

    auto rep = summarize_rewards(rows);
    json s;
    s["rollouts"] = rep.rollouts;
    s["format_valid"] = rep.format_valid;
    s["steps_checked"] = rep.steps_checked;
    s["steps_passed"] = rep.steps_passed;
    s["probes_run"] = rep.probes_run;
    s["mean_cite"] = rep.mean_cite;
    s["mean_pt"] = rep.mean_pt;
    s["mean_accuracy"] = rep.mean_accuracy;
    s["mean_answer_f1"] = rep.mean_answer_f1;
    s["mean_answer_score"] = rep.mean_answer_score;
    s["mean_final"] = rep.mean_final;
    std::cerr << "summary " << s.dump() << '\n';
    return 0;
}

int cmd_perturb(const InputOptions& in, const OracleOptions& oracles,
                int b_max, std::uint64_t seed) {
    auto records = load_input(in);
    auto oracle = make_oracle(oracles);
    SnippetPoolPerturber perturber;
    ScoreConfig cfg;
    cfg.b_max = b_max;
    cfg.seed = seed;
    for (std::size_t i = 0; i < records.size(); ++i) {
        auto verdicts = check_steps(records[i]);
        auto probes =
            run_perturb_probes(records[i], verdicts, *oracle, perturber, cfg);
        for (const auto& p : probes) {
            json j;
            j["index"] = i;
            j["step"] = p.step_index;
            j["kind"] = to_string(p.kind);
            j["q_before"] = p.q_before;
            j["q_after"] = p.q_after;
            j["sign"] = p.sign;
            j["value"] = p.value;
            j["touched_ids"] = p.touched_ids;
            std::cout << j.dump() << '\n';
        }
    }
    return 0;
}

int cmd_filter(const std::string& in_path, const std::string& accept_path,
               const std::string& report_path, int min_steps, int max_steps) {
    std::ifstream in(in_path);
    if (!in) throw ConfigError("cannot open input file: " + in_path);
    std::ofstream accept(accept_path);
    if (!accept) throw ConfigError("cannot open output file: " + accept_path);
    std::ofstream report;
    std::ostream* report_ptr = nullptr;
    if (!report_path.empty()) {
        report.open(report_path);
        if (!report) {
            throw ConfigError("cannot open report file: " + report_path);
        }
        report_ptr = &report;
    }
    auto rep = filter_jsonl(in, accept, report_ptr, min_steps, max_steps);
    json j;
    j["total"] = rep.total;
    j["accepted"] = rep.accepted;
    j["format_invalid"] = rep.format_invalid;
    j["step_check_failed"] = rep.step_check_failed;
    j["too_short"] = rep.too_short;
    j["too_long"] = rep.too_long;
    j["unreadable"] = rep.unreadable;
    std::cout << j.dump() << '\n';
    return 0;
}

int cmd_stats(const InputOptions& in, const std::string& format) {
    auto records = load_input(in);
    auto stats = tool_call_stats(records);
    if (format == "json") {
        json j;
        j["total"] = stats.total;
        j["counts"] = stats.counts;
        auto pct = json::object();
        for (const auto& [name, n] : stats.counts) {
            (void)n;
            pct[name] = stats.percent(name);
        }
        j["percent"] = pct;
        std::cout << j.dump() << '\n';
        return 0;
    }
    std::printf("%-16s %8s %8s\n", "tool", "calls", "percent");
    for (const auto& [name, n] : stats.counts) {
        std::printf("%-16s %8zu %7.1f%%\n", name.c_str(), n,
                    stats.percent(name));
    }
    std::printf("%-16s %8zu\n", "total", stats.total);
    return 0;
}

int cmd_mask(const InputOptions& in) {
    auto records = load_input(in);
    bool any_error = false;
    for (std::size_t i = 0; i < records.size(); ++i) {
        json j;
        j["index"] = i;
        try {
            auto spans = compute_masks(records[i]);
            auto arr = json::array();
            for (const auto& s : spans) {
                arr.push_back(
                    {{"begin", s.begin}, {"end", s.end}, {"train", s.train}});
            }
            j["spans"] = arr;
        } catch (const MissingOffsets& e) {
            j["error"] = e.what();
            any_error = true;
        }
        std::cout << j.dump() << '\n';
    }
    return any_error ? 1 : 0;
}

int cmd_simulate(int episodes, std::uint64_t seed, int tasks, int b_max,
                 bool as_json) {
    auto summary = simulate_batch(episodes, seed, tasks, b_max);
    if (as_json) {
        json j;
        j["episodes"] = summary.episodes.size();
        j["mean_grounded"] = summary.mean_grounded;
        j["mean_hacking"] = summary.mean_hacking;
        j["separation"] = summary.separation;
        auto rows = json::array();
        for (const auto& e : summary.episodes) {
            rows.push_back({{"index", e.index},
                            {"question", e.question},
                            {"grounded_final", e.grounded_final},
                            {"hacking_final", e.hacking_final},
                            {"hacking_variant", e.hacking_variant}});
        }
        j["rows"] = rows;
        std::cout << j.dump() << '\n';
        return 0;
    }
    std::printf("%5s  %9s  %9s  %s\n", "ep", "grounded", "hacking",
                "question");
    for (const auto& e : summary.episodes) {
        std::printf("%5d  %9.4f  %9.4f  %s\n", e.index, e.grounded_final,
                    e.hacking_final, e.question.c_str());
    }
    std::printf("mean grounded %.4f | mean hacking %.4f | separation %.4f\n",
                summary.mean_grounded, summary.mean_hacking,
                summary.separation);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"inspect, score, and stress evidence-grounded agent "
                 "trajectories"};
    app.require_subcommand(1);

    InputOptions val_in;
    auto* validate = app.add_subcommand(
        "validate", "check format and step declarations");
    add_input_options(validate, val_in);

    InputOptions score_in;
    OracleOptions score_oracles;
    std::string gold_path, gold_text;
    int score_bmax = 1;
    std::uint64_t score_seed = 0;
    auto* score = app.add_subcommand("score", "compute rollout rewards");
    add_input_options(score, score_in);
    add_oracle_options(score, score_oracles);
    score->add_option("--gold", gold_path, "gold answers, line-aligned JSONL");
    score->add_option("--gold-text", gold_text,
                      "one gold answer applied to every record");
    score->add_option("--b-max", score_bmax, "probe budget cap")
        ->check(CLI::NonNegativeNumber);
    score->add_option("--seed", score_seed, "probe sampling seed");

    InputOptions pert_in;
    OracleOptions pert_oracles;
    int pert_bmax = 1;
    std::uint64_t pert_seed = 0;
    auto* perturb = app.add_subcommand(
        "perturb", "run helpfulness probes and emit their records");
    add_input_options(perturb, pert_in);
    add_oracle_options(perturb, pert_oracles);
    perturb->add_option("--b-max", pert_bmax, "probe budget cap")
        ->check(CLI::NonNegativeNumber);
    perturb->add_option("--seed", pert_seed, "probe sampling seed");

    std::string filter_in, filter_accept, filter_report;
    int min_steps = 3, max_steps = 10;
    auto* filter = app.add_subcommand(
        "filter", "keep only clean startup trajectories");
    filter->add_option("--in", filter_in, "input JSONL records")->required();
    filter->add_option("--out-accept", filter_accept,
                       "file for accepted records")->required();
    filter->add_option("--out-report", filter_report,
                       "file for per-line rejection reasons");
    filter->add_option("--min-steps", min_steps, "minimum step count");
    filter->add_option("--max-steps", max_steps, "maximum step count");

    InputOptions stats_in;
    std::string stats_format = "table";
    auto* stats = app.add_subcommand("stats", "tool-call usage breakdown");
    add_input_options(stats, stats_in);
    stats->add_option("--format", stats_format, "table or json")
        ->check(CLI::IsMember({"table", "json"}));

    InputOptions mask_in;
    auto* mask = app.add_subcommand(
        "mask", "emit loss-mask spans over the raw tagged text");
    add_input_options(mask, mask_in);

    int sim_episodes = 20, sim_tasks = 20, sim_bmax = 1;
    std::uint64_t sim_seed = 0;
    bool sim_json = false;
    auto* simulate = app.add_subcommand(
        "simulate", "score scripted grounded vs gaming policies");
    simulate->add_option("--episodes", sim_episodes, "episodes to run")
        ->check(CLI::PositiveNumber);
    simulate->add_option("--seed", sim_seed, "world and probe seed");
    simulate->add_option("--tasks", sim_tasks, "synthetic task count")
        ->check(CLI::PositiveNumber);
    simulate->add_option("--b-max", sim_bmax, "probe budget cap")
        ->check(CLI::NonNegativeNumber);
    simulate->add_flag("--json", sim_json, "emit one JSON object");

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate->parsed()) return cmd_validate(val_in);
        if (score->parsed()) {
            return cmd_score(score_in, score_oracles, gold_path, gold_text,
                             score_bmax, score_seed);
        }
        if (perturb->parsed()) {
            return cmd_perturb(pert_in, pert_oracles, pert_bmax, pert_seed);
        }
        if (filter->parsed()) {
            return cmd_filter(filter_in, filter_accept, filter_report,
                              min_steps, max_steps);
        }
        if (stats->parsed()) return cmd_stats(stats_in, stats_format);
        if (mask->parsed()) return cmd_mask(mask_in);
        if (simulate->parsed()) {
            return cmd_simulate(sim_episodes, sim_seed, sim_tasks, sim_bmax,
                                sim_json);
        }
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const OracleFailure& e) {
        std::cerr << "oracle failure: " << e.what() << '\n';
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
