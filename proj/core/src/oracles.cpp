#include "evaudit/oracles.hpp"

#include <unordered_set>

#include <httplib.h>
#include <json.hpp>

#include "evaudit/text.hpp"

namespace evaudit {

namespace {

std::unordered_set<std::string> evidence_token_pool(
    const std::vector<ReferenceItem>& evidence) {
    std::unordered_set<std::string> pool;
    for (const auto& item : evidence) {
        for (auto& tok : tokenize(item.content)) {
            pool.insert(std::move(tok));
        }
    }
    return pool;
}

nlohmann::json evidence_to_json(const std::vector<ReferenceItem>& evidence) {
    auto arr = nlohmann::json::array();
    for (const auto& item : evidence) {
        nlohmann::json j;
        j["id"] = item.id;
        j["source"] = to_string(item.source);
        j["granularity"] = to_string(item.granularity);
        if (item.title) j["title"] = *item.title;
        if (item.url) j["url"] = *item.url;
        j["content"] = item.content;
        arr.push_back(std::move(j));
    }
    return arr;
}

double remote_score(const std::string& base_url, const nlohmann::json& req) {
    httplib::Client client(base_url);
    client.set_connection_timeout(5, 0);
    client.set_read_timeout(10, 0);
    auto res = client.Post("/score", req.dump(), "application/json");
    if (!res) {
        throw OracleFailure("oracle endpoint unreachable: " + base_url);
    }
    if (res->status != 200) {
        throw OracleFailure("oracle endpoint returned status " +
                            std::to_string(res->status));
    }
    auto body = nlohmann::json::parse(res->body, nullptr, false);
    if (body.is_discarded() || !body.is_object() || !body.contains("value") ||
        !body["value"].is_number()) {
        throw OracleFailure("oracle reply is not {\"value\": <number>}");
    }
    return body["value"].get<double>();
}

}  // namespace

double OverlapHelpfulnessOracle::score(
    const std::string& question, const std::vector<ReferenceItem>& evidence) {
    auto q_tokens = token_set(question);
    if (q_tokens.empty()) return 0.0;
    auto pool = evidence_token_pool(evidence);
    std::size_t hits = 0;
    for (const auto& tok : q_tokens) {
        if (pool.count(tok)) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(q_tokens.size());
}

double OverlapJudge::score(const std::string& /*question*/,
                           const std::string& answer,
                           const std::vector<ReferenceItem>& evidence) {
    auto ans_tokens = normalize_answer_tokens(answer);
    if (ans_tokens.empty()) return 0.0;
    std::unordered_set<std::string> distinct(ans_tokens.begin(),
                                             ans_tokens.end());
    auto pool = evidence_token_pool(evidence);
    std::size_t hits = 0;
    for (const auto& tok : distinct) {
        if (pool.count(tok)) ++hits;
    }
    double contained =
        static_cast<double>(hits) / static_cast<double>(distinct.size());
    if (contained >= 1.0) return 1.0;
    if (contained >= 0.5) return 0.5;
    return 0.0;
}

RemoteHelpfulnessOracle::RemoteHelpfulnessOracle(std::string base_url)
    : base_url_(std::move(base_url)) {}

double RemoteHelpfulnessOracle::score(
    const std::string& question, const std::vector<ReferenceItem>& evidence) {
    nlohmann::json req;
    req["kind"] = "helpfulness";
    req["question"] = question;
    req["evidence"] = evidence_to_json(evidence);
    double v = remote_score(base_url_, req);
    if (v < 0.0 || v > 1.0) {
        throw OracleFailure("helpfulness score outside [0,1]: " +
                            std::to_string(v));
    }
    return v;
}

RemoteJudge::RemoteJudge(std::string base_url)
    : base_url_(std::move(base_url)) {}

double RemoteJudge::score(const std::string& question,
                          const std::string& answer,
                          const std::vector<ReferenceItem>& evidence) {
    nlohmann::json req;
    req["kind"] = "judge";
    req["question"] = question;
    req["answer"] = answer;
    req["evidence"] = evidence_to_json(evidence);
    double v = remote_score(base_url_, req);
    if (v != 0.0 && v != 0.5 && v != 1.0) {
        throw OracleFailure("judge score must be one of {0, 0.5, 1}, got " +
                            std::to_string(v));
    }
    return v;
}

}  // namespace evaudit
