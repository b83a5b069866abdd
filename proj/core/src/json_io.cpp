#include "evaudit/json_io.hpp"

#include <fstream>

#include <json.hpp>

namespace evaudit {

namespace {

using nlohmann::json;

json item_to_json(const ReferenceItem& item) {
    json j;
    j["id"] = item.id;
    j["source"] = to_string(item.source);
    j["granularity"] = to_string(item.granularity);
    if (item.title) j["title"] = *item.title;
    if (item.url) j["url"] = *item.url;
    j["content"] = item.content;
    return j;
}

ReferenceItem item_from_json(const json& j) {
    if (!j.is_object() || !j.contains("id") ||
        !j["id"].is_number_integer() || !j.contains("source") ||
        !j["source"].is_string() || !j.contains("content") ||
        !j["content"].is_string()) {
        throw ConfigError("reference item needs integer id, source, content");
    }
    ReferenceItem item;
    item.id = j["id"].get<int>();
    auto src = source_from_string(j["source"].get<std::string>());
    if (!src) throw ConfigError("unknown reference item source");
    item.source = *src;
    if (j.contains("granularity") && j["granularity"].is_string()) {
        auto g = granularity_from_string(j["granularity"].get<std::string>());
        if (!g) throw ConfigError("granularity must be page or chunk");
        item.granularity = *g;
    } else {
        item.granularity = item.source == Source::web_search
                               ? Granularity::page
                               : Granularity::chunk;
    }
    if (j.contains("title") && j["title"].is_string()) {
        item.title = j["title"].get<std::string>();
    }
    if (j.contains("url") && j["url"].is_string()) {
        item.url = j["url"].get<std::string>();
    }
    item.content = j["content"].get<std::string>();
    return item;
}

}  // namespace

std::string trajectory_to_json(const Trajectory& t) {
    json j;
    j["query"] = t.query;
    auto steps = json::array();
    for (const auto& s : t.steps) {
        json js;
        js["index"] = s.index;
        js["think"] = s.think;
        if (s.contract) {
            json jc;
            jc["helpful"] = to_string(s.contract->helpful);
            if (s.contract->refs) {
                jc["refs"] = *s.contract->refs;
            } else {
                jc["refs"] = nullptr;
            }
            js["contract"] = std::move(jc);
        }
        if (s.tool_call) {
            json jt;
            jt["tool"] = s.tool_call->tool_name.empty()
                             ? to_string(s.tool_call->tool)
                             : s.tool_call->tool_name;
            auto args = json::object();
            for (const auto& [k, v] : s.tool_call->arguments) args[k] = v;
            jt["arguments"] = std::move(args);
            for (const auto& [k, v] : s.tool_call->extras) {
                auto pv = json::parse(v, nullptr, false);
                jt[k] = pv.is_discarded() ? json(v) : pv;
            }
            js["tool_call"] = std::move(jt);
        }
        if (s.tool_response) {
            auto items = json::array();
            for (const auto& item : s.tool_response->items) {
                items.push_back(item_to_json(item));
            }
            js["tool_response"] = json{{"items", std::move(items)}};
        }
        steps.push_back(std::move(js));
    }
    j["steps"] = std::move(steps);
    j["answer"] = t.answer ? json(*t.answer) : json(nullptr);
    if (t.raw_text) j["raw"] = *t.raw_text;
    return j.dump();
}

Trajectory trajectory_from_json(const std::string& record) {
    auto j = json::parse(record, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
        throw ConfigError("record is not a JSON object");
    }
    std::string query = j.value("query", std::string());
    if (j.contains("raw")) {
        if (!j["raw"].is_string()) {
            throw ConfigError("\"raw\" must be a string");
        }
        return parse_trajectory_relaxed(j["raw"].get<std::string>(),
                                        std::move(query));
    }
    if (!j.contains("steps") || !j["steps"].is_array()) {
        throw ConfigError("record needs a \"steps\" array or a \"raw\" field");
    }
    Trajectory t;
    t.query = std::move(query);
    int position = 0;
    for (const auto& js : j["steps"]) {
        ++position;
        if (!js.is_object()) throw ConfigError("step must be an object");
        Step s;
        s.index = js.value("index", position);
        if (s.index != position) {
            throw ConfigError("step index " + std::to_string(s.index) +
                              " does not match its position " +
                              std::to_string(position));
        }
        s.think = js.value("think", std::string());
        if (js.contains("contract") && !js["contract"].is_null()) {
            const auto& jc = js["contract"];
            if (!jc.is_object() || !jc.contains("helpful") ||
                !jc["helpful"].is_string()) {
                throw ConfigError("contract needs a helpful string");
            }
            std::string h = jc["helpful"].get<std::string>();
            if (h != "yes" && h != "no") {
                throw ConfigError("helpful must be yes or no");
            }
            Contract c;
            c.helpful = h == "yes" ? Helpful::yes : Helpful::no;
            if (jc.contains("refs") && !jc["refs"].is_null()) {
                if (!jc["refs"].is_array()) {
                    throw ConfigError("refs must be null or an array");
                }
                std::vector<int> ids;
                for (const auto& r : jc["refs"]) {
                    if (!r.is_number_integer()) {
                        throw ConfigError("refs must hold integers");
                    }
                    ids.push_back(r.get<int>());
                }
                c.refs = std::move(ids);
            }
            s.contract = std::move(c);
        }
        if (js.contains("tool_call") && !js["tool_call"].is_null()) {
            const auto& jt = js["tool_call"];
            if (!jt.is_object() || !jt.contains("tool") ||
                !jt["tool"].is_string()) {
                throw ConfigError("tool_call needs a tool string");
            }
            ToolCall tc;
            tc.tool_name = jt["tool"].get<std::string>();
            tc.tool = tool_kind_from_string(tc.tool_name);
            if (jt.contains("arguments")) {
                if (!jt["arguments"].is_object()) {
                    throw ConfigError("arguments must be an object");
                }
                for (const auto& [k, v] : jt["arguments"].items()) {
                    tc.arguments[k] =
                        v.is_string() ? v.get<std::string>() : v.dump();
                }
            }
            for (const auto& [k, v] : jt.items()) {
                if (k != "tool" && k != "arguments") tc.extras[k] = v.dump();
            }
            s.tool_call = std::move(tc);
        }
        if (js.contains("tool_response") && !js["tool_response"].is_null()) {
            const auto& jr = js["tool_response"];
            if (!jr.is_object() || !jr.contains("items") ||
                !jr["items"].is_array()) {
                throw ConfigError("tool_response needs an items array");
            }
            ProxyResponse resp;
            for (const auto& ji : jr["items"]) {
                resp.items.push_back(item_from_json(ji));
            }
            s.tool_response = std::move(resp);
        }
        t.steps.push_back(std::move(s));
    }
    if (j.contains("answer") && !j["answer"].is_null()) {
        if (!j["answer"].is_string()) {
            throw ConfigError("answer must be a string or null");
        }
        t.answer = j["answer"].get<std::string>();
    }
    return t;
}

std::vector<Trajectory> load_trajectories_jsonl(std::istream& in) {
    std::vector<Trajectory> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        bool blank = true;
        for (char c : line) {
            if (c != ' ' && c != '\t') {
                blank = false;
                break;
            }
        }
        if (blank) continue;
        try {
            out.push_back(trajectory_from_json(line));
        } catch (const ConfigError& e) {
            throw ConfigError("line " + std::to_string(lineno) + ": " +
                              e.what());
        }
    }
    return out;
}

std::vector<Trajectory> load_trajectories_jsonl(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open trajectory file: " + path);
    return load_trajectories_jsonl(in);
}

std::vector<std::string> load_gold_answers(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open gold answer file: " + path);
    std::vector<std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto j = json::parse(line, nullptr, false);
        if (!j.is_discarded() && j.is_string()) {
            out.push_back(j.get<std::string>());
        } else if (!j.is_discarded() && j.is_object() &&
                   j.contains("answer") && j["answer"].is_string()) {
            out.push_back(j["answer"].get<std::string>());
        } else {
            out.push_back(line);
        }
    }
    return out;
}

}  // namespace evaudit
