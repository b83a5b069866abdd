#include "evaudit/protocol.hpp"

#include <cctype>
#include <sstream>
#include <string_view>

#include <json.hpp>

namespace evaudit {

namespace {

constexpr std::string_view kThinkOpen = "<think>";
constexpr std::string_view kThinkClose = "</think>";
constexpr std::string_view kHelpfulOpen = "<helpful>";
constexpr std::string_view kHelpfulClose = "</helpful>";
constexpr std::string_view kRefOpen = "<ref>";
constexpr std::string_view kRefClose = "</ref>";
constexpr std::string_view kCallOpen = "<tool_call>";
constexpr std::string_view kCallClose = "</tool_call>";
constexpr std::string_view kRespOpen = "<tool_response>";
constexpr std::string_view kRespClose = "</tool_response>";
constexpr std::string_view kItemOpen = "<ref_item";
constexpr std::string_view kItemClose = "</ref_item>";
constexpr std::string_view kAnswerOpen = "<answer>";
constexpr std::string_view kAnswerClose = "</answer>";

constexpr std::size_t npos = std::string::npos;

bool is_ws(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

std::string escape_text(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string escape_attr(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string unescape(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        if (s[i] == '&') {
            std::string_view rest = s.substr(i);
            if (rest.starts_with("&amp;")) { out += '&'; i += 5; continue; }
            if (rest.starts_with("&lt;")) { out += '<'; i += 4; continue; }
            if (rest.starts_with("&gt;")) { out += '>'; i += 4; continue; }
            if (rest.starts_with("&quot;")) { out += '"'; i += 6; continue; }
            if (rest.starts_with("&apos;")) { out += '\''; i += 6; continue; }
        }
        out += s[i++];
    }
    return out;
}

std::string trim_copy(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && is_ws(s[b])) ++b;
    while (e > b && is_ws(s[e - 1])) --e;
    return std::string(s.substr(b, e - b));
}

class Parser {
public:
    Parser(const std::string& raw, bool strict) : raw_(raw), strict_(strict) {}

    Trajectory run(std::string query) {
        out_.query = std::move(query);
        out_.raw_text = raw_;
        while (true) {
            skip_ws();
            if (pos_ >= raw_.size()) break;
            if (raw_[pos_] != '<') {
                fail(ParseCategory::out_of_order, pos_, "text",
                     "free text between elements");
                pos_ = raw_.find('<', pos_);
                if (pos_ == npos) pos_ = raw_.size();
                continue;
            }
            if (starts_with(kThinkOpen)) {
                handle_think();
            } else if (starts_with(kCallOpen)) {
                handle_call();
            } else if (starts_with(kRespOpen)) {
                handle_response();
            } else if (starts_with(kAnswerOpen)) {
                handle_answer();
            } else if (starts_with("</")) {
                fail(ParseCategory::out_of_order, pos_, "close",
                     "unmatched closing tag");
                std::size_t gt = raw_.find('>', pos_);
                pos_ = gt == npos ? raw_.size() : gt + 1;
            } else {
                handle_unknown();
            }
        }
        finish();
        return std::move(out_);
    }

private:
    enum class At { top, think_done, call_done, answered };

    const std::string& raw_;
    bool strict_;
    std::size_t pos_ = 0;
    At at_ = At::top;
    Trajectory out_;
    std::optional<Step> cur_;

    void skip_ws() {
        while (pos_ < raw_.size() && is_ws(raw_[pos_])) ++pos_;
    }

    bool starts_with(std::string_view s) const {
        return raw_.compare(pos_, s.size(), s) == 0;
    }

    // Strict mode: throws. Relaxed mode: records a defect on the open step
    // (or the trajectory when no step is open) and returns.
    void fail(ParseCategory cat, std::size_t offset, std::string tag,
              const std::string& what) {
        int idx = cur_ ? cur_->index : 0;
        if (strict_) {
            std::ostringstream msg;
            if (idx > 0) msg << "step " << idx << ": ";
            msg << what << " (byte " << offset << ")";
            throw ParseError(cat, offset, idx, msg.str());
        }
        Defect d{std::move(tag), cat, offset};
        if (cur_) {
            cur_->defects.push_back(std::move(d));
        } else {
            out_.defects.push_back(std::move(d));
        }
    }

    void flush_step() {
        if (cur_) {
            out_.steps.push_back(std::move(*cur_));
            cur_.reset();
        }
    }

    void handle_think() {
        std::size_t open = pos_;
        if (at_ == At::think_done) {
            fail(ParseCategory::out_of_order, open, "think",
                 "step has no tool call");
            flush_step();
        } else if (at_ == At::call_done) {
            fail(ParseCategory::out_of_order, open, "tool_call",
                 "tool call has no response");
            flush_step();
        } else if (at_ == At::answered) {
            fail(ParseCategory::out_of_order, open, "think",
                 "content after answer");
        }
        pos_ += kThinkOpen.size();
        cur_.emplace();
        cur_->index = static_cast<int>(out_.steps.size()) + 1;
        at_ = At::think_done;

        // Optional declaration block; mandatory from step 2 on.
        std::size_t save = pos_;
        skip_ws();
        bool contract_broken = false;
        if (starts_with(kHelpfulOpen)) {
            parse_contract(contract_broken);
        } else {
            pos_ = save;
            if (cur_->index >= 2) {
                fail(ParseCategory::malformed_contract, pos_, "helpful",
                     "missing step contract");
            }
        }

        // Free text up to </think>. The serializer escapes '<', so any raw
        // tag in here is a structural violation.
        std::size_t text_start = pos_;
        std::size_t scan = pos_;
        std::size_t close = npos;
        bool reported_inner = contract_broken;
        while (true) {
            std::size_t lt = raw_.find('<', scan);
            if (lt == npos) break;
            if (raw_.compare(lt, kThinkClose.size(), kThinkClose) == 0) {
                close = lt;
                break;
            }
            if (!reported_inner) {
                if (raw_.compare(lt, 8, "<helpful") == 0 ||
                    raw_.compare(lt, 4, "<ref") == 0) {
                    fail(ParseCategory::malformed_contract, lt, "helpful",
                         "declaration must open the think block");
                } else {
                    fail(ParseCategory::out_of_order, lt, "think",
                         "markup inside think text");
                }
                reported_inner = true;
            }
            scan = lt + 1;
        }
        if (close == npos) {
            fail(ParseCategory::unclosed_tag, open, "think",
                 "unclosed <think>");
            cur_->think = unescape(std::string_view(raw_).substr(text_start));
            cur_->think_span = {open, raw_.size()};
            pos_ = raw_.size();
            return;
        }
        cur_->think =
            unescape(std::string_view(raw_).substr(text_start, close - text_start));
        cur_->think_span = {open, close + kThinkClose.size()};
        pos_ = close + kThinkClose.size();
    }

    void parse_contract(bool& broken) {
        std::size_t cbegin = pos_;
        bool representable = true;

        pos_ += kHelpfulOpen.size();
        std::size_t hclose = raw_.find(kHelpfulClose, pos_);
        if (hclose == npos) {
            fail(ParseCategory::unclosed_tag, cbegin, "helpful",
                 "unclosed <helpful>");
            pos_ = cbegin;
            broken = true;
            return;
        }
        std::string hval = raw_.substr(pos_, hclose - pos_);
        Helpful helpful = Helpful::yes;
        if (hval == "yes") {
            helpful = Helpful::yes;
        } else if (hval == "no") {
            helpful = Helpful::no;
        } else {
            fail(ParseCategory::malformed_contract, pos_, "helpful",
                 "helpful must be yes or no");
            representable = false;
        }
        pos_ = hclose + kHelpfulClose.size();

        std::size_t before_ref = pos_;
        skip_ws();
        if (!starts_with(kRefOpen)) {
            fail(ParseCategory::malformed_contract, pos_, "ref",
                 "missing <ref> after <helpful>");
            pos_ = before_ref;
            return;
        }
        std::size_t ropen = pos_;
        pos_ += kRefOpen.size();
        std::size_t rclose = raw_.find(kRefClose, pos_);
        if (rclose == npos) {
            fail(ParseCategory::unclosed_tag, ropen, "ref", "unclosed <ref>");
            pos_ = cbegin;
            broken = true;
            return;
        }
        std::string rval = raw_.substr(pos_, rclose - pos_);
        pos_ = rclose + kRefClose.size();

        std::optional<std::vector<int>> refs;
        std::string trimmed = trim_copy(rval);
        if (trimmed == "null") {
            refs = std::nullopt;
        } else if (trimmed.empty()) {
            fail(ParseCategory::malformed_contract, ropen, "ref",
                 "empty citation list");
            refs = std::vector<int>{};
        } else {
            std::vector<int> ids;
            bool bad = false;
            std::size_t start = 0;
            while (start <= trimmed.size()) {
                std::size_t comma = trimmed.find(',', start);
                std::string tok = trim_copy(std::string_view(trimmed).substr(
                    start, (comma == npos ? trimmed.size() : comma) - start));
                if (tok.empty() ||
                    tok.find_first_not_of("0123456789") != std::string::npos) {
                    bad = true;
                    break;
                }
                long v = std::stol(tok);
                if (v < 1) {
                    bad = true;
                    break;
                }
                ids.push_back(static_cast<int>(v));
                if (comma == npos) break;
                start = comma + 1;
            }
            if (bad) {
                fail(ParseCategory::malformed_contract, ropen, "ref",
                     "citation ids must be positive integers");
                representable = false;
            } else {
                for (std::size_t i = 0; i < ids.size() && representable; ++i) {
                    for (std::size_t j = i + 1; j < ids.size(); ++j) {
                        if (ids[i] == ids[j]) {
                            fail(ParseCategory::malformed_contract, ropen,
                                 "ref", "duplicate citation id");
                            i = ids.size();
                            break;
                        }
                    }
                }
                refs = std::move(ids);
            }
        }
        if (representable) {
            cur_->contract = Contract{helpful, std::move(refs),
                                      ByteSpan{cbegin, pos_}};
        }
    }

    void handle_call() {
        std::size_t open = pos_;
        bool legal = (at_ == At::think_done);
        if (!legal) {
            fail(ParseCategory::out_of_order, open, "tool_call",
                 at_ == At::call_done ? "duplicate tool call in step"
                                      : "tool call without preceding think");
        }
        pos_ += kCallOpen.size();
        std::size_t close = raw_.find(kCallClose, pos_);
        if (close == npos) {
            fail(ParseCategory::unclosed_tag, open, "tool_call",
                 "unclosed <tool_call>");
            pos_ = raw_.size();
            return;
        }
        std::size_t pstart = pos_;
        std::string payload = raw_.substr(pos_, close - pos_);
        pos_ = close + kCallClose.size();

        ToolCall tc;
        tc.span = {open, pos_};
        auto j = nlohmann::json::parse(payload, nullptr, false);
        bool ok = j.is_object() && j.contains("tool") && j["tool"].is_string() &&
                  (!j.contains("arguments") || j["arguments"].is_object());
        if (!ok) {
            fail(ParseCategory::malformed_payload, pstart, "tool_call",
                 "payload must be a JSON object with a \"tool\" string");
            tc.tool = ToolKind::other;
        } else {
            tc.tool_name = j["tool"].get<std::string>();
            tc.tool = tool_kind_from_string(tc.tool_name);
            if (j.contains("arguments")) {
                for (auto& [k, v] : j["arguments"].items()) {
                    tc.arguments[k] =
                        v.is_string() ? v.get<std::string>() : v.dump();
                }
            }
            for (auto& [k, v] : j.items()) {
                if (k != "tool" && k != "arguments") tc.extras[k] = v.dump();
            }
        }
        if (legal) {
            cur_->tool_call = std::move(tc);
            at_ = At::call_done;
        }
    }

    void handle_response() {
        std::size_t open = pos_;
        bool legal = (at_ == At::call_done);
        if (!legal) {
            fail(ParseCategory::out_of_order, open, "tool_response",
                 "tool response without preceding tool call");
        }
        pos_ += kRespOpen.size();

        ProxyResponse resp;
        bool closed = false;
        while (true) {
            skip_ws();
            if (pos_ >= raw_.size()) break;
            if (starts_with(kRespClose)) {
                pos_ += kRespClose.size();
                closed = true;
                break;
            }
            if (starts_with(kItemOpen)) {
                parse_ref_item(resp);
                continue;
            }
            fail(ParseCategory::malformed_payload, pos_, "tool_response",
                 "expected <ref_item> inside tool response");
            std::size_t rc = raw_.find(kRespClose, pos_);
            if (rc == npos) {
                pos_ = raw_.size();
                break;
            }
            pos_ = rc;
        }
        if (!closed) {
            fail(ParseCategory::unclosed_tag, open, "tool_response",
                 "unclosed <tool_response>");
            resp.span = {open, raw_.size()};
        } else {
            resp.span = {open, pos_};
        }
        for (std::size_t i = 0; i < resp.items.size(); ++i) {
            bool dup = false;
            for (std::size_t j = i + 1; j < resp.items.size(); ++j) {
                if (resp.items[i].id == resp.items[j].id) {
                    fail(ParseCategory::malformed_payload, open, "ref_item",
                         "duplicate reference id in response");
                    dup = true;
                    break;
                }
            }
            if (dup) break;
        }
        if (legal) {
            cur_->tool_response = std::move(resp);
            flush_step();
            at_ = At::top;
        }
    }

    void parse_ref_item(ProxyResponse& resp) {
        std::size_t iopen = pos_;
        pos_ += kItemOpen.size();

        std::map<std::string, std::string> attrs;
        bool attr_ok = true;
        while (true) {
            skip_ws();
            if (pos_ >= raw_.size()) {
                attr_ok = false;
                break;
            }
            if (raw_[pos_] == '>') {
                ++pos_;
                break;
            }
            std::size_t nstart = pos_;
            while (pos_ < raw_.size() &&
                   (std::isalpha(static_cast<unsigned char>(raw_[pos_])) ||
                    raw_[pos_] == '_')) {
                ++pos_;
            }
            if (pos_ == nstart || pos_ >= raw_.size() || raw_[pos_] != '=') {
                attr_ok = false;
                break;
            }
            std::string name = raw_.substr(nstart, pos_ - nstart);
            ++pos_;
            if (pos_ >= raw_.size() || raw_[pos_] != '"') {
                attr_ok = false;
                break;
            }
            ++pos_;
            std::size_t vend = raw_.find('"', pos_);
            if (vend == npos) {
                attr_ok = false;
                break;
            }
            attrs[name] =
                unescape(std::string_view(raw_).substr(pos_, vend - pos_));
            pos_ = vend + 1;
        }
        if (!attr_ok) {
            fail(ParseCategory::malformed_payload, iopen, "ref_item",
                 "malformed <ref_item> attributes");
            std::size_t ic = raw_.find(kItemClose, iopen);
            std::size_t rc = raw_.find(kRespClose, iopen);
            if (ic != npos && (rc == npos || ic < rc)) {
                pos_ = ic + kItemClose.size();
            } else if (rc != npos) {
                pos_ = rc;
            } else {
                pos_ = raw_.size();
            }
            return;
        }

        std::size_t cstart = pos_;
        std::size_t cclose = raw_.find(kItemClose, pos_);
        if (cclose == npos) {
            fail(ParseCategory::unclosed_tag, iopen, "ref_item",
                 "unclosed <ref_item>");
            pos_ = raw_.size();
            return;
        }
        std::string content =
            unescape(std::string_view(raw_).substr(cstart, cclose - cstart));
        pos_ = cclose + kItemClose.size();

        std::string reason;
        auto id_it = attrs.find("id");
        auto src_it = attrs.find("source");
        auto gran_it = attrs.find("granularity");
        ReferenceItem item;
        if (id_it == attrs.end() ||
            id_it->second.empty() ||
            id_it->second.find_first_not_of("0123456789") != std::string::npos ||
            std::stol(id_it->second) < 1) {
            reason = "ref_item id must be a positive integer";
        } else if (src_it == attrs.end() ||
                   !source_from_string(src_it->second)) {
            reason = "ref_item source must name a registered proxy";
        } else if (gran_it == attrs.end() ||
                   !granularity_from_string(gran_it->second)) {
            reason = "ref_item granularity must be page or chunk";
        }
        if (!reason.empty()) {
            fail(ParseCategory::malformed_payload, iopen, "ref_item", reason);
            return;
        }
        item.id = static_cast<int>(std::stol(id_it->second));
        item.source = *source_from_string(src_it->second);
        item.granularity = *granularity_from_string(gran_it->second);
        if (auto it = attrs.find("title"); it != attrs.end()) {
            item.title = it->second;
        }
        if (auto it = attrs.find("url"); it != attrs.end()) {
            item.url = it->second;
        }
        item.content = std::move(content);
        item.content_span = {cstart, cclose};
        resp.items.push_back(std::move(item));
    }

    void handle_answer() {
        std::size_t open = pos_;
        bool duplicate = (at_ == At::answered);
        if (at_ == At::call_done) {
            fail(ParseCategory::out_of_order, open, "tool_call",
                 "tool call has no response");
            flush_step();
        } else if (at_ == At::think_done) {
            flush_step();  // a closing bare think is fine
        } else if (duplicate) {
            fail(ParseCategory::out_of_order, open, "answer",
                 "duplicate answer");
        }
        pos_ += kAnswerOpen.size();
        std::size_t close = raw_.find(kAnswerClose, pos_);
        std::string text;
        ByteSpan span{};
        if (close == npos) {
            fail(ParseCategory::unclosed_tag, open, "answer",
                 "unclosed <answer>");
            text = unescape(std::string_view(raw_).substr(pos_));
            span = {open, raw_.size()};
            pos_ = raw_.size();
        } else {
            text = unescape(std::string_view(raw_).substr(pos_, close - pos_));
            span = {open, close + kAnswerClose.size()};
            pos_ = close + kAnswerClose.size();
        }
        if (!duplicate) {
            out_.answer = std::move(text);
            out_.answer_span = span;
            at_ = At::answered;
        }
    }

    void handle_unknown() {
        std::size_t ns = pos_ + 1;
        std::size_t ne = ns;
        while (ne < raw_.size() &&
               (std::isalnum(static_cast<unsigned char>(raw_[ne])) ||
                raw_[ne] == '_')) {
            ++ne;
        }
        std::string name = raw_.substr(ns, ne - ns);
        fail(ParseCategory::unknown_tag, pos_, name.empty() ? "<" : name,
             "unknown tag <" + name + ">");
        std::string closing = "</" + name + ">";
        std::size_t c = name.empty() ? npos : raw_.find(closing, pos_);
        if (c != npos) {
            pos_ = c + closing.size();
        } else {
            std::size_t gt = raw_.find('>', pos_);
            pos_ = gt == npos ? raw_.size() : gt + 1;
        }
    }

    void finish() {
        if (at_ == At::call_done) {
            fail(ParseCategory::out_of_order, raw_.size(), "tool_call",
                 "tool call has no response");
            flush_step();
        } else if (at_ == At::think_done) {
            flush_step();
        }
        if (out_.steps.empty()) {
            fail(ParseCategory::out_of_order, 0, "trajectory",
                 "trajectory has no steps");
        }
    }
};

}  // namespace

std::string to_string(Source s) {
    switch (s) {
        case Source::web_search: return "web_search";
        case Source::browser: return "browser";
        case Source::local_search: return "local_search";
        case Source::kg_search: return "kg_search";
    }
    return "web_search";
}

std::string to_string(Granularity g) {
    return g == Granularity::page ? "page" : "chunk";
}

std::string to_string(Helpful h) { return h == Helpful::yes ? "yes" : "no"; }

std::string to_string(ToolKind k) {
    switch (k) {
        case ToolKind::web_search: return "web_search";
        case ToolKind::browser: return "browser";
        case ToolKind::local_search: return "local_search";
        case ToolKind::kg_search: return "kg_search";
        case ToolKind::other: return "other";
    }
    return "other";
}

std::string to_string(ParseCategory c) {
    switch (c) {
        case ParseCategory::unclosed_tag: return "unclosed_tag";
        case ParseCategory::malformed_contract: return "malformed_contract";
        case ParseCategory::unknown_tag: return "unknown_tag";
        case ParseCategory::out_of_order: return "out_of_order";
        case ParseCategory::malformed_payload: return "malformed_payload";
    }
    return "unknown_tag";
}

std::optional<Source> source_from_string(std::string_view s) {
    if (s == "web_search") return Source::web_search;
    if (s == "browser") return Source::browser;
    if (s == "local_search") return Source::local_search;
    if (s == "kg_search") return Source::kg_search;
    return std::nullopt;
}

std::optional<Granularity> granularity_from_string(std::string_view s) {
    if (s == "page") return Granularity::page;
    if (s == "chunk") return Granularity::chunk;
    return std::nullopt;
}

ToolKind tool_kind_from_string(std::string_view s) {
    if (s == "web_search") return ToolKind::web_search;
    if (s == "browser") return ToolKind::browser;
    if (s == "local_search") return ToolKind::local_search;
    if (s == "kg_search") return ToolKind::kg_search;
    return ToolKind::other;
}

bool ProxyResponse::has_id(int id) const { return find(id) != nullptr; }

const ReferenceItem* ProxyResponse::find(int id) const {
    for (const auto& item : items) {
        if (item.id == id) return &item;
    }
    return nullptr;
}

ParseError::ParseError(ParseCategory category_, std::size_t offset_,
                       int step_index_, const std::string& message)
    : std::runtime_error(message),
      category(category_),
      offset(offset_),
      step_index(step_index_) {}

AnswerPosition answer_position(const Trajectory& t) {
    if (!t.answer) return AnswerPosition::none;
    if (!t.steps.empty() && t.steps.back().tool_response) {
        return AnswerPosition::after_tool_response;
    }
    return AnswerPosition::after_think;
}

Trajectory parse_trajectory(const std::string& raw, std::string query) {
    return Parser(raw, /*strict=*/true).run(std::move(query));
}

Trajectory parse_trajectory_relaxed(const std::string& raw, std::string query) {
    return Parser(raw, /*strict=*/false).run(std::move(query));
}

std::string serialize_trajectory(const Trajectory& t) {
    std::string out;
    for (const auto& s : t.steps) {
        out += "<think>";
        if (s.contract) {
            out += "<helpful>";
            out += to_string(s.contract->helpful);
            out += "</helpful><ref>";
            if (!s.contract->refs) {
                out += "null";
            } else {
                bool first = true;
                for (int id : *s.contract->refs) {
                    if (!first) out += ',';
                    first = false;
                    out += std::to_string(id);
                }
            }
            out += "</ref>";
        }
        out += escape_text(s.think);
        out += "</think>\n";
        if (s.tool_call) {
            nlohmann::json j;
            j["tool"] = s.tool_call->tool_name.empty()
                            ? to_string(s.tool_call->tool)
                            : s.tool_call->tool_name;
            j["arguments"] = nlohmann::json::object();
            for (const auto& [k, v] : s.tool_call->arguments) {
                j["arguments"][k] = v;
            }
            for (const auto& [k, v] : s.tool_call->extras) {
                auto pv = nlohmann::json::parse(v, nullptr, false);
                j[k] = pv.is_discarded() ? nlohmann::json(v) : pv;
            }
            out += "<tool_call>";
            out += j.dump();
            out += "</tool_call>\n";
        }
        if (s.tool_response) {
            out += "<tool_response>\n";
            for (const auto& item : s.tool_response->items) {
                out += "<ref_item id=\"" + std::to_string(item.id) + "\"";
                out += " source=\"" + to_string(item.source) + "\"";
                out += " granularity=\"" + to_string(item.granularity) + "\"";
                if (item.title) out += " title=\"" + escape_attr(*item.title) + "\"";
                if (item.url) out += " url=\"" + escape_attr(*item.url) + "\"";
                out += ">";
                out += escape_text(item.content);
                out += "</ref_item>\n";
            }
            out += "</tool_response>\n";
        }
    }
    if (t.answer) {
        out += "<answer>";
        out += escape_text(*t.answer);
        out += "</answer>\n";
    }
    return out;
}

Trajectory canonicalized(const Trajectory& t) {
    return parse_trajectory(serialize_trajectory(t), t.query);
}

}  // namespace evaudit
