#include "evaudit/environment.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "evaudit/errors.hpp"
#include "evaudit/text.hpp"

namespace evaudit {

namespace {

std::string trim_trailing_ws(const std::string& text, std::size_t begin,
                             std::size_t end) {
    while (end > begin &&
           std::isspace(static_cast<unsigned char>(text[end - 1]))) {
        --end;
    }
    return text.substr(begin, end - begin);
}

// Non-overlapping windows of `n` sentences, in document order.
std::vector<std::string> chunk_text(const std::string& text, int n) {
    std::vector<std::string> out;
    auto sentences = sentence_ranges(text);
    if (n < 1) n = 1;
    for (std::size_t i = 0; i < sentences.size();
         i += static_cast<std::size_t>(n)) {
        std::size_t last = std::min(i + static_cast<std::size_t>(n),
                                    sentences.size()) - 1;
        out.push_back(
            trim_trailing_ws(text, sentences[i].begin, sentences[last].end));
    }
    return out;
}

std::string first_matching_window(const std::string& text,
                                  const std::set<std::string>& q_tokens,
                                  int n) {
    auto sentences = sentence_ranges(text);
    if (sentences.empty()) return "";
    if (n < 1) n = 1;
    std::size_t start = 0;
    for (std::size_t i = 0; i < sentences.size(); ++i) {
        std::string sent = text.substr(sentences[i].begin,
                                       sentences[i].end - sentences[i].begin);
        if (term_overlap(q_tokens, sent) > 0.0) {
            start = i;
            break;
        }
    }
    std::size_t last = std::min(start + static_cast<std::size_t>(n),
                                sentences.size()) - 1;
    return trim_trailing_ws(text, sentences[start].begin,
                            sentences[last].end);
}

std::string lower_trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    std::string out = s.substr(b, e - b);
    for (char& c : out) c = static_cast<char>(
        std::tolower(static_cast<unsigned char>(c)));
    return out;
}

}  // namespace

ProxyResponse web_search(const Corpus& corpus, const std::string& query,
                         const ProxyConfig& cfg) {
    auto q_tokens = token_set(query);
    struct Ranked {
        double score;
        const Document* doc;
    };
    std::vector<Ranked> ranked;
    ranked.reserve(corpus.web.size());
    for (const auto& doc : corpus.web) {
        ranked.push_back(
            {term_overlap(q_tokens, doc.title + "\n" + doc.text), &doc});
    }
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const Ranked& a, const Ranked& b) {
                         if (a.score != b.score) return a.score > b.score;
                         return a.doc->id < b.doc->id;
                     });
    ProxyResponse out;
    std::size_t k = std::min<std::size_t>(
        ranked.size(), cfg.top_k < 0 ? 0 : static_cast<std::size_t>(cfg.top_k));
    for (std::size_t i = 0; i < k; ++i) {
        ReferenceItem item;
        item.id = static_cast<int>(i) + 1;
        item.source = Source::web_search;
        item.granularity = Granularity::page;
        item.title = ranked[i].doc->title;
        item.url = ranked[i].doc->url;
        item.content = first_matching_window(ranked[i].doc->text, q_tokens,
                                             cfg.snippet_sentences);
        out.items.push_back(std::move(item));
    }
    return out;
}

ProxyResponse browse(const Corpus& corpus, const std::string& url,
                     const ProxyConfig& cfg) {
    ProxyResponse out;
    const Document* doc = nullptr;
    for (const auto& d : corpus.web) {
        if (d.url == url) {
            doc = &d;
            break;
        }
    }
    if (!doc) return out;
    int id = 0;
    for (auto& chunk : chunk_text(doc->text, cfg.chunk_sentences)) {
        ReferenceItem item;
        item.id = ++id;
        item.source = Source::browser;
        item.granularity = Granularity::chunk;
        item.title = doc->title;
        item.url = doc->url;
        item.content = std::move(chunk);
        out.items.push_back(std::move(item));
    }
    return out;
}

ProxyResponse local_search(const Corpus& corpus, const std::string& query,
                           const ProxyConfig& cfg) {
    auto q_tokens = token_set(query);
    struct Ranked {
        double score;
        const Document* doc;
        std::size_t position;
        std::string chunk;
    };
    std::vector<Ranked> ranked;
    for (const auto& doc : corpus.local) {
        auto chunks = chunk_text(doc.text, cfg.chunk_sentences);
        for (std::size_t p = 0; p < chunks.size(); ++p) {
            ranked.push_back({term_overlap(q_tokens, chunks[p]), &doc, p,
                              std::move(chunks[p])});
        }
    }
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const Ranked& a, const Ranked& b) {
                         if (a.score != b.score) return a.score > b.score;
                         if (a.doc->id != b.doc->id) return a.doc->id < b.doc->id;
                         return a.position < b.position;
                     });
    ProxyResponse out;
    std::size_t k = std::min<std::size_t>(
        ranked.size(), cfg.top_k < 0 ? 0 : static_cast<std::size_t>(cfg.top_k));
    for (std::size_t i = 0; i < k; ++i) {
        ReferenceItem item;
        item.id = static_cast<int>(i) + 1;
        item.source = Source::local_search;
        item.granularity = Granularity::chunk;
        item.title = ranked[i].doc->title;
        item.content = std::move(ranked[i].chunk);
        out.items.push_back(std::move(item));
    }
    return out;
}

ProxyResponse kg_search(const Corpus& corpus, const std::string& entity,
                        const ProxyConfig& cfg) {
    std::vector<const Triple*> matched;
    for (const auto& tr : corpus.kg) {
        if (tr.subject == entity || tr.object == entity) {
            matched.push_back(&tr);
        }
    }
    if (matched.empty()) {
        std::string want = lower_trim(entity);
        for (const auto& tr : corpus.kg) {
            if (lower_trim(tr.subject) == want ||
                lower_trim(tr.object) == want) {
                matched.push_back(&tr);
            }
        }
    }
    std::stable_sort(matched.begin(), matched.end(),
                     [](const Triple* a, const Triple* b) {
                         if (a->subject != b->subject)
                             return a->subject < b->subject;
                         if (a->relation != b->relation)
                             return a->relation < b->relation;
                         return a->object < b->object;
                     });
    ProxyResponse out;
    std::size_t k = std::min<std::size_t>(
        matched.size(),
        cfg.top_k < 0 ? 0 : static_cast<std::size_t>(cfg.top_k));
    for (std::size_t i = 0; i < k; ++i) {
        ReferenceItem item;
        item.id = static_cast<int>(i) + 1;
        item.source = Source::kg_search;
        item.granularity = Granularity::chunk;
        item.title = matched[i]->subject;
        item.content = "The " + matched[i]->relation + " of " +
                       matched[i]->subject + " is " + matched[i]->object + ".";
        out.items.push_back(std::move(item));
    }
    return out;
}

ProxyResponse execute_tool(const Corpus& corpus, const ToolCall& call,
                           const ProxyConfig& cfg) {
    auto arg = [&](const char* name) -> const std::string* {
        auto it = call.arguments.find(name);
        return it == call.arguments.end() ? nullptr : &it->second;
    };
    switch (call.tool) {
        case ToolKind::web_search:
            if (auto* q = arg("query")) return web_search(corpus, *q, cfg);
            break;
        case ToolKind::browser:
            if (auto* u = arg("url")) return browse(corpus, *u, cfg);
            break;
        case ToolKind::local_search:
            if (auto* q = arg("query")) return local_search(corpus, *q, cfg);
            break;
        case ToolKind::kg_search:
            if (auto* e = arg("entity")) return kg_search(corpus, *e, cfg);
            break;
        case ToolKind::other:
            break;
    }
    return {};
}

Trajectory blank_responses(const Trajectory& t, const std::string& token) {
    Trajectory out = t;
    for (auto& step : out.steps) {
        if (!step.tool_response) continue;
        for (auto& item : step.tool_response->items) {
            item.content = token;
            item.content_span = {};
        }
    }
    out.raw_text.reset();  // byte offsets no longer describe anything
    return out;
}

Corpus load_corpus(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open corpus file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    auto j = nlohmann::json::parse(buf.str(), nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
        throw ConfigError("corpus file is not a JSON object: " + path);
    }
    Corpus out;
    auto read_docs = [&](const char* key, std::vector<Document>& dst) {
        if (!j.contains(key)) return;
        for (const auto& d : j[key]) {
            Document doc;
            doc.id = d.value("id", "");
            doc.title = d.value("title", "");
            doc.url = d.value("url", "");
            doc.text = d.value("text", "");
            dst.push_back(std::move(doc));
        }
    };
    read_docs("web", out.web);
    read_docs("local", out.local);
    if (j.contains("kg")) {
        for (const auto& tr : j["kg"]) {
            out.kg.push_back({tr.value("subject", ""), tr.value("relation", ""),
                              tr.value("object", "")});
        }
    }
    return out;
}

}  // namespace evaudit
