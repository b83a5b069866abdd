#pragma once

// Deterministic multi-source retrieval environment.
//
// Four proxies sit over one fixture corpus:
//
//   web_search(query)   ranks web documents, returns page-granular items
//                       whose content is the first query-matching snippet
//   browse(url)         returns every chunk of the addressed web document
//   local_search(query) ranks chunks across the local collection
//   kg_search(entity)   renders the entity's one-hop triples
//
// Ranking is normalized term overlap: |query tokens ∩ text tokens| /
// |query tokens|, ties broken by ascending document id (then chunk
// position). Zero-score candidates still rank, so a search over a corpus
// smaller than top_k returns the whole corpus. Item ids are assigned 1..k
// per response, in rank order.

#include <string>
#include <vector>

#include "evaudit/protocol.hpp"

namespace evaudit {

struct Document {
    std::string id;
    std::string title;
    std::string url;  // empty for local documents
    std::string text;
};

struct Triple {
    std::string subject;
    std::string relation;
    std::string object;
};

struct Corpus {
    std::vector<Document> web;
    std::vector<Document> local;
    std::vector<Triple> kg;
};

struct ProxyConfig {
    int top_k = 5;
    int chunk_sentences = 3;    // sentence window per chunk
    int snippet_sentences = 2;  // sentence window for web snippets
};

ProxyResponse web_search(const Corpus& corpus, const std::string& query,
                         const ProxyConfig& cfg = {});
ProxyResponse browse(const Corpus& corpus, const std::string& url,
                     const ProxyConfig& cfg = {});
ProxyResponse local_search(const Corpus& corpus, const std::string& query,
                           const ProxyConfig& cfg = {});
ProxyResponse kg_search(const Corpus& corpus, const std::string& entity,
                        const ProxyConfig& cfg = {});

// Dispatch on the call's tool kind, reading "query" / "url" / "entity"
// from the arguments. Unknown tools and missing arguments produce an
// empty response.
ProxyResponse execute_tool(const Corpus& corpus, const ToolCall& call,
                           const ProxyConfig& cfg = {});

// Ablation support: overwrite every reference item's content with the
// placeholder token and drop the raw text (its offsets no longer apply).
Trajectory blank_responses(const Trajectory& t,
                           const std::string& token = "content");

// Corpus fixture file: one JSON object {"web":[...],"local":[...],
// "kg":[{"subject":...,"relation":...,"object":...}]}.
Corpus load_corpus(const std::string& path);

}  // namespace evaudit
