#pragma once

#include <map>
#include <string>
#include <vector>

#include "mathworld/convert.hpp"
#include "mathworld/model.hpp"

namespace mathworld {

// File formats (format_version 1, bit-stable: sorted keys, quantities as
// decimal strings).
//
// Graph file:
//   {"format_version": 1,
//    "graph": {
//      "metadata": {"ref_var"?: "x2",
//                   "sentence_states"?: [{"containers": [...],
//                                         "relations": [...],
//                                         "quantities"?: {"<id>": "x1"}}]},
//      "nodes": [{"id": 1, "metadata": {"label": ..., "entity": ...,
//                 "quantity": "14", "attribute"?: ..., "unit"?: ...}}],
//      "edges": [{"source": 1, "target": 2,
//                 "metadata": {"id": 3, "type": "transfer"|"rate"|
//                  "comparison"|"part-whole", "quantity"?: "13",
//                  "recipient"?: ..., "sender"?: ..., "op"?: "add"|"mul"}}]}}
//
// Edge metadata carries the relation id because containers and relations
// share one creation-ordered id space and the sentence states refer to it.
// "times" is accepted as an alias of "mul" in the op field.
//
// Corpus file: JSONL, one record per line:
//   {"format_version": 1, "id": ..., "source_dataset": ...,
//    "sentences": [...], "logical_forms": [...one string per sentence...],
//    "graph"?: {nodes, edges, metadata}, "answer"?: "50"}
//
// Prediction file: logical forms in the DSL wire format. A line "# <id>"
// opens the record for that problem; within a record, sentences are
// separated by lines holding only "---". Parsed in recover mode.

struct GraphDocument {
    WorldModel model;
    std::vector<StateSnapshot> states;
};

GraphDocument load_graph(const std::string& path);
void save_graph(const GraphDocument& doc, const std::string& path);
std::string graph_to_json_text(const GraphDocument& doc);

std::vector<AnnotatedMSP> load_corpus(const std::string& path);
void save_corpus(const std::vector<AnnotatedMSP>& corpus, const std::string& path);

struct Predictions {
    // Ordered as encountered in the file.
    std::vector<std::pair<std::string, std::vector<LogicalForm>>> records;
    std::vector<std::string> warnings;  // recovered-away predicates

    const std::vector<LogicalForm>* find(const std::string& id) const;
};

Predictions load_predictions(const std::string& path);
void save_predictions(const Predictions& preds, const std::string& path);

}  // namespace mathworld
