#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mathworld/lf.hpp"
#include "mathworld/model.hpp"
#include "mathworld/rational.hpp"

namespace mathworld {

// Element ids present after a sentence. Containers whose quantity at that
// state differs from the final model (a later sentence bound an unknown to a
// known value) carry an override here.
struct StateSnapshot {
    std::vector<int> containers;
    std::vector<int> relations;
    std::vector<std::pair<int, Quantity>> quantity_overrides;

    bool contains_container(int id) const;
    bool contains_relation(int id) const;
};

// One math story problem: body sentences followed by exactly one question
// sentence, with a logical form aligned to each sentence.
struct AnnotatedMSP {
    std::string id;
    std::string source_dataset;
    std::vector<std::string> sentences;
    std::vector<LogicalForm> logical_forms;
    std::optional<WorldModel> gold_graph;
    std::vector<StateSnapshot> gold_states;  // aligned with sentences when present
    std::optional<Rational> gold_answer;
};

// Structural matching with the most-recently-created default. The hint
// narrows candidates by quantity:
//   - hint holds a known value: only unknown-quantity containers match
//     (the caller intends to bind that unknown),
//   - hint holds a variable: unknown-quantity containers are preferred,
//     any match is returned otherwise,
//   - no hint: any structural match.
std::optional<int> match_container(const WorldModel& model, const ContainerStructure& spec,
                                   const std::optional<Quantity>& quantity_hint = std::nullopt,
                                   const Normalizer& norm = Normalizer::standard());

struct GraphBuildResult {
    WorldModel model;  // ref_var set from the final form when determinable
    std::vector<StateSnapshot> states;  // one per input form
    std::vector<std::string> diagnostics;  // dropped predicates, match notes
};

// Builds a world model by applying the forms in order. Relation predicates
// match their endpoint specs against existing containers and create
// containers only when no match exists; known-quantity container predicates
// bind a structurally matching unknown instead of creating a node. The last
// form decides the reference variable: among the elements it matched or
// created, the variable held by the most recently created one.
GraphBuildResult lfs_to_graph(const std::vector<LogicalForm>& forms,
                              const Normalizer& norm = Normalizer::standard());

// Linearizes per-sentence state deltas back to logical forms. Containers
// with an unknown quantity are discarded from declarative sentences but kept
// for the final, interrogative one; a two-owner transfer event (two edges
// with identical properties) becomes a single transfer predicate; part-whole
// edges of one whole become a single part predicate, padded with the whole's
// previously introduced parts when a sentence adds fewer than two. Throws
// ConversionError when the states are not a monotone chain over the model.
std::vector<LogicalForm> graph_to_lfs(const WorldModel& model,
                                      const std::vector<StateSnapshot>& states,
                                      const Normalizer& norm = Normalizer::standard());

}  // namespace mathworld
