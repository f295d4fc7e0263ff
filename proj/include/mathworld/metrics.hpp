#pragma once

#include <string>
#include <vector>

#include "mathworld/model.hpp"

namespace mathworld {

enum class SmatchMode { weak, strong };

// One logical triple: predicate(subject, object). Subjects are always
// variables of their graph's namespace; objects are variables or constant
// tokens.
struct Triple {
    std::string predicate;
    std::string subject;
    std::string object;
    bool object_is_var = false;

    friend bool operator==(const Triple& a, const Triple& b) {
        return a.predicate == b.predicate && a.subject == b.subject && a.object == b.object &&
               a.object_is_var == b.object_is_var;
    }
};

struct TripleSet {
    std::vector<Triple> triples;
    std::vector<std::string> variables;  // distinct, in introduction order
    // Class key per variable ("node", "edge", "value"); mappings across
    // classes can never match a triple, so the search skips them.
    std::vector<std::string> classes;
};

// Weak mode: instance(v, container|transfer|rate|comparison-add|
// comparison-mul|part-whole) plus source/destination triples per edge; one
// edge variable per part-whole edge. Strong mode additionally binds each
// property through a role triple and a value-instance triple: container
// ARG0=entity, ARG1=quantity, ARG2=label, ARG3=attribute, ARG4=unit;
// transfer ARG0=recipient, ARG1=sender, ARG2=quantity; rate/comparison
// ARG0=quantity. Property values are normalized; unknown quantities all
// carry the token "unknown".
TripleSet to_triples(const WorldModel& g, SmatchMode mode, const std::string& var_prefix = "a",
                     const Normalizer& norm = Normalizer::standard());

struct SmatchOptions {
    // Exact search runs when min(|vars|) is at most this; hill-climbing with
    // seeded restarts otherwise.
    std::size_t exhaustive_limit = 8;
    int restarts = 4;
    unsigned seed = 0;
    enum class Search { automatic, exhaustive, hill_climb };
    Search search = Search::automatic;
    // Parallelize hill-climbing restarts (OpenMP) when > 1.
    int jobs = 1;
};

struct SmatchScore {
    Rational precision;
    Rational recall;
    Rational f1;
    std::vector<std::pair<std::string, std::string>> best_mapping;
};

// Maximum triple-overlap f-score over injective variable mappings.
// Precision counts against the first argument, recall against the second.
SmatchScore smatch_triples(const TripleSet& a, const TripleSet& b,
                           const SmatchOptions& options = {});
SmatchScore smatch(const WorldModel& g1, const WorldModel& g2, SmatchMode mode,
                   const SmatchOptions& options = {});

// Weak: a graph isomorphism preserving relation types exists. Strong:
// additionally every container/relation property is equal after
// normalization (unknown quantities match any unknown).
bool weak_equivalent(const WorldModel& g1, const WorldModel& g2,
                     const Normalizer& norm = Normalizer::standard());
bool strong_equivalent(const WorldModel& g1, const WorldModel& g2,
                       const Normalizer& norm = Normalizer::standard());

}  // namespace mathworld
