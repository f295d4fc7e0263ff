#pragma once

#include <map>
#include <string>

#include "mathworld/model.hpp"

namespace mathworld {

// First-order logic rendering of world models in a plain-ASCII concrete
// syntax:
//
//   connectives   and / or / implies / iff / not
//   quantifiers   exists x ..., forall x in S (...)
//   membership    x in S
//   sets          {a, b}, union(x, y), intersection(x, y), empty, bigunion(x)
//   arithmetic    infix + - * / and = over terms
//
// Function and predicate application binds without whitespace ("Time(v1)");
// a space before "(" starts a quantifier body or grouping instead.
//
// Containers bind variables v1, v2, ... (id order), non-part-whole relations
// e1, e2, ... (a two-owner transfer's edge pair shares one event variable),
// unknowns u1, u2, ... (first-appearance order). Multi-word names join with
// underscores; units are capitalized inside Quantity(q, Unit).

struct FolDocument {
    std::string formula;
    std::string axioms;  // optional "# AXIOMS:<family>" sections

    std::string text() const {
        return axioms.empty() ? formula + "\n" : formula + "\n\n" + axioms;
    }
};

struct FolOptions {
    // Per-container countability override; containers not listed count as
    // uncountable exactly when they carry a unit.
    std::map<int, bool> countable;
};

FolDocument to_fol(const WorldModel& g, const FolOptions& options = {},
                   const Normalizer& norm = Normalizer::standard());

enum class AxiomFamily { all, measure, relations, reasoning };

// The measure/cardinality/additivity/unit axioms, the relation semantics
// (including the part-whole/partition equivalence and its time theorem), and
// the reasoning schemas over ENTITY/ATTRIBUTE placeholders.
std::string fol_axioms(AxiomFamily which);

struct FolStats {
    int atoms = 0;
    int quantifiers = 0;
    int formulas = 0;
};

// Syntactic reader for the concrete syntax above; throws ParseError on
// malformed input. Used as the round-trip check on every export.
FolStats parse_fol(const std::string& formula);
// Parses a whole document: '#'-prefixed lines are headers/comments, blank
// lines separate formula blocks.
FolStats parse_fol_document(const std::string& text);

}  // namespace mathworld
