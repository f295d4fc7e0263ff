#pragma once

#include <string>
#include <vector>

#include "mathworld/rational.hpp"

namespace mathworld {

// Textual predicate language for sentence-level logical forms.
//
//   container(label, quantity, entity, attribute, unit)
//   transfer(recipient label, sender label, quantity, entity, attribute, unit)
//   rate(label, quantity, src entity, src attribute, src unit,
//        tgt entity, tgt attribute, tgt unit)
//   difference(tgt label, src label, quantity, tgt entity, tgt attribute,
//              tgt unit, src entity, src attribute, src unit)   // additive
//   explicit(...same signature...)                              // multiplicative
//   part(whole label, whole entity, whole attribute, whole unit,
//        {part label, part entity, part attribute, part unit} x n)   n >= 2
//
// Arguments are unquoted tokens between commas; multi-word tokens are fine.
// Only '(' ')' ',' are reserved. Missing optional values are the token
// "none". Quantity positions must hold a number (decimal, or n/d for exact
// non-decimal rationals) or a variable token (x followed by digits);
// anything else there makes the predicate malformed.

enum class PredicateHead { container, transfer, rate, difference, explicit_, part };

std::string predicate_head_name(PredicateHead head);

enum class ArgKind { text, number, variable, null };

struct Arg {
    ArgKind kind = ArgKind::null;
    std::string text;   // text token or variable name
    Rational number;    // set when kind == number

    static Arg none() { return {}; }
    static Arg of_text(std::string t);
    static Arg of_number(Rational r) { return {ArgKind::number, {}, r}; }
    static Arg of_var(std::string name) { return {ArgKind::variable, std::move(name), {}}; }

    bool is_none() const { return kind == ArgKind::null; }
    std::string to_string() const;

    friend bool operator==(const Arg& a, const Arg& b) {
        if (a.kind != b.kind) return false;
        if (a.kind == ArgKind::number) return a.number == b.number;
        return a.text == b.text;
    }
};

struct Predicate {
    PredicateHead head = PredicateHead::container;
    std::vector<Arg> args;

    friend bool operator==(const Predicate& a, const Predicate& b) {
        return a.head == b.head && a.args == b.args;
    }
};

// Ordered predicate sequence for one sentence; may be empty.
struct LogicalForm {
    std::vector<Predicate> predicates;

    bool empty() const { return predicates.empty(); }
    friend bool operator==(const LogicalForm& a, const LogicalForm& b) {
        return a.predicates == b.predicates;
    }
};

enum class ParseMode { strict, recover };

struct LfParseResult {
    LogicalForm form;
    std::vector<std::string> dropped;  // recover mode: one note per predicate skipped
};

// Strict mode throws ParseError with a character offset on the first
// malformed predicate. Recover mode never throws: malformed predicates are
// dropped and the well-formed remainder returned in order.
LfParseResult parse_logical_form(std::string_view text, ParseMode mode);

std::string serialize_predicate(const Predicate& p);
// Round-trip contract: parse_logical_form(serialize_logical_form(lf), strict)
// yields lf field-for-field. Empty forms serialize to "".
std::string serialize_logical_form(const LogicalForm& lf);

}  // namespace mathworld
