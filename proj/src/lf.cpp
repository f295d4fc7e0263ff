#include "mathworld/lf.hpp"

#include <cctype>

#include "mathworld/errors.hpp"
#include "mathworld/model.hpp"
#include "mathworld/normalize.hpp"

namespace mathworld {

namespace {

constexpr std::string_view kNullToken = "none";

struct HeadInfo {
    PredicateHead head;
    std::string_view name;
};

constexpr HeadInfo kHeads[] = {
    {PredicateHead::container, "container"}, {PredicateHead::transfer, "transfer"},
    {PredicateHead::rate, "rate"},           {PredicateHead::difference, "difference"},
    {PredicateHead::explicit_, "explicit"},  {PredicateHead::part, "part"},
};

std::string trim_collapse(std::string_view raw) {
    std::string out;
    bool pending = false;
    for (char c : raw) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            pending = !out.empty();
            continue;
        }
        if (pending) {
            out.push_back(' ');
            pending = false;
        }
        out.push_back(c);
    }
    return out;
}

Arg classify(std::string token) {
    if (token == kNullToken) return Arg::none();
    if (is_variable_token(token)) return Arg::of_var(std::move(token));
    if (Rational::looks_rational(token)) return Arg::of_number(Rational::parse(token));
    return Arg::of_text(std::move(token));
}

// Index of the quantity argument per head; -1 when the head has none.
int quantity_position(PredicateHead head) {
    switch (head) {
        case PredicateHead::container: return 1;
        case PredicateHead::transfer: return 2;
        case PredicateHead::rate: return 1;
        case PredicateHead::difference: return 2;
        case PredicateHead::explicit_: return 2;
        case PredicateHead::part: return -1;
    }
    return -1;
}

bool arity_ok(PredicateHead head, std::size_t n) {
    switch (head) {
        case PredicateHead::container: return n == 5;
        case PredicateHead::transfer: return n == 6;
        case PredicateHead::rate: return n == 8;
        case PredicateHead::difference: return n == 9;
        case PredicateHead::explicit_: return n == 9;
        case PredicateHead::part: return n >= 12 && (n - 4) % 4 == 0;
    }
    return false;
}

struct Scanner {
    std::string_view text;
    std::size_t pos = 0;

    bool at_end() const { return pos >= text.size(); }
    char peek() const { return text[pos]; }
    void skip_ws() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos;
    }
};

}  // namespace

Arg Arg::of_text(std::string t) {
    Arg a;
    a.kind = ArgKind::text;
    a.text = std::move(t);
    return a;
}

std::string Arg::to_string() const {
    switch (kind) {
        case ArgKind::null: return std::string(kNullToken);
        case ArgKind::number: return number.to_string();
        case ArgKind::variable:
        case ArgKind::text: return text;
    }
    return {};
}

std::string predicate_head_name(PredicateHead head) {
    for (const auto& h : kHeads) {
        if (h.head == head) return std::string(h.name);
    }
    return "?";
}

LfParseResult parse_logical_form(std::string_view text, ParseMode mode) {
    LfParseResult result;
    Scanner s{text};

    auto fail = [&](const std::string& msg, std::size_t at) {
        if (mode == ParseMode::strict) throw ParseError(msg, at);
        result.dropped.push_back(msg + " (at offset " + std::to_string(at) + ")");
    };

    while (true) {
        s.skip_ws();
        if (s.at_end()) break;

        std::size_t start = s.pos;
        while (!s.at_end() && s.peek() != '(' && s.peek() != ')' && s.peek() != ',' &&
               !std::isspace(static_cast<unsigned char>(s.peek()))) {
            ++s.pos;
        }
        std::string head_token(text.substr(start, s.pos - start));
        s.skip_ws();

        if (head_token.empty()) {
            fail("unexpected character '" + std::string(1, s.peek()) + "'", s.pos);
            ++s.pos;  // recover: step over it
            continue;
        }
        if (s.at_end() || s.peek() != '(') {
            fail("expected '(' after '" + head_token + "'", s.pos);
            continue;  // recover: the bare token is already consumed
        }
        ++s.pos;  // '('

        std::vector<std::string> raw_args;
        std::size_t arg_start = s.pos;
        bool closed = false;
        bool nested = false;
        while (!s.at_end()) {
            char c = s.peek();
            if (c == ')') {
                raw_args.emplace_back(text.substr(arg_start, s.pos - arg_start));
                ++s.pos;
                closed = true;
                break;
            }
            if (c == ',') {
                raw_args.emplace_back(text.substr(arg_start, s.pos - arg_start));
                arg_start = s.pos + 1;
            } else if (c == '(') {
                nested = true;
                break;
            }
            ++s.pos;
        }
        if (nested) {
            fail("unexpected '(' inside argument list of '" + head_token + "'", s.pos);
            ++s.pos;
            continue;
        }
        if (!closed) {
            fail("unclosed '" + head_token + "(' predicate", start);
            break;  // recover: nothing parseable remains
        }

        const HeadInfo* info = nullptr;
        for (const auto& h : kHeads) {
            if (h.name == head_token) info = &h;
        }
        if (!info) {
            fail("unknown predicate '" + head_token + "'", start);
            continue;
        }
        if (!arity_ok(info->head, raw_args.size())) {
            fail("'" + head_token + "' does not take " + std::to_string(raw_args.size()) +
                     " arguments",
                 start);
            continue;
        }

        Predicate pred;
        pred.head = info->head;
        bool bad = false;
        for (std::size_t i = 0; i < raw_args.size(); ++i) {
            std::string token = trim_collapse(raw_args[i]);
            if (token.empty()) {
                fail("empty argument " + std::to_string(i + 1) + " of '" + head_token + "'",
                     start);
                bad = true;
                break;
            }
            Arg arg = classify(std::move(token));
            if (static_cast<int>(i) == quantity_position(info->head) &&
                arg.kind != ArgKind::number && arg.kind != ArgKind::variable) {
                fail("quantity argument of '" + head_token + "' must be a number or variable",
                     start);
                bad = true;
                break;
            }
            pred.args.push_back(std::move(arg));
        }
        if (!bad) result.form.predicates.push_back(std::move(pred));
    }
    return result;
}

std::string serialize_predicate(const Predicate& p) {
    std::string out = predicate_head_name(p.head) + "(";
    for (std::size_t i = 0; i < p.args.size(); ++i) {
        if (i) out += ", ";
        out += p.args[i].to_string();
    }
    out += ")";
    return out;
}

std::string serialize_logical_form(const LogicalForm& lf) {
    std::string out;
    for (std::size_t i = 0; i < lf.predicates.size(); ++i) {
        if (i) out += "\n";
        out += serialize_predicate(lf.predicates[i]);
    }
    return out;
}

}  // namespace mathworld
