#include "mathworld/fol.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "mathworld/errors.hpp"

namespace mathworld {

namespace {

std::string underscored(std::string_view text) {
    std::string out;
    for (char c : text) out.push_back(std::isspace(static_cast<unsigned char>(c)) ? '_' : c);
    return out;
}

std::string unit_symbol(const std::string& unit, const Normalizer& norm) {
    std::string u = underscored(norm.property(unit));
    if (!u.empty()) u[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(u[0])));
    return u;
}

struct FolWriter {
    const WorldModel& g;
    const FolOptions& options;
    const Normalizer& norm;

    std::map<int, std::string> node_var;    // container id -> v_i
    std::map<int, std::string> event_var;   // relation id -> e_i (shared for pairs)
    std::map<std::string, std::string> unknown_var;  // x_k -> u_j
    std::vector<std::string> conjuncts;

    bool countable(const Container& c) const {
        auto it = options.countable.find(c.id);
        if (it != options.countable.end()) return it->second;
        return !c.structure.unit.has_value();
    }

    std::string quantity_term(const Quantity& q) {
        if (q.is_known()) return q.value().to_string();
        return unknown_var.at(q.var_name());
    }

    std::string entity_pred(const ContainerStructure& s) const {
        return underscored(norm.property(s.entity));
    }
    std::string attribute_pred(const ContainerStructure& s) const {
        return underscored(norm.property(*s.attribute));
    }

    // "forall x in v1 (apple(x) and red(x))", omitting absent conjuncts.
    std::string member_block(const std::string& bound, const std::string& set,
                             const ContainerStructure& s) const {
        std::string inner = entity_pred(s) + "(" + bound + ")";
        if (s.attribute) inner += " and " + attribute_pred(s) + "(" + bound + ")";
        return "forall " + bound + " in " + set + " (" + inner + ")";
    }

    // Measure plus entity/attribute conjuncts for one measured thing, in the
    // countable or uncountable shape.
    void push_measured(const std::string& var, const ContainerStructure& s,
                       const Quantity& quantity, bool is_countable) {
        if (is_countable) {
            conjuncts.push_back("Measure(" + var + ", " + quantity_term(quantity) + ")");
            conjuncts.push_back(member_block("x", var, s));
        } else {
            conjuncts.push_back(entity_pred(s) + "(" + var + ")");
            if (s.attribute) conjuncts.push_back(attribute_pred(s) + "(" + var + ")");
            conjuncts.push_back("Measure(" + var + ", Quantity(" + quantity_term(quantity) +
                                ", " + unit_symbol(s.unit.value_or("item"), norm) + "))");
        }
    }

    // Relation argument block: exists r (Arg(e, r) and ...measure...).
    void push_arg_block(const std::string& event, const Container& source,
                        const Quantity& quantity, bool rate_of_sets) {
        const ContainerStructure& s = source.structure;
        bool count = countable(source);
        std::string inner;
        if (rate_of_sets) {
            // The argument of a rate is a set of sets.
            std::string measured;
            if (count) {
                measured = "Measure(y, " + quantity_term(quantity) + ") and forall x in y (" +
                           entity_pred(s) + "(x)" +
                           (s.attribute ? " and " + attribute_pred(s) + "(x)" : "") + ")";
            } else {
                measured = entity_pred(s) + "(y)" +
                           (s.attribute ? " and " + attribute_pred(s) + "(y)" : "") +
                           " and Measure(y, Quantity(" + quantity_term(quantity) + ", " +
                           unit_symbol(s.unit.value_or("item"), norm) + "))";
            }
            inner = "forall y in r (" + measured + ")";
        } else if (count) {
            inner = "Measure(r, " + quantity_term(quantity) + ")";
            std::string membership = entity_pred(s) + "(x)" +
                                     (s.attribute ? " and " + attribute_pred(s) + "(x)" : "");
            inner += " and forall x in r (" + membership + ")";
        } else {
            inner = entity_pred(s) + "(r)";
            if (s.attribute) inner += " and " + attribute_pred(s) + "(r)";
            inner += " and Measure(r, Quantity(" + quantity_term(quantity) + ", " +
                     unit_symbol(s.unit.value_or("item"), norm) + "))";
        }
        conjuncts.push_back("exists r (Arg(" + event + ", r) and " + inner + ")");
    }

    FolDocument run() {
        // Variable allocation: containers, then events, then unknowns.
        int v = 0;
        for (const Container& c : g.containers()) {
            node_var[c.id] = "v" + std::to_string(++v);
        }

        // Two-owner transfer edge pairs share one event variable.
        std::map<int, int> pair_partner;
        const auto& rels = g.relations();
        for (std::size_t i = 0; i < rels.size(); ++i) {
            const Relation& r = rels[i];
            if (r.type() != RelationType::transfer || pair_partner.count(r.id)) continue;
            const auto& t = std::get<TransferKind>(r.kind);
            if (!t.recipient || !t.sender) continue;
            for (std::size_t j = i + 1; j < rels.size(); ++j) {
                const Relation& o = rels[j];
                if (o.type() != RelationType::transfer || pair_partner.count(o.id)) continue;
                const auto& ot = std::get<TransferKind>(o.kind);
                if (ot.recipient == t.recipient && ot.sender == t.sender && o.quantity &&
                    r.quantity && *o.quantity == *r.quantity &&
                    norm.label(g.container(o.source)->structure.label) !=
                        norm.label(g.container(r.source)->structure.label)) {
                    pair_partner[r.id] = o.id;
                    pair_partner[o.id] = r.id;
                    break;
                }
            }
        }
        int e = 0;
        for (const Relation& r : rels) {
            if (r.type() == RelationType::part_whole) continue;
            if (event_var.count(r.id)) continue;
            std::string var = "e" + std::to_string(++e);
            event_var[r.id] = var;
            if (auto it = pair_partner.find(r.id); it != pair_partner.end()) {
                event_var[it->second] = var;
            }
        }
        int u = 0;
        for (const std::string& name : g.variables()) {
            unknown_var[name] = "u" + std::to_string(++u);
        }

        // Container conjuncts, each with its incoming part-whole block.
        for (const Container& c : g.containers()) {
            const std::string& var = node_var.at(c.id);
            conjuncts.push_back("Owner(" + var + ", " +
                                underscored(c.structure.label) + ")");
            push_measured(var, c.structure, c.quantity, countable(c));
            std::vector<int> part_sources;
            for (const Relation& r : rels) {
                if (r.type() == RelationType::part_whole && r.target == c.id) {
                    part_sources.push_back(r.source);
                }
            }
            if (!part_sources.empty()) {
                std::string set = "{";
                for (std::size_t i = 0; i < part_sources.size(); ++i) {
                    if (i) set += ", ";
                    set += node_var.at(part_sources[i]);
                }
                set += "}";
                conjuncts.push_back("PartWhole(" + set + ", " + var + ")");
            }
        }

        // Relation conjuncts.
        std::vector<int> done;
        for (const Relation& r : rels) {
            if (r.type() == RelationType::part_whole) continue;
            if (std::find(done.begin(), done.end(), r.id) != done.end()) continue;
            const std::string& ev = event_var.at(r.id);
            const Container& src = *g.container(r.source);
            switch (r.type()) {
                case RelationType::transfer: {
                    const auto& t = std::get<TransferKind>(r.kind);
                    conjuncts.push_back("Transfer(" + ev + ")");
                    auto edge_block = [&](const Relation& rel) {
                        conjuncts.push_back("Source(" + ev + ", " + node_var.at(rel.source) +
                                            ")");
                        conjuncts.push_back("Target(" + ev + ", " + node_var.at(rel.target) +
                                            ")");
                        conjuncts.push_back("Time(" + node_var.at(rel.source) + ") + 1 = Time(" +
                                            node_var.at(rel.target) + ")");
                    };
                    edge_block(r);
                    if (auto it = pair_partner.find(r.id); it != pair_partner.end()) {
                        edge_block(*g.relation(it->second));
                        done.push_back(it->second);
                    }
                    if (t.sender) {
                        conjuncts.push_back("Sender(" + ev + ", " + underscored(*t.sender) +
                                            ")");
                    }
                    if (t.recipient) {
                        conjuncts.push_back("Recipient(" + ev + ", " +
                                            underscored(*t.recipient) + ")");
                    }
                    push_arg_block(ev, src, *r.quantity, false);
                    break;
                }
                case RelationType::rate: {
                    conjuncts.push_back("Rate(" + ev + ")");
                    conjuncts.push_back("Source(" + ev + ", " + node_var.at(r.source) + ")");
                    conjuncts.push_back("Target(" + ev + ", " + node_var.at(r.target) + ")");
                    conjuncts.push_back("Time(" + node_var.at(r.source) + ") = Time(" +
                                        node_var.at(r.target) + ")");
                    push_arg_block(ev, src, *r.quantity, true);
                    break;
                }
                case RelationType::comparison: {
                    const auto& c = std::get<ComparisonKind>(r.kind);
                    conjuncts.push_back(
                        (c.op == ComparisonOp::add ? "ComparisonAdd(" : "ComparisonMul(") + ev +
                        ")");
                    conjuncts.push_back("Source(" + ev + ", " + node_var.at(r.source) + ")");
                    conjuncts.push_back("Target(" + ev + ", " + node_var.at(r.target) + ")");
                    conjuncts.push_back("Time(" + node_var.at(r.source) + ") = Time(" +
                                        node_var.at(r.target) + ")");
                    push_arg_block(ev, src, *r.quantity, false);
                    break;
                }
                case RelationType::part_whole: break;
            }
        }

        FolDocument doc;
        if (conjuncts.empty()) {
            doc.formula = "true";
            return doc;
        }
        std::ostringstream out;
        out << "exists";
        for (int i = 1; i <= v; ++i) out << " v" << i << (i == v && e + u == 0 ? "" : " exists");
        for (int i = 1; i <= e; ++i) out << " e" << i << (i == e && u == 0 ? "" : " exists");
        for (int i = 1; i <= u; ++i) out << " u" << i << (i == u ? "" : " exists");
        out << " (\n";
        for (std::size_t i = 0; i < conjuncts.size(); ++i) {
            out << "  " << (i ? "and " : "") << conjuncts[i] << "\n";
        }
        out << ")";
        doc.formula = out.str();
        return doc;
    }
};

}  // namespace

FolDocument to_fol(const WorldModel& g, const FolOptions& options, const Normalizer& norm) {
    FolWriter writer{g, options, norm, {}, {}, {}, {}};
    return writer.run();
}

namespace {

const char* kMeasureAxioms =
    "# AXIOMS:measure\n"
    "forall x forall m (Measure(x, m) and m in Naturals iff Cardinality(x, m))\n"
    "\n"
    "forall x forall y forall mx forall my (intersection(x, y) = empty and Measure(x, mx)\n"
    "  and Measure(y, my) implies Measure(union(x, y), mx + my))\n"
    "\n"
    "forall x forall y forall u (Quantity(x, u) + Quantity(y, u) = Quantity(x + y, u))\n"
    "\n"
    "forall x forall y forall u (Quantity(x, u) - Quantity(y, u) = Quantity(x - y, u))\n"
    "\n"
    "forall x (Quantity(x, Milliliter) = Quantity(x / 1000, Liter))\n";

const char* kRelationAxioms =
    "# AXIOMS:relations\n"
    "forall e forall vs forall vt forall r (Rate(e) and Arg(e, r) and Source(e, vs)\n"
    "  and Target(e, vt) implies Partition(r, vs)\n"
    "  and exists m (Measure(r, m) and Measure(vt, m)))\n"
    "\n"
    "forall x forall y (Partition(x, y) iff (forall z in x forall z2 in x\n"
    "  (not (z = z2) implies intersection(z, z2) = empty) and y = bigunion(x)))\n"
    "\n"
    "forall e forall vs forall vt forall r (Transfer(e) and Arg(e, r) and Source(e, vs)\n"
    "  and Target(e, vt) implies\n"
    "  exists z (Owner(vs, z) and Owner(vt, z) and Recipient(e, z) and Partition({r, vs}, vt))\n"
    "  or exists z (Owner(vs, z) and Owner(vt, z) and Sender(e, z) and Partition({r, vt}, vs)))\n"
    "\n"
    "forall e forall vs forall vt forall ms forall mt forall r (ComparisonAdd(e)\n"
    "  and Arg(e, r) and Source(e, vs) and Target(e, vt) and Measure(vs, ms)\n"
    "  and Measure(vt, mt) implies ms + r = mt)\n"
    "\n"
    "forall e forall vs forall vt forall ms forall mt forall r (ComparisonMul(e)\n"
    "  and Arg(e, r) and Source(e, vs) and Target(e, vt) and Measure(vs, ms)\n"
    "  and Measure(vt, mt) implies ms * r = mt)\n"
    "\n"
    "forall vt forall X (PartWhole(X, vt) iff Partition(X, vt))\n"
    "\n"
    "forall vt forall X (PartWhole(X, vt) implies forall vs in X (Time(vs) = Time(vt)))\n";

// Schemas over every entity/attribute pair; ENTITY and ATTRIBUTE are
// placeholder predicates, since quantifying over predicates leaves FOL.
const char* kReasoningAxioms =
    "# AXIOMS:reasoning\n"
    "forall e forall r (Transfer(e) and Arg(e, r)\n"
    "  and forall x in r (ENTITY(x) and ATTRIBUTE(x))\n"
    "  implies exists v exists o exists q (Source(e, v) and Owner(v, o)\n"
    "  and Measure(v, q) and forall x in v (ENTITY(x) and ATTRIBUTE(x))))\n"
    "\n"
    "forall e forall r (Transfer(e) and Arg(e, r)\n"
    "  and forall x in r (ENTITY(x) and ATTRIBUTE(x))\n"
    "  implies exists v exists o exists q (Target(e, v) and Owner(v, o)\n"
    "  and Measure(v, q) and forall x in v (ENTITY(x) and ATTRIBUTE(x))))\n"
    "\n"
    "forall e forall r (Transfer(e) and Arg(e, r) and ENTITY(r) and ATTRIBUTE(r)\n"
    "  implies exists v exists o exists q (Source(e, v) and Owner(v, o)\n"
    "  and Measure(v, q) and ENTITY(v) and ATTRIBUTE(v)))\n"
    "\n"
    "forall e forall r (Transfer(e) and Arg(e, r) and ENTITY(r) and ATTRIBUTE(r)\n"
    "  implies exists v exists o exists q (Target(e, v) and Owner(v, o)\n"
    "  and Measure(v, q) and ENTITY(v) and ATTRIBUTE(v)))\n"
    "\n"
    "forall e forall r (ComparisonAdd(e) and Arg(e, r)\n"
    "  and forall x in r (ENTITY(x) and ATTRIBUTE(x))\n"
    "  implies exists v exists o exists q (Source(e, v) and Owner(v, o)\n"
    "  and Measure(v, q) and forall x in v (ENTITY(x) and ATTRIBUTE(x))))\n"
    "\n"
    "forall e forall r (ComparisonAdd(e) and Arg(e, r)\n"
    "  and forall x in r (ENTITY(x) and ATTRIBUTE(x))\n"
    "  implies exists v exists o exists q (Target(e, v) and Owner(v, o)\n"
    "  and Measure(v, q) and forall x in v (ENTITY(x) and ATTRIBUTE(x))))\n"
    "\n"
    "forall e forall r (ComparisonMul(e) and Arg(e, r)\n"
    "  and forall x in r (ENTITY(x) and ATTRIBUTE(x))\n"
    "  implies exists v exists o exists q (Source(e, v) and Owner(v, o)\n"
    "  and Measure(v, q) and forall x in v (ENTITY(x) and ATTRIBUTE(x))))\n"
    "\n"
    "forall e forall r (ComparisonMul(e) and Arg(e, r)\n"
    "  and forall x in r (ENTITY(x) and ATTRIBUTE(x))\n"
    "  implies exists v exists o exists q (Target(e, v) and Owner(v, o)\n"
    "  and Measure(v, q) and forall x in v (ENTITY(x) and ATTRIBUTE(x))))\n"
    "\n"
    "forall e forall r (Rate(e) and Arg(e, r)\n"
    "  and forall x in r forall y in x (ENTITY(y) and ATTRIBUTE(y))\n"
    "  implies exists v exists o exists q (Source(e, v) and Owner(v, o)\n"
    "  and Measure(v, q) and forall x in v (ENTITY(x) and ATTRIBUTE(x))))\n";

}  // namespace

std::string fol_axioms(AxiomFamily which) {
    switch (which) {
        case AxiomFamily::measure: return kMeasureAxioms;
        case AxiomFamily::relations: return kRelationAxioms;
        case AxiomFamily::reasoning: return kReasoningAxioms;
        case AxiomFamily::all:
            return std::string(kMeasureAxioms) + "\n" + kRelationAxioms + "\n" +
                   kReasoningAxioms;
    }
    return {};
}

// ---------------------------------------------------------------------------
// Reader

namespace {

struct FolParser {
    std::string_view text;
    std::size_t pos = 0;
    FolStats stats;

    [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, pos); }

    void skip_ws() {
        while (pos < text.size() &&
               std::isspace(static_cast<unsigned char>(text[pos]))) {
            ++pos;
        }
    }

    bool at_end() {
        skip_ws();
        return pos >= text.size();
    }

    bool peek_symbol(char c) {
        skip_ws();
        return pos < text.size() && text[pos] == c;
    }

    bool eat_symbol(char c) {
        if (!peek_symbol(c)) return false;
        ++pos;
        return true;
    }

    std::string peek_word() {
        skip_ws();
        std::size_t p = pos;
        std::string w;
        while (p < text.size() && (std::isalnum(static_cast<unsigned char>(text[p])) ||
                                   text[p] == '_')) {
            w.push_back(text[p++]);
        }
        return w;
    }

    bool eat_word(const std::string& w) {
        skip_ws();
        if (peek_word() != w) return false;
        pos += w.size();
        return true;
    }

    std::string expect_ident() {
        std::string w = peek_word();
        if (w.empty() || std::isdigit(static_cast<unsigned char>(w[0]))) {
            fail("expected an identifier");
        }
        pos += w.size();
        return w;
    }

    static bool is_keyword(const std::string& w) {
        return w == "and" || w == "or" || w == "implies" || w == "iff" || w == "not" ||
               w == "exists" || w == "forall" || w == "in" || w == "true" || w == "false";
    }

    // term := factor { (+|-|*|/) factor }
    void parse_term() {
        parse_factor();
        while (true) {
            skip_ws();
            if (pos < text.size() && (text[pos] == '+' || text[pos] == '-' ||
                                      text[pos] == '*' || text[pos] == '/')) {
                ++pos;
                parse_factor();
            } else {
                break;
            }
        }
    }

    void parse_factor() {
        skip_ws();
        if (pos >= text.size()) fail("expected a term");
        char c = text[pos];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            while (pos < text.size() && (std::isdigit(static_cast<unsigned char>(text[pos])) ||
                                         text[pos] == '.')) {
                ++pos;
            }
            return;
        }
        if (c == '{') {
            ++pos;
            if (!eat_symbol('}')) {
                parse_term();
                while (eat_symbol(',')) parse_term();
                if (!eat_symbol('}')) fail("expected '}'");
            }
            return;
        }
        if (c == '(') {
            ++pos;
            parse_term();
            if (!eat_symbol(')')) fail("expected ')' in term");
            return;
        }
        std::string name = expect_ident();
        if (is_keyword(name)) fail("unexpected keyword '" + name + "' in term");
        // Function application binds only without whitespace: "Time(v1)" is
        // a call, "v1 (...)" leaves the parenthesis to the enclosing
        // formula (a quantifier body).
        if (pos < text.size() && text[pos] == '(') {
            ++pos;
            if (!eat_symbol(')')) {
                parse_term();
                while (eat_symbol(',')) parse_term();
                if (!eat_symbol(')')) fail("expected ')' after arguments");
            }
        }
    }

    // atom := true | false | term [ (= | in) term ]
    void parse_atom() {
        if (eat_word("true") || eat_word("false")) {
            ++stats.atoms;
            return;
        }
        parse_term();
        skip_ws();
        if (eat_symbol('=')) {
            parse_term();
        } else if (eat_word("in")) {
            parse_term();
        }
        ++stats.atoms;
    }

    // unary := not unary | quantifier | ( formula ) | atom
    void parse_unary() {
        skip_ws();
        std::string w = peek_word();
        if (w == "not") {
            pos += w.size();
            parse_unary();
            return;
        }
        if (w == "exists" || w == "forall") {
            pos += w.size();
            expect_ident();
            ++stats.quantifiers;
            if (eat_word("in")) parse_term();
            parse_unary();
            return;
        }
        if (peek_symbol('(')) {
            ++pos;
            parse_formula();
            if (!eat_symbol(')')) fail("expected ')'");
            return;
        }
        parse_atom();
    }

    void parse_and() {
        parse_unary();
        while (eat_word("and")) parse_unary();
    }
    void parse_or() {
        parse_and();
        while (eat_word("or")) parse_and();
    }
    void parse_implies() {
        parse_or();
        while (eat_word("implies")) parse_or();
    }
    void parse_formula() {
        parse_implies();
        while (eat_word("iff")) parse_implies();
    }
};

}  // namespace

FolStats parse_fol(const std::string& formula) {
    FolParser p{formula, 0, {}};
    p.parse_formula();
    if (!p.at_end()) p.fail("trailing input after formula");
    ++p.stats.formulas;
    return p.stats;
}

FolStats parse_fol_document(const std::string& text) {
    FolStats total;
    std::string block;
    std::istringstream lines(text);
    std::string line;
    auto flush = [&]() {
        if (block.find_first_not_of(" \t\n") == std::string::npos) {
            block.clear();
            return;
        }
        FolStats s = parse_fol(block);
        total.atoms += s.atoms;
        total.quantifiers += s.quantifiers;
        total.formulas += s.formulas;
        block.clear();
    };
    while (std::getline(lines, line)) {
        if (line.empty() || line[0] == '#') {
            flush();
            continue;
        }
        block += line + "\n";
    }
    flush();
    return total;
}

}  // namespace mathworld
