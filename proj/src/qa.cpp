#include "mathworld/qa.hpp"

#include <algorithm>
#include <random>

#include "mathworld/reasoner.hpp"

namespace mathworld {

namespace {

std::string attr_prefix(const ContainerStructure& s) {
    return s.attribute ? *s.attribute + " " : "";
}

std::string plural(const std::string& entity) { return Normalizer::pluralize(entity); }

int anchor_of(const std::vector<StateSnapshot>* states, int id, bool is_relation) {
    if (!states || states->empty()) return 0;
    for (std::size_t i = 0; i < states->size(); ++i) {
        bool has = is_relation ? (*states)[i].contains_relation(id)
                               : (*states)[i].contains_container(id);
        if (has) return static_cast<int>(i);
    }
    return static_cast<int>(states->size()) - 1;
}

}  // namespace

QaResult generate_qas(const WorldModel& g, bool solve_unknowns,
                      const std::vector<StateSnapshot>* states) {
    QaResult result;
    std::vector<Equation> equations;  // induced lazily, only when needed
    bool have_equations = false;

    auto resolve = [&](const Quantity& q) -> std::optional<Rational> {
        if (q.is_known()) return q.value();
        if (!solve_unknowns) return std::nullopt;
        if (!have_equations) {
            equations = induce_equations(g);
            have_equations = true;
        }
        return recursive_solve(q.var_name(), equations);
    };

    auto push = [&](std::string question, const Quantity& q, int id, bool is_relation) {
        auto value = resolve(q);
        if (!value) {
            if (solve_unknowns && q.is_var()) {
                result.diagnostics.push_back("skipped '" + question + "': " + q.var_name() +
                                             " is unresolvable");
            }
            return;
        }
        result.qas.push_back(
            {std::move(question), *value, anchor_of(states, id, is_relation), id});
    };

    // Elements in id order; containers get both templates.
    std::size_t ci = 0, ri = 0;
    while (ci < g.containers().size() || ri < g.relations().size()) {
        bool take_container =
            ri == g.relations().size() ||
            (ci < g.containers().size() && g.containers()[ci].id < g.relations()[ri].id);
        if (take_container) {
            const Container& c = g.containers()[ci++];
            const ContainerStructure& s = c.structure;
            std::string filled = attr_prefix(s) + plural(s.entity);
            push("How many " + filled + " does " + s.label + " have?", c.quantity, c.id, false);
            push("What is the amount of " + filled + " associated with " + s.label + "?",
                 c.quantity, c.id, false);
            continue;
        }
        const Relation& r = g.relations()[ri++];
        const Container& src = *g.container(r.source);
        const Container& tgt = *g.container(r.target);
        switch (r.type()) {
            case RelationType::transfer: {
                const auto& t = std::get<TransferKind>(r.kind);
                std::string q = "How many " + plural(src.structure.entity) + " are transferred";
                if (t.sender) q += " from " + *t.sender;
                if (t.recipient) q += " to " + *t.recipient;
                push(q + "?", *r.quantity, r.id, true);
                break;
            }
            case RelationType::rate: {
                push("How many " + src.structure.entity + " does " + src.structure.label +
                         " have per " + tgt.structure.entity + "?",
                     *r.quantity, r.id, true);
                break;
            }
            case RelationType::comparison: {
                const auto& c = std::get<ComparisonKind>(r.kind);
                if (c.op == ComparisonOp::add) {
                    push("How many more " + plural(tgt.structure.entity) + " does " +
                             tgt.structure.label + " have than " + src.structure.label + "?",
                         *r.quantity, r.id, true);
                } else {
                    push("How much more " + src.structure.entity + " does " +
                             src.structure.label + " have than " + tgt.structure.label + "?",
                         *r.quantity, r.id, true);
                }
                break;
            }
            case RelationType::part_whole: {
                push("How many " + attr_prefix(src.structure) + plural(src.structure.entity) +
                         " are part of " + attr_prefix(tgt.structure) +
                         plural(tgt.structure.entity) + "?",
                     src.quantity, r.id, true);
                break;
            }
        }
    }
    return result;
}

std::optional<PromptStyle> prompt_style_from_name(std::string_view name) {
    if (name == "all-at-once" || name == "1") return PromptStyle::all_at_once;
    if (name == "sentence-by-sentence" || name == "2") return PromptStyle::sentence_by_sentence;
    if (name == "original" || name == "3") return PromptStyle::original;
    return std::nullopt;
}

std::string prompt_style_name(PromptStyle style) {
    switch (style) {
        case PromptStyle::all_at_once: return "all-at-once";
        case PromptStyle::sentence_by_sentence: return "sentence-by-sentence";
        case PromptStyle::original: return "original";
    }
    return "?";
}

namespace {

std::string join_sentences(const std::vector<std::string>& sentences, std::size_t count) {
    std::string out;
    for (std::size_t i = 0; i < count && i < sentences.size(); ++i) {
        if (i) out += " ";
        out += sentences[i];
    }
    return out;
}

// One problem block in the requested style. Shots come answered; the target
// ends with a bare "A:".
std::string render_block(const AnnotatedMSP& msp, PromptStyle style, int k, std::mt19937& rng,
                         bool answered, std::vector<SyntheticQA>* selected_out) {
    const WorldModel* graph = msp.gold_graph ? &*msp.gold_graph : nullptr;
    const std::vector<StateSnapshot>* states =
        msp.gold_states.empty() ? nullptr : &msp.gold_states;
    GraphBuildResult built;
    if (!graph) {
        built = lfs_to_graph(msp.logical_forms);
        graph = &built.model;
        states = &built.states;
    }

    std::vector<SyntheticQA> pool = generate_qas(*graph, true, states).qas;
    std::size_t take = std::min<std::size_t>(k < 0 ? 0 : static_cast<std::size_t>(k),
                                             pool.size());
    std::vector<std::size_t> order(pool.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    for (std::size_t i = 0; i < take; ++i) {
        std::size_t j = i + rng() % (order.size() - i);
        std::swap(order[i], order[j]);
    }
    order.resize(take);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return pool[a].anchor != pool[b].anchor ? pool[a].anchor < pool[b].anchor : a < b;
    });
    std::vector<SyntheticQA> selected;
    for (std::size_t i : order) selected.push_back(pool[i]);
    if (selected_out) *selected_out = selected;

    std::size_t body_len = msp.sentences.size() > 0 ? msp.sentences.size() - 1 : 0;
    std::string body = join_sentences(msp.sentences, body_len);
    std::string question = msp.sentences.empty() ? "" : msp.sentences.back();

    std::string gold;
    if (answered) {
        if (msp.gold_answer) {
            gold = msp.gold_answer->to_string();
        } else {
            Answer a = solve_reference(*graph);
            if (a.solved()) gold = a.value.to_string();
        }
    }

    std::string out;
    auto qa_lines = [&](const SyntheticQA& qa) {
        return "Q: " + qa.question + "\nA: " + qa.answer.to_string() + "\n";
    };

    switch (style) {
        case PromptStyle::all_at_once: {
            if (!body.empty()) out += body + "\n";
            for (const SyntheticQA& qa : selected) out += qa_lines(qa);
            break;
        }
        case PromptStyle::sentence_by_sentence: {
            int last_body = static_cast<int>(body_len) - 1;
            for (const SyntheticQA& qa : selected) {
                int upto = std::min(qa.anchor, last_body);
                std::string prefix = join_sentences(msp.sentences, upto + 1);
                if (!prefix.empty()) out += prefix + "\n";
                out += qa_lines(qa);
            }
            if (!body.empty()) out += body + "\n";
            break;
        }
        case PromptStyle::original: {
            if (!body.empty()) out += body + "\n";
            break;
        }
    }
    out += "Q: " + question + "\nA:";
    if (answered && !gold.empty()) out += " " + gold;
    return out;
}

}  // namespace

PromptBuild build_prompt_detailed(const AnnotatedMSP& msp, PromptStyle style, int k,
                                  unsigned seed, const std::vector<AnnotatedMSP>& shots) {
    std::mt19937 rng(seed);
    PromptBuild build;
    std::string out;
    for (const AnnotatedMSP& shot : shots) {
        out += render_block(shot, style, k, rng, true, nullptr) + "\n\n";
    }
    out += render_block(msp, style, k, rng, false, &build.selected);
    build.text = std::move(out);
    return build;
}

std::string build_prompt(const AnnotatedMSP& msp, PromptStyle style, int k, unsigned seed,
                         const std::vector<AnnotatedMSP>& shots) {
    return build_prompt_detailed(msp, style, k, seed, shots).text;
}

}  // namespace mathworld
