#include "mathworld/convert.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "mathworld/errors.hpp"

namespace mathworld {

namespace {

std::optional<std::string> opt_text(const Arg& a) {
    if (a.is_none()) return std::nullopt;
    return a.to_string();
}

std::string label_or_world(const Arg& a) { return a.is_none() ? kWorldLabel : a.to_string(); }

Arg arg_of_quantity(const Quantity& q) {
    return q.is_known() ? Arg::of_number(q.value()) : Arg::of_var(q.var_name());
}

Arg arg_of_opt(const std::optional<std::string>& s) {
    return s ? Arg::of_text(*s) : Arg::none();
}

// Applies one form's predicates to a growing model.
//
// Variable tokens in predicates mark "an unknown goes here"; the model
// allocates its own fresh names, since predicted forms give no reliable
// variable identity. Matching is purely structural.
struct Builder {
    WorldModel model;
    const Normalizer& norm;
    std::vector<std::string>* diagnostics;
    std::vector<int> focus;  // elements matched or created by the current form
    // (form index, container id, quantity before binding)
    std::vector<std::tuple<int, int, Quantity>> bindings;
    int form_index = 0;

    void note(const std::string& msg) {
        if (diagnostics) diagnostics->push_back(msg);
    }

    void touch(int id) { focus.push_back(id); }

    // Most recent structural match, optionally skipping one container.
    std::optional<int> best_match(const ContainerStructure& spec, int exclude = 0) const {
        std::optional<int> best;
        for (const Container& c : model.containers()) {
            if (c.id != exclude && structural_equal(c.structure, spec, norm)) best = c.id;
        }
        return best;
    }

    int match_or_create(const ContainerStructure& spec, int exclude = 0) {
        if (auto m = best_match(spec, exclude)) {
            touch(*m);
            return *m;
        }
        int id = model.add_container(spec, Quantity::var(fresh_var(model)));
        touch(id);
        return id;
    }

    Quantity relation_quantity(const Arg& a) {
        if (a.kind == ArgKind::number) return Quantity::known(a.number);
        return Quantity::var(fresh_var(model));
    }

    // Re-stated relations (a question naming an edge that already exists)
    // must not produce duplicate edges.
    std::optional<int> find_same_relation(const RelationKind& kind,
                                          const std::optional<Quantity>& quantity, int source,
                                          int target) const {
        RelationType type = relation_type(kind);
        for (const Relation& r : model.relations()) {
            if (r.type() != type || r.source != source || r.target != target) continue;
            if (quantity.has_value() != r.quantity.has_value()) continue;
            if (quantity && !(*quantity == *r.quantity)) continue;
            if (type == RelationType::comparison &&
                std::get<ComparisonKind>(r.kind).op != std::get<ComparisonKind>(kind).op) {
                continue;
            }
            if (type == RelationType::transfer) {
                const auto& a = std::get<TransferKind>(r.kind);
                const auto& b = std::get<TransferKind>(kind);
                if (a.recipient != b.recipient || a.sender != b.sender) continue;
            }
            return r.id;
        }
        return std::nullopt;
    }

    int add_or_reuse_relation(RelationKind kind, std::optional<Quantity> quantity, int source,
                              int target) {
        if (auto existing = find_same_relation(kind, quantity, source, target)) {
            touch(*existing);
            return *existing;
        }
        int id = model.add_relation(std::move(kind), std::move(quantity), source, target);
        touch(id);
        return id;
    }

    void apply_container(const Predicate& p) {
        if (p.args[2].is_none()) throw ValidationError("container predicate without an entity");
        ContainerStructure spec{label_or_world(p.args[0]), p.args[2].to_string(),
                                opt_text(p.args[3]), opt_text(p.args[4])};
        const Arg& qty = p.args[1];
        if (qty.kind == ArgKind::number) {
            Quantity value = Quantity::known(qty.number);  // throws when not positive
            if (auto m = match_container(model, spec, value, norm)) {
                // Update of an unknown to a known value: bind instead of
                // creating a parallel node.
                const Container* c = model.container(*m);
                bindings.emplace_back(form_index, *m, c->quantity);
                note("bound " + c->quantity.var_name() + " = " + qty.number.to_string() +
                     " in container " + std::to_string(*m));
                model.bind_variable(c->quantity.var_name(), qty.number);
                touch(*m);
                return;
            }
            touch(model.add_container(std::move(spec), value));
            return;
        }
        // Unknown quantity: the question (or a re-statement) names an
        // existing node when one matches; prefer nodes that still hold an
        // unknown.
        if (auto m = match_container(model, spec, Quantity::var("x1"), norm)) {
            touch(*m);
            return;
        }
        touch(model.add_container(std::move(spec), Quantity::var(fresh_var(model))));
    }

    void apply_transfer(const Predicate& p) {
        std::optional<std::string> recipient = opt_text(p.args[0]);
        std::optional<std::string> sender = opt_text(p.args[1]);
        if (!recipient && !sender) {
            throw ValidationError("transfer with neither sender nor recipient");
        }
        if (recipient && sender && norm.label(*recipient) == norm.label(*sender)) {
            throw ValidationError("transfer whose sender equals its recipient");
        }
        if (p.args[3].is_none()) throw ValidationError("transfer predicate without an entity");
        std::string entity = p.args[3].to_string();
        std::optional<std::string> attribute = opt_text(p.args[4]);
        std::optional<std::string> unit = opt_text(p.args[5]);

        std::vector<std::string> sides;
        if (sender) sides.push_back(*sender);
        if (recipient) sides.push_back(*recipient);

        std::optional<Quantity> quantity;
        TransferKind kind{recipient, sender};
        for (const std::string& side : sides) {
            ContainerStructure spec{side, entity, attribute, unit};
            int source = match_or_create(spec);
            if (!quantity) quantity = relation_quantity(p.args[2]);
            int target = model.add_container(spec, Quantity::var(fresh_var(model)));
            touch(target);
            touch(model.add_relation(kind, quantity, source, target));
        }
    }

    void apply_rate(const Predicate& p) {
        if (p.args[2].is_none() || p.args[5].is_none()) {
            throw ValidationError("rate predicate without source/target entities");
        }
        std::string label = label_or_world(p.args[0]);
        ContainerStructure src_spec{label, p.args[2].to_string(), opt_text(p.args[3]),
                                    opt_text(p.args[4])};
        ContainerStructure tgt_spec{label, p.args[5].to_string(), opt_text(p.args[6]),
                                    opt_text(p.args[7])};
        int source = match_or_create(src_spec);
        int target = match_or_create(tgt_spec, source);  // rate needs two separate nodes
        add_or_reuse_relation(RateKind{}, relation_quantity(p.args[1]), source, target);
    }

    void apply_comparison(const Predicate& p, ComparisonOp op) {
        if (p.args[6].is_none() || p.args[3].is_none()) {
            throw ValidationError("comparison predicate without source/target entities");
        }
        ContainerStructure tgt_spec{label_or_world(p.args[0]), p.args[3].to_string(),
                                    opt_text(p.args[4]), opt_text(p.args[5])};
        ContainerStructure src_spec{label_or_world(p.args[1]), p.args[6].to_string(),
                                    opt_text(p.args[7]), opt_text(p.args[8])};
        int source = match_or_create(src_spec);
        int target = match_or_create(tgt_spec, source);
        add_or_reuse_relation(ComparisonKind{op}, relation_quantity(p.args[2]), source, target);
    }

    void apply_part(const Predicate& p) {
        if (p.args[1].is_none()) throw ValidationError("part predicate without a whole entity");
        ContainerStructure whole_spec{label_or_world(p.args[0]), p.args[1].to_string(),
                                      opt_text(p.args[2]), opt_text(p.args[3])};
        int whole = match_or_create(whole_spec);
        for (std::size_t base = 4; base + 3 < p.args.size(); base += 4) {
            if (p.args[base + 1].is_none()) {
                throw ValidationError("part predicate with a part missing its entity");
            }
            ContainerStructure part_spec{label_or_world(p.args[base]),
                                         p.args[base + 1].to_string(),
                                         opt_text(p.args[base + 2]), opt_text(p.args[base + 3])};
            int part = match_or_create(part_spec, whole);
            add_or_reuse_relation(PartWholeKind{}, std::nullopt, part, whole);
        }
    }

    void apply(const Predicate& p) {
        switch (p.head) {
            case PredicateHead::container: apply_container(p); break;
            case PredicateHead::transfer: apply_transfer(p); break;
            case PredicateHead::rate: apply_rate(p); break;
            case PredicateHead::difference: apply_comparison(p, ComparisonOp::add); break;
            case PredicateHead::explicit_: apply_comparison(p, ComparisonOp::mul); break;
            case PredicateHead::part: apply_part(p); break;
        }
    }
};

}  // namespace

bool StateSnapshot::contains_container(int id) const {
    return std::find(containers.begin(), containers.end(), id) != containers.end();
}

bool StateSnapshot::contains_relation(int id) const {
    return std::find(relations.begin(), relations.end(), id) != relations.end();
}

std::optional<int> match_container(const WorldModel& model, const ContainerStructure& spec,
                                   const std::optional<Quantity>& quantity_hint,
                                   const Normalizer& norm) {
    std::optional<int> best_any, best_unknown;
    for (const Container& c : model.containers()) {
        if (!structural_equal(c.structure, spec, norm)) continue;
        best_any = c.id;
        if (c.quantity.is_var()) best_unknown = c.id;
    }
    if (!quantity_hint) return best_any;
    if (quantity_hint->is_known()) return best_unknown;
    return best_unknown ? best_unknown : best_any;
}

GraphBuildResult lfs_to_graph(const std::vector<LogicalForm>& forms, const Normalizer& norm) {
    GraphBuildResult result;
    Builder builder{WorldModel{}, norm, &result.diagnostics, {}, {}, 0};

    for (std::size_t i = 0; i < forms.size(); ++i) {
        builder.form_index = static_cast<int>(i);
        builder.focus.clear();
        for (const Predicate& p : forms[i].predicates) {
            try {
                builder.apply(p);
            } catch (const ValidationError& e) {
                builder.note("dropped '" + serialize_predicate(p) + "': " + e.what());
            }
        }
        StateSnapshot snap;
        for (const Container& c : builder.model.containers()) snap.containers.push_back(c.id);
        for (const Relation& r : builder.model.relations()) snap.relations.push_back(r.id);
        result.states.push_back(std::move(snap));
    }

    // A binding made at form j means earlier states still saw the unknown.
    for (const auto& [bound_at, container_id, before] : builder.bindings) {
        for (int j = 0; j < bound_at && j < static_cast<int>(result.states.size()); ++j) {
            if (result.states[j].contains_container(container_id)) {
                result.states[j].quantity_overrides.emplace_back(container_id, before);
            }
        }
    }

    // Reference variable: among the elements the question's form matched or
    // created, the unknown held by the most recently created one.
    if (!forms.empty()) {
        int best_id = 0;
        std::optional<std::string> ref;
        for (int id : builder.focus) {
            std::optional<std::string> var;
            if (const Container* c = builder.model.container(id)) {
                if (c->quantity.is_var()) var = c->quantity.var_name();
            } else if (const Relation* r = builder.model.relation(id)) {
                if (r->quantity && r->quantity->is_var()) var = r->quantity->var_name();
            }
            if (var && id >= best_id) {
                best_id = id;
                ref = var;
            }
        }
        builder.model.set_ref_var(ref);
        if (!ref) builder.note("question form matched no unknown; model has no ref_var");
    }

    result.model = std::move(builder.model);
    return result;
}

namespace {

Quantity quantity_at(const WorldModel& model, const StateSnapshot& state, int container_id) {
    for (const auto& [id, q] : state.quantity_overrides) {
        if (id == container_id) return q;
    }
    return model.container(container_id)->quantity;
}

Predicate container_predicate(const Container& c, const Quantity& q) {
    Predicate p;
    p.head = PredicateHead::container;
    p.args = {Arg::of_text(c.structure.label), arg_of_quantity(q),
              Arg::of_text(c.structure.entity), arg_of_opt(c.structure.attribute),
              arg_of_opt(c.structure.unit)};
    return p;
}

Predicate relation_predicate(const WorldModel& model, const Relation& r,
                             const std::vector<int>& part_sources) {
    const Container& src = *model.container(r.source);
    const Container& tgt = *model.container(r.target);
    Predicate p;
    switch (r.type()) {
        case RelationType::transfer: {
            const auto& t = std::get<TransferKind>(r.kind);
            p.head = PredicateHead::transfer;
            p.args = {arg_of_opt(t.recipient),           arg_of_opt(t.sender),
                      arg_of_quantity(*r.quantity),      Arg::of_text(src.structure.entity),
                      arg_of_opt(src.structure.attribute), arg_of_opt(src.structure.unit)};
            break;
        }
        case RelationType::rate: {
            p.head = PredicateHead::rate;
            p.args = {Arg::of_text(src.structure.label),   arg_of_quantity(*r.quantity),
                      Arg::of_text(src.structure.entity),  arg_of_opt(src.structure.attribute),
                      arg_of_opt(src.structure.unit),      Arg::of_text(tgt.structure.entity),
                      arg_of_opt(tgt.structure.attribute), arg_of_opt(tgt.structure.unit)};
            break;
        }
        case RelationType::comparison: {
            const auto& c = std::get<ComparisonKind>(r.kind);
            p.head = c.op == ComparisonOp::add ? PredicateHead::difference
                                               : PredicateHead::explicit_;
            p.args = {Arg::of_text(tgt.structure.label),   Arg::of_text(src.structure.label),
                      arg_of_quantity(*r.quantity),        Arg::of_text(tgt.structure.entity),
                      arg_of_opt(tgt.structure.attribute), arg_of_opt(tgt.structure.unit),
                      Arg::of_text(src.structure.entity),  arg_of_opt(src.structure.attribute),
                      arg_of_opt(src.structure.unit)};
            break;
        }
        case RelationType::part_whole: {
            p.head = PredicateHead::part;
            p.args = {Arg::of_text(tgt.structure.label), Arg::of_text(tgt.structure.entity),
                      arg_of_opt(tgt.structure.attribute), arg_of_opt(tgt.structure.unit)};
            for (int source_id : part_sources) {
                const Container& part = *model.container(source_id);
                p.args.push_back(Arg::of_text(part.structure.label));
                p.args.push_back(Arg::of_text(part.structure.entity));
                p.args.push_back(arg_of_opt(part.structure.attribute));
                p.args.push_back(arg_of_opt(part.structure.unit));
            }
            break;
        }
    }
    return p;
}

}  // namespace

std::vector<LogicalForm> graph_to_lfs(const WorldModel& model,
                                      const std::vector<StateSnapshot>& states,
                                      const Normalizer& norm) {
    if (states.empty()) throw ConversionError("no incremental states to linearize");

    // States must form a monotone chain over the model's elements.
    for (std::size_t i = 0; i < states.size(); ++i) {
        for (int id : states[i].containers) {
            if (!model.container(id)) {
                throw ConversionError("state " + std::to_string(i + 1) +
                                      " references unknown container " + std::to_string(id));
            }
        }
        for (int id : states[i].relations) {
            if (!model.relation(id)) {
                throw ConversionError("state " + std::to_string(i + 1) +
                                      " references unknown relation " + std::to_string(id));
            }
        }
        if (i > 0) {
            for (int id : states[i - 1].containers) {
                if (!states[i].contains_container(id)) {
                    throw ConversionError("container " + std::to_string(id) +
                                          " removed at state " + std::to_string(i + 1) +
                                          "; deltas cannot express removal");
                }
            }
            for (int id : states[i - 1].relations) {
                if (!states[i].contains_relation(id)) {
                    throw ConversionError("relation " + std::to_string(id) +
                                          " removed at state " + std::to_string(i + 1) +
                                          "; deltas cannot express removal");
                }
            }
        }
    }

    std::vector<LogicalForm> forms;
    const StateSnapshot* prev = nullptr;

    for (std::size_t i = 0; i < states.size(); ++i) {
        const StateSnapshot& state = states[i];
        bool interrogative = i + 1 == states.size();

        std::vector<std::pair<int, Predicate>> emitted;
        std::set<int> covered;  // element ids spelled out as their own predicate

        // New containers, plus re-statements that bind an unknown.
        for (int id : state.containers) {
            const Container& c = *model.container(id);
            Quantity now = quantity_at(model, state, id);
            bool is_new = !prev || !prev->contains_container(id);
            if (is_new) {
                if (now.is_var() && !interrogative) continue;  // implicit node
                emitted.emplace_back(id, container_predicate(c, now));
                covered.insert(id);
            } else if (prev && quantity_at(model, *prev, id).is_var() && now.is_known()) {
                emitted.emplace_back(id, container_predicate(c, now));
                covered.insert(id);
            }
        }

        // New relations: pair two-owner transfer edges, group part-whole
        // edges per whole.
        std::vector<int> new_relations;
        for (int id : state.relations) {
            if (!prev || !prev->contains_relation(id)) new_relations.push_back(id);
        }
        std::sort(new_relations.begin(), new_relations.end());

        std::set<int> skip;
        for (int id : new_relations) {
            if (skip.count(id)) continue;
            const Relation& r = *model.relation(id);
            if (r.type() == RelationType::transfer) {
                const auto& t = std::get<TransferKind>(r.kind);
                if (t.recipient && t.sender) {
                    for (int other_id : new_relations) {
                        if (other_id <= id || skip.count(other_id)) continue;
                        const Relation& o = *model.relation(other_id);
                        if (o.type() != RelationType::transfer) continue;
                        const auto& ot = std::get<TransferKind>(o.kind);
                        if (ot.recipient == t.recipient && ot.sender == t.sender &&
                            o.quantity && r.quantity && *o.quantity == *r.quantity &&
                            norm.label(model.container(o.source)->structure.label) !=
                                norm.label(model.container(r.source)->structure.label)) {
                            skip.insert(other_id);  // one predicate covers both edges
                            covered.insert(other_id);
                            break;
                        }
                    }
                }
                emitted.emplace_back(id, relation_predicate(model, r, {}));
                covered.insert(id);
            } else if (r.type() == RelationType::part_whole) {
                std::vector<int> parts;
                for (int other_id : new_relations) {
                    if (skip.count(other_id)) continue;
                    const Relation& o = *model.relation(other_id);
                    if (o.type() == RelationType::part_whole && o.target == r.target) {
                        parts.push_back(o.source);
                        if (other_id != id) skip.insert(other_id);
                        covered.insert(other_id);
                    }
                }
                if (parts.size() < 2) {
                    // The part predicate needs two or more parts; re-list the
                    // whole's previously introduced parts in edge order.
                    std::vector<int> all_parts;
                    for (int rel_id : state.relations) {
                        const Relation& o = *model.relation(rel_id);
                        if (o.type() == RelationType::part_whole && o.target == r.target) {
                            all_parts.push_back(o.source);
                        }
                    }
                    parts = std::move(all_parts);
                }
                emitted.emplace_back(id, relation_predicate(model, r, parts));
            } else {
                emitted.emplace_back(id, relation_predicate(model, r, {}));
                covered.insert(id);
            }
        }

        // The interrogative form must spell out the element holding the
        // reference variable, even when it is not new.
        if (interrogative && model.ref_var()) {
            int holder = 0;
            for (int id : state.containers) {
                const Container& c = *model.container(id);
                if (c.quantity.is_var() && c.quantity.var_name() == *model.ref_var()) holder = id;
            }
            int holder_rel = 0;
            for (int id : state.relations) {
                const Relation& r = *model.relation(id);
                if (r.quantity && r.quantity->is_var() &&
                    r.quantity->var_name() == *model.ref_var()) {
                    holder_rel = id;
                }
            }
            if (holder && !covered.count(holder)) {
                emitted.emplace_back(holder,
                                     container_predicate(*model.container(holder),
                                                         model.container(holder)->quantity));
            } else if (!holder && holder_rel && !covered.count(holder_rel)) {
                const Relation& r = *model.relation(holder_rel);
                if (r.type() != RelationType::part_whole) {
                    emitted.emplace_back(holder_rel, relation_predicate(model, r, {}));
                }
            }
        }

        std::stable_sort(emitted.begin(), emitted.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; });
        LogicalForm form;
        for (auto& [id, pred] : emitted) form.predicates.push_back(std::move(pred));
        forms.push_back(std::move(form));
        prev = &state;
    }
    return forms;
}

}  // namespace mathworld
