#include "mathworld/model.hpp"

#include <algorithm>
#include <cctype>

#include "mathworld/errors.hpp"

namespace mathworld {

Quantity Quantity::known(Rational value) {
    if (!value.is_positive()) {
        throw ValidationError("known quantities must be strictly positive, got " +
                              value.to_string());
    }
    Quantity q;
    q.known_ = value;
    return q;
}

Quantity Quantity::var(std::string name) {
    if (!is_variable_token(name)) {
        throw ValidationError("bad variable name: '" + name + "'");
    }
    Quantity q;
    q.var_ = std::move(name);
    return q;
}

bool is_variable_token(std::string_view token) {
    if (token.size() < 2 || token[0] != 'x') return false;
    for (std::size_t i = 1; i < token.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(token[i]))) return false;
    }
    return true;
}

RelationType relation_type(const RelationKind& kind) {
    if (std::holds_alternative<TransferKind>(kind)) return RelationType::transfer;
    if (std::holds_alternative<RateKind>(kind)) return RelationType::rate;
    if (std::holds_alternative<ComparisonKind>(kind)) return RelationType::comparison;
    return RelationType::part_whole;
}

std::string relation_type_name(RelationType type) {
    switch (type) {
        case RelationType::transfer: return "transfer";
        case RelationType::rate: return "rate";
        case RelationType::comparison: return "comparison";
        case RelationType::part_whole: return "part-whole";
    }
    return "?";
}

int WorldModel::add_container(ContainerStructure structure, Quantity quantity) {
    Container c;
    c.id = next_id_++;
    c.structure = std::move(structure);
    c.quantity = std::move(quantity);
    containers_.push_back(std::move(c));
    return containers_.back().id;
}

int WorldModel::add_relation(RelationKind kind, std::optional<Quantity> quantity, int source,
                             int target) {
    Relation r;
    r.id = next_id_++;
    r.kind = std::move(kind);
    r.quantity = std::move(quantity);
    r.source = source;
    r.target = target;
    relations_.push_back(std::move(r));
    return relations_.back().id;
}

void WorldModel::insert_container(Container c) {
    if (c.id < next_id_) {
        throw ValidationError("container id " + std::to_string(c.id) +
                              " does not increase over previous ids");
    }
    next_id_ = c.id + 1;
    containers_.push_back(std::move(c));
}

void WorldModel::insert_relation(Relation r) {
    if (r.id < next_id_) {
        throw ValidationError("relation id " + std::to_string(r.id) +
                              " does not increase over previous ids");
    }
    next_id_ = r.id + 1;
    relations_.push_back(std::move(r));
}

const Container* WorldModel::container(int id) const {
    for (const auto& c : containers_) {
        if (c.id == id) return &c;
    }
    return nullptr;
}

const Relation* WorldModel::relation(int id) const {
    for (const auto& r : relations_) {
        if (r.id == id) return &r;
    }
    return nullptr;
}

Container* WorldModel::container(int id) {
    return const_cast<Container*>(static_cast<const WorldModel*>(this)->container(id));
}

Relation* WorldModel::relation(int id) {
    return const_cast<Relation*>(static_cast<const WorldModel*>(this)->relation(id));
}

std::vector<std::string> WorldModel::variables() const {
    std::vector<std::string> vars;
    auto note = [&](const Quantity& q) {
        if (q.is_var() && std::find(vars.begin(), vars.end(), q.var_name()) == vars.end()) {
            vars.push_back(q.var_name());
        }
    };
    // Walk elements in id order so allocation order is reproducible.
    std::size_t ci = 0, ri = 0;
    while (ci < containers_.size() || ri < relations_.size()) {
        bool take_container =
            ri == relations_.size() ||
            (ci < containers_.size() && containers_[ci].id < relations_[ri].id);
        if (take_container) {
            note(containers_[ci++].quantity);
        } else {
            if (relations_[ri].quantity) note(*relations_[ri].quantity);
            ++ri;
        }
    }
    return vars;
}

bool WorldModel::has_variable(const std::string& name) const {
    auto vars = variables();
    return std::find(vars.begin(), vars.end(), name) != vars.end();
}

void WorldModel::bind_variable(const std::string& name, const Rational& value) {
    Quantity bound = Quantity::known(value);
    for (auto& c : containers_) {
        if (c.quantity.is_var() && c.quantity.var_name() == name) c.quantity = bound;
    }
    for (auto& r : relations_) {
        if (r.quantity && r.quantity->is_var() && r.quantity->var_name() == name) {
            r.quantity = bound;
        }
    }
}

bool structural_equal(const ContainerStructure& a, const ContainerStructure& b,
                      const Normalizer& norm) {
    if (a.attribute.has_value() != b.attribute.has_value()) return false;
    if (a.unit.has_value() != b.unit.has_value()) return false;
    if (norm.label(a.label) != norm.label(b.label)) return false;
    if (norm.property(a.entity) != norm.property(b.entity)) return false;
    if (a.attribute && norm.property(*a.attribute) != norm.property(*b.attribute)) return false;
    if (a.unit && norm.property(*a.unit) != norm.property(*b.unit)) return false;
    return true;
}

std::optional<std::string> validate_relation(const WorldModel& model, const Relation& r,
                                             const Normalizer& norm) {
    const Container* source = model.container(r.source);
    const Container* target = model.container(r.target);
    if (!source) return "unknown source container id " + std::to_string(r.source);
    if (!target) return "unknown target container id " + std::to_string(r.target);

    switch (r.type()) {
        case RelationType::transfer: {
            const auto& t = std::get<TransferKind>(r.kind);
            if (!t.recipient && !t.sender) return "sender/recipient missing";
            if (!structural_equal(source->structure, target->structure, norm)) {
                return "transfer endpoints are not structurally equal";
            }
            if (!r.quantity) return "transfer quantity missing";
            break;
        }
        case RelationType::rate: {
            if (norm.label(source->structure.label) != norm.label(target->structure.label)) {
                return "label mismatch";
            }
            if (!r.quantity) return "rate quantity missing";
            break;
        }
        case RelationType::comparison: {
            if (!r.quantity) return "comparison quantity missing";
            break;
        }
        case RelationType::part_whole: {
            if (r.quantity) return "part-whole relations have no quantity";
            break;
        }
    }
    return std::nullopt;
}

std::vector<std::string> validate_model(const WorldModel& model, const Normalizer& norm) {
    std::vector<std::string> problems;
    for (const auto& r : model.relations()) {
        if (auto violation = validate_relation(model, r, norm)) {
            problems.push_back("relation " + std::to_string(r.id) + ": " + *violation);
        }
    }
    if (model.ref_var() && !model.has_variable(*model.ref_var())) {
        problems.push_back("ref_var " + *model.ref_var() + " names no variable in the model");
    }
    return problems;
}

std::string fresh_var(const WorldModel& model) {
    auto vars = model.variables();
    std::size_t k = vars.size() + 1;
    auto taken = [&](const std::string& name) {
        return std::find(vars.begin(), vars.end(), name) != vars.end();
    };
    std::string candidate = "x" + std::to_string(k);
    while (taken(candidate)) {
        candidate = "x" + std::to_string(++k);
    }
    return candidate;
}

}  // namespace mathworld
