#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mathworld/normalize.hpp"
#include "mathworld/rational.hpp"

namespace mathworld {

// A quantity is either a known (strictly positive) number or an unknown
// tracked by a variable name of the form x1, x2, ...
class Quantity {
public:
    static Quantity known(Rational value);
    static Quantity var(std::string name);

    bool is_known() const { return known_.has_value(); }
    bool is_var() const { return !known_.has_value(); }
    const Rational& value() const { return *known_; }
    const std::string& var_name() const { return var_; }

    std::string to_string() const { return is_known() ? known_->to_string() : var_; }

    // Exact comparison; two unknowns are equal regardless of their names
    // (variable names are allocation artifacts, not semantics).
    friend bool operator==(const Quantity& a, const Quantity& b) {
        if (a.is_known() != b.is_known()) return false;
        return a.is_known() ? *a.known_ == *b.known_ : true;
    }

private:
    std::optional<Rational> known_;
    std::string var_;
};

// True for variable tokens: 'x' followed by one or more digits.
bool is_variable_token(std::string_view token);

// Possessor label + entity + optional attribute/unit. The label defaults to
// the literal "World" when the text expresses no possessor.
struct ContainerStructure {
    std::string label;
    std::string entity;
    std::optional<std::string> attribute;
    std::optional<std::string> unit;
};

inline constexpr const char* kWorldLabel = "World";

struct Container {
    int id = 0;
    ContainerStructure structure;
    Quantity quantity;
};

enum class ComparisonOp { add, mul };

struct TransferKind {
    std::optional<std::string> recipient;
    std::optional<std::string> sender;
};
struct RateKind {};
struct ComparisonKind {
    ComparisonOp op = ComparisonOp::add;
};
struct PartWholeKind {};

using RelationKind = std::variant<TransferKind, RateKind, ComparisonKind, PartWholeKind>;

enum class RelationType { transfer, rate, comparison, part_whole };

RelationType relation_type(const RelationKind& kind);
std::string relation_type_name(RelationType type);

struct Relation {
    int id = 0;
    RelationKind kind;
    std::optional<Quantity> quantity;
    int source = 0;
    int target = 0;

    RelationType type() const { return relation_type(kind); }
};

// Directed labeled graph of containers and relations. Container and relation
// ids share one strictly increasing id space, in creation order. The graph
// may be cyclic; nothing here assumes otherwise.
class WorldModel {
public:
    int add_container(ContainerStructure structure, Quantity quantity);
    int add_relation(RelationKind kind, std::optional<Quantity> quantity, int source, int target);

    // Insertion with caller-chosen ids (file loading); ids must strictly
    // increase across both element kinds.
    void insert_container(Container c);
    void insert_relation(Relation r);

    const std::vector<Container>& containers() const { return containers_; }
    const std::vector<Relation>& relations() const { return relations_; }
    const Container* container(int id) const;
    const Relation* relation(int id) const;
    Container* container(int id);
    Relation* relation(int id);

    const std::optional<std::string>& ref_var() const { return ref_var_; }
    void set_ref_var(std::optional<std::string> var) { ref_var_ = std::move(var); }

    // Distinct variable names in order of first appearance (id order,
    // container/relation interleaved).
    std::vector<std::string> variables() const;
    bool has_variable(const std::string& name) const;

    // Replaces the named unknown with a known value everywhere it occurs.
    void bind_variable(const std::string& name, const Rational& value);

    int max_id() const { return next_id_ - 1; }
    bool empty() const { return containers_.empty() && relations_.empty(); }

private:
    std::vector<Container> containers_;
    std::vector<Relation> relations_;
    std::optional<std::string> ref_var_;
    int next_id_ = 1;
};

// Equality of container structures after normalization: same arity
// (attribute/unit presence) and same normalized label/entity/attribute/unit.
bool structural_equal(const ContainerStructure& a, const ContainerStructure& b,
                      const Normalizer& norm = Normalizer::standard());

// Checks the kind-specific relation invariants; returns nullopt when the
// relation is well-formed, otherwise a description of the first failed rule.
std::optional<std::string> validate_relation(const WorldModel& model, const Relation& r,
                                             const Normalizer& norm = Normalizer::standard());

// Every problem with the model: relation violations plus a dangling ref_var.
std::vector<std::string> validate_model(const WorldModel& model,
                                        const Normalizer& norm = Normalizer::standard());

// Next unused variable name: x{k} with k = 1 + number of distinct variables
// in the model, bumped past any collision.
std::string fresh_var(const WorldModel& model);

}  // namespace mathworld
