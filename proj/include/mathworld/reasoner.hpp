#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mathworld/model.hpp"

namespace mathworld {

// Signed sum equals rhs:  +t1 +/- t2 ... = rhs.
struct AdditiveEq {
    std::vector<std::pair<int, Quantity>> terms;  // sign is +1 or -1
    Quantity rhs;
};

// numerator / ratio = denominator.
struct ProductEq {
    Quantity numerator;
    Quantity ratio;
    Quantity denominator;
};

// factor_a * factor_b = product.
struct MultiplicativeEq {
    Quantity factor_a;
    Quantity factor_b;
    Quantity product;
};

struct Equation {
    int id = 0;  // creation order; used for deterministic tie-breaks
    std::variant<AdditiveEq, ProductEq, MultiplicativeEq> body;

    std::vector<std::string> unknowns() const;  // distinct, in slot order
    std::string to_string() const;
};

// One equation per Transfer/Rate/Comparison edge, one summation per
// container with incoming PartWhole edges:
//   transfer, recipient side:  source + q = target
//   transfer, sender side:     source - q = target
//   rate:                      source / q = target
//   comparison add:            source + q = target
//   comparison mul:            source * q = target
//   part-whole:                sum(parts) = whole
std::vector<Equation> induce_equations(const WorldModel& model);

struct SolveStats {
    long equations_visited = 0;
};

// Deterministic recursive solver. Gathers unvisited equations containing the
// target, sorts them by unknown count (ties by creation order), solves
// directly when the target is the only unknown, and otherwise recursively
// binds the other unknowns and substitutes. The visited set grows along each
// call chain, so every chain sees an equation at most once. Returns nullopt
// when no path determines the target; throws ArithmeticError on division by
// zero.
std::optional<Rational> recursive_solve(const std::string& target,
                                        const std::vector<Equation>& equations,
                                        std::vector<int> visited = {},
                                        SolveStats* stats = nullptr);

struct Answer {
    enum class Status { solved, missing_ref, unsolvable };
    Status status = Status::unsolvable;
    Rational value;

    bool solved() const { return status == Status::solved; }
};

// Induces the model's equations and solves for its reference variable.
Answer solve_reference(const WorldModel& model, SolveStats* stats = nullptr);

}  // namespace mathworld
