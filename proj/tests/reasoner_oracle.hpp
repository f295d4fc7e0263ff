#pragma once

// Test-only reasoner oracles: an independent propagation solver and a
// generator of randomly shaped systems solvable by single-unknown chains.
// Shared between the unit tests and the acceptance suite.

#include <map>
#include <optional>
#include <random>

#include "mathworld/reasoner.hpp"

namespace mwtest {

using namespace mathworld;

// Independent oracle: repeatedly scan for an equation with exactly one
// unbound unknown, solve it directly, and bind; stop at a fixpoint. This is
// plain value propagation, no recursion and no equation ordering.
class PropagationOracle {
public:
    explicit PropagationOracle(const std::vector<Equation>& eqs) : eqs_(eqs) {}

    std::optional<Rational> solve(const std::string& target) {
        bool progress = true;
        while (progress) {
            progress = false;
            for (const Equation& eq : eqs_) {
                std::vector<std::string> unbound;
                for (const auto& v : eq.unknowns()) {
                    if (!bound_.count(v)) unbound.push_back(v);
                }
                if (unbound.size() != 1) continue;
                if (auto value = direct(eq, unbound[0])) {
                    bound_[unbound[0]] = *value;
                    progress = true;
                }
            }
        }
        auto it = bound_.find(target);
        if (it == bound_.end()) return std::nullopt;
        return it->second;
    }

private:
    Rational value(const Quantity& q) const {
        return q.is_known() ? q.value() : bound_.at(q.var_name());
    }
    bool is_unbound(const Quantity& q, const std::string& v) const {
        return q.is_var() && q.var_name() == v;
    }

    std::optional<Rational> direct(const Equation& eq, const std::string& v) const {
        if (const auto* add = std::get_if<AdditiveEq>(&eq.body)) {
            // coeff * v + sum = rhs-side, collected with signs.
            Rational sum(0), coeff(0);
            for (const auto& [sign, term] : add->terms) {
                if (is_unbound(term, v)) {
                    coeff = coeff + Rational(sign);
                } else {
                    sum = sum + Rational(sign) * value(term);
                }
            }
            Rational rhs(0);
            if (is_unbound(add->rhs, v)) {
                coeff = coeff - Rational(1);
            } else {
                rhs = value(add->rhs);
            }
            if (coeff.is_zero()) return std::nullopt;
            return (rhs - sum) / coeff;
        }
        if (const auto* prod = std::get_if<ProductEq>(&eq.body)) {
            int slots = is_unbound(prod->numerator, v) + is_unbound(prod->ratio, v) +
                        is_unbound(prod->denominator, v);
            if (slots != 1) return std::nullopt;  // degenerate, not directly solvable
            if (is_unbound(prod->numerator, v)) {
                return value(prod->ratio) * value(prod->denominator);
            }
            if (is_unbound(prod->ratio, v)) {
                if (value(prod->denominator).is_zero()) return std::nullopt;
                return value(prod->numerator) / value(prod->denominator);
            }
            if (value(prod->ratio).is_zero()) return std::nullopt;
            return value(prod->numerator) / value(prod->ratio);
        }
        const auto& mul = std::get<MultiplicativeEq>(eq.body);
        int slots = is_unbound(mul.factor_a, v) + is_unbound(mul.factor_b, v) +
                    is_unbound(mul.product, v);
        if (slots != 1) return std::nullopt;
        if (is_unbound(mul.product, v)) return value(mul.factor_a) * value(mul.factor_b);
        const Quantity& other = is_unbound(mul.factor_a, v) ? mul.factor_b : mul.factor_a;
        if (value(other).is_zero()) return std::nullopt;
        return value(mul.product) / value(other);
    }

    const std::vector<Equation>& eqs_;
    std::map<std::string, Rational> bound_;
};

struct GeneratedSystem {
    std::vector<Equation> equations;
    std::map<std::string, Rational> solution;
    std::string target;
};

// Random systems solvable by a chain of single-unknown solves: equation i
// introduces unknown x_i from constants and earlier unknowns. A couple of
// redundant consistent equations are mixed in, then the order is shuffled.
GeneratedSystem random_system(std::mt19937& rng) {
    GeneratedSystem sys;
    int unknown_count = 1 + static_cast<int>(rng() % 6);

    auto constant = [&]() { return Rational(static_cast<int>(rng() % 19 + 1)); };
    // Operand whose value is known at build time: an earlier unknown or a
    // fresh constant. Divisor slots must not pick a zero-valued unknown.
    auto operand = [&](int introduced, bool nonzero) -> std::pair<Quantity, Rational> {
        if (introduced > 0 && rng() % 5 < 2) {
            for (int tries = 0; tries < 4; ++tries) {
                int pick = static_cast<int>(rng() % introduced) + 1;
                std::string name = "x" + std::to_string(pick);
                Rational v = sys.solution.at(name);
                if (!nonzero || !v.is_zero()) return {Quantity::var(name), v};
            }
        }
        Rational c = constant();
        return {Quantity::known(c), c};
    };

    int next_id = 1;
    for (int i = 1; i <= unknown_count; ++i) {
        std::string name = "x" + std::to_string(i);
        Quantity unknown = Quantity::var(name);
        switch (rng() % 4) {
            case 0: {  // additive, 2-4 terms, unknown on either side
                int terms = 2 + static_cast<int>(rng() % 3);
                bool unknown_on_rhs = rng() % 2 == 0;
                AdditiveEq eq;
                Rational sum(0);
                int slot = unknown_on_rhs ? -1 : static_cast<int>(rng() % terms);
                int unknown_sign = 0;
                for (int t = 0; t < terms; ++t) {
                    int sign = (t == 0 || rng() % 2 == 0) ? +1 : -1;
                    if (t == slot) {
                        eq.terms.push_back({sign, unknown});
                        unknown_sign = sign;
                    } else {
                        auto [q, v] = operand(i - 1, false);
                        eq.terms.push_back({sign, q});
                        sum = sum + Rational(sign) * v;
                    }
                }
                if (unknown_on_rhs) {
                    eq.rhs = unknown;
                    sys.solution[name] = sum;
                } else {
                    Rational rhs = constant();
                    eq.rhs = Quantity::known(rhs);
                    sys.solution[name] =
                        unknown_sign > 0 ? rhs - sum : sum - rhs;
                }
                sys.equations.push_back({next_id++, std::move(eq)});
                break;
            }
            case 1: {  // product: numerator / ratio = denominator
                int slot = static_cast<int>(rng() % 3);
                auto [qa, va] = operand(i - 1, true);
                auto [qb, vb] = operand(i - 1, true);
                ProductEq eq;
                if (slot == 0) {
                    eq = {unknown, qa, qb};
                    sys.solution[name] = va * vb;
                } else if (slot == 1) {
                    eq = {qa, unknown, qb};
                    sys.solution[name] = va / vb;
                } else {
                    eq = {qa, qb, unknown};
                    sys.solution[name] = va / vb;
                }
                sys.equations.push_back({next_id++, eq});
                break;
            }
            case 2: {  // multiplicative: a * b = p
                int slot = static_cast<int>(rng() % 3);
                auto [qa, va] = operand(i - 1, true);
                auto [qb, vb] = operand(i - 1, true);
                MultiplicativeEq eq;
                if (slot == 2) {
                    eq = {qa, qb, unknown};
                    sys.solution[name] = va * vb;
                } else if (slot == 0) {
                    eq = {unknown, qa, qb};
                    sys.solution[name] = vb / va;
                } else {
                    eq = {qa, unknown, qb};
                    sys.solution[name] = vb / va;
                }
                sys.equations.push_back({next_id++, eq});
                break;
            }
            default: {  // part-whole style sum, unknown among the parts
                int parts = 2 + static_cast<int>(rng() % 3);
                AdditiveEq eq;
                Rational sum(0);
                int slot = static_cast<int>(rng() % parts);
                Rational whole = constant() + Rational(40);
                for (int t = 0; t < parts; ++t) {
                    if (t == slot) {
                        eq.terms.push_back({+1, unknown});
                    } else {
                        auto [q, v] = operand(i - 1, false);
                        eq.terms.push_back({+1, q});
                        sum = sum + v;
                    }
                }
                eq.rhs = Quantity::known(whole);
                sys.solution[name] = whole - sum;
                sys.equations.push_back({next_id++, std::move(eq)});
                break;
            }
        }
    }

    // Redundant but consistent extras over already-solved unknowns.
    int extras = static_cast<int>(rng() % 3);
    for (int e = 0; e < extras && unknown_count >= 2; ++e) {
        int a = 1 + static_cast<int>(rng() % unknown_count);
        int b = 1 + static_cast<int>(rng() % unknown_count);
        Rational va = sys.solution.at("x" + std::to_string(a));
        Rational vb = sys.solution.at("x" + std::to_string(b));
        AdditiveEq eq;
        eq.terms = {{+1, Quantity::var("x" + std::to_string(a))},
                    {-1, Quantity::var("x" + std::to_string(b))}};
        Rational diff = va - vb;
        if (diff.is_zero()) continue;
        if (diff.is_positive()) {
            eq.rhs = Quantity::known(diff);
        } else {
            eq.terms[0].first = -1;
            eq.terms[1].first = +1;
            eq.rhs = Quantity::known(-diff);
        }
        sys.equations.push_back({next_id++, std::move(eq)});
    }

    std::shuffle(sys.equations.begin(), sys.equations.end(), rng);
    for (std::size_t i = 0; i < sys.equations.size(); ++i) {
        sys.equations[i].id = static_cast<int>(i + 1);
    }
    sys.target = "x" + std::to_string(unknown_count);
    return sys;
}


}  // namespace mwtest
