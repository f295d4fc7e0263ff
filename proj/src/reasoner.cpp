#include "mathworld/reasoner.hpp"

#include <algorithm>
#include <set>

#include "mathworld/errors.hpp"

namespace mathworld {

namespace {

void note_unknown(std::vector<std::string>& out, const Quantity& q) {
    if (q.is_var() && std::find(out.begin(), out.end(), q.var_name()) == out.end()) {
        out.push_back(q.var_name());
    }
}

std::optional<Rational> value_of(const Quantity& q, const std::map<std::string, Rational>& env) {
    if (q.is_known()) return q.value();
    auto it = env.find(q.var_name());
    if (it != env.end()) return it->second;
    return std::nullopt;
}

bool is_target(const Quantity& q, const std::string& target,
               const std::map<std::string, Rational>& env) {
    return q.is_var() && q.var_name() == target && !env.count(q.var_name());
}

// Solves eq for target, assuming all other variables are bound in env.
// Returns nullopt when the equation cannot determine the target (zero
// coefficient, or the target occupies several slots of a product form).
std::optional<Rational> solve_single(const Equation& eq, const std::string& target,
                                     const std::map<std::string, Rational>& env) {
    if (const auto* add = std::get_if<AdditiveEq>(&eq.body)) {
        // sum(sign * term) - rhs = 0, collected as coeff * target + constant.
        Rational coeff(0), constant(0);
        for (const auto& [sign, term] : add->terms) {
            if (is_target(term, target, env)) {
                coeff = coeff + Rational(sign);
            } else {
                auto v = value_of(term, env);
                if (!v) return std::nullopt;
                constant = constant + Rational(sign) * *v;
            }
        }
        if (is_target(add->rhs, target, env)) {
            coeff = coeff - Rational(1);
        } else {
            auto v = value_of(add->rhs, env);
            if (!v) return std::nullopt;
            constant = constant - *v;
        }
        if (coeff.is_zero()) return std::nullopt;
        return -constant / coeff;
    }
    if (const auto* prod = std::get_if<ProductEq>(&eq.body)) {
        // numerator / ratio = denominator
        bool tn = is_target(prod->numerator, target, env);
        bool tr = is_target(prod->ratio, target, env);
        bool td = is_target(prod->denominator, target, env);
        if (tn + tr + td != 1) return std::nullopt;
        if (tn) {
            auto r = value_of(prod->ratio, env), d = value_of(prod->denominator, env);
            if (!r || !d) return std::nullopt;
            if (r->is_zero()) throw ArithmeticError("division by zero in " + eq.to_string());
            return *r * *d;
        }
        if (tr) {
            auto n = value_of(prod->numerator, env), d = value_of(prod->denominator, env);
            if (!n || !d) return std::nullopt;
            if (d->is_zero()) throw ArithmeticError("division by zero in " + eq.to_string());
            return *n / *d;
        }
        auto n = value_of(prod->numerator, env), r = value_of(prod->ratio, env);
        if (!n || !r) return std::nullopt;
        if (r->is_zero()) throw ArithmeticError("division by zero in " + eq.to_string());
        return *n / *r;
    }
    const auto& mul = std::get<MultiplicativeEq>(eq.body);
    bool ta = is_target(mul.factor_a, target, env);
    bool tb = is_target(mul.factor_b, target, env);
    bool tp = is_target(mul.product, target, env);
    if (ta + tb + tp != 1) return std::nullopt;
    if (tp) {
        auto a = value_of(mul.factor_a, env), b = value_of(mul.factor_b, env);
        if (!a || !b) return std::nullopt;
        return *a * *b;
    }
    auto p = value_of(mul.product, env);
    auto other = ta ? value_of(mul.factor_b, env) : value_of(mul.factor_a, env);
    if (!p || !other) return std::nullopt;
    if (other->is_zero()) throw ArithmeticError("division by zero in " + eq.to_string());
    return *p / *other;
}

}  // namespace

std::vector<std::string> Equation::unknowns() const {
    std::vector<std::string> out;
    if (const auto* add = std::get_if<AdditiveEq>(&body)) {
        for (const auto& [sign, term] : add->terms) note_unknown(out, term);
        note_unknown(out, add->rhs);
    } else if (const auto* prod = std::get_if<ProductEq>(&body)) {
        note_unknown(out, prod->numerator);
        note_unknown(out, prod->ratio);
        note_unknown(out, prod->denominator);
    } else {
        const auto& mul = std::get<MultiplicativeEq>(body);
        note_unknown(out, mul.factor_a);
        note_unknown(out, mul.factor_b);
        note_unknown(out, mul.product);
    }
    return out;
}

std::string Equation::to_string() const {
    if (const auto* add = std::get_if<AdditiveEq>(&body)) {
        std::string s;
        for (std::size_t i = 0; i < add->terms.size(); ++i) {
            const auto& [sign, term] = add->terms[i];
            if (i == 0) {
                s += (sign < 0 ? "-" : "") + term.to_string();
            } else {
                s += (sign < 0 ? " - " : " + ") + term.to_string();
            }
        }
        return s + " = " + add->rhs.to_string();
    }
    if (const auto* prod = std::get_if<ProductEq>(&body)) {
        return prod->numerator.to_string() + " / " + prod->ratio.to_string() + " = " +
               prod->denominator.to_string();
    }
    const auto& mul = std::get<MultiplicativeEq>(body);
    return mul.factor_a.to_string() + " * " + mul.factor_b.to_string() + " = " +
           mul.product.to_string();
}

std::vector<Equation> induce_equations(const WorldModel& model) {
    std::vector<Equation> eqs;
    const Normalizer& norm = Normalizer::standard();
    std::set<int> summed_wholes;
    int next = 1;

    for (const Relation& r : model.relations()) {
        const Container* src = model.container(r.source);
        const Container* tgt = model.container(r.target);
        if (!src || !tgt) continue;  // validated elsewhere

        switch (r.type()) {
            case RelationType::transfer: {
                const auto& t = std::get<TransferKind>(r.kind);
                std::string label = norm.label(src->structure.label);
                int sign;
                if (t.recipient && norm.label(*t.recipient) == label) {
                    sign = +1;
                } else if (t.sender && norm.label(*t.sender) == label) {
                    sign = -1;
                } else {
                    sign = t.recipient ? +1 : -1;
                }
                AdditiveEq add;
                add.terms = {{+1, src->quantity}, {sign, *r.quantity}};
                add.rhs = tgt->quantity;
                eqs.push_back({next++, std::move(add)});
                break;
            }
            case RelationType::rate: {
                eqs.push_back({next++, ProductEq{src->quantity, *r.quantity, tgt->quantity}});
                break;
            }
            case RelationType::comparison: {
                const auto& c = std::get<ComparisonKind>(r.kind);
                if (c.op == ComparisonOp::add) {
                    AdditiveEq add;
                    add.terms = {{+1, src->quantity}, {+1, *r.quantity}};
                    add.rhs = tgt->quantity;
                    eqs.push_back({next++, std::move(add)});
                } else {
                    eqs.push_back(
                        {next++, MultiplicativeEq{src->quantity, *r.quantity, tgt->quantity}});
                }
                break;
            }
            case RelationType::part_whole: {
                if (summed_wholes.count(r.target)) break;
                summed_wholes.insert(r.target);
                AdditiveEq sum;
                for (const Relation& e : model.relations()) {
                    if (e.type() == RelationType::part_whole && e.target == r.target) {
                        if (const Container* part = model.container(e.source)) {
                            sum.terms.push_back({+1, part->quantity});
                        }
                    }
                }
                sum.rhs = tgt->quantity;
                eqs.push_back({next++, std::move(sum)});
                break;
            }
        }
    }
    return eqs;
}

std::optional<Rational> recursive_solve(const std::string& target,
                                        const std::vector<Equation>& equations,
                                        std::vector<int> visited, SolveStats* stats) {
    // Unvisited equations containing the target, by increasing unknown count
    // (creation order breaks ties).
    std::vector<std::pair<std::size_t, const Equation*>> candidates;
    for (const Equation& eq : equations) {
        if (std::find(visited.begin(), visited.end(), eq.id) != visited.end()) continue;
        auto unknowns = eq.unknowns();
        if (std::find(unknowns.begin(), unknowns.end(), target) == unknowns.end()) continue;
        candidates.emplace_back(unknowns.size(), &eq);
    }
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });

    for (const auto& [unknown_count, eq] : candidates) {
        if (stats) ++stats->equations_visited;
        std::map<std::string, Rational> env;
        if (unknown_count == 1) {
            if (auto v = solve_single(*eq, target, env)) return v;
            continue;
        }
        std::vector<int> deeper = visited;
        deeper.push_back(eq->id);
        for (const std::string& other : eq->unknowns()) {
            if (other == target) continue;
            auto sub = recursive_solve(other, equations, deeper, stats);
            if (!sub) continue;
            env[other] = *sub;
            // Solvable once the target is the only unbound variable left.
            std::size_t unbound = 0;
            for (const std::string& u : eq->unknowns()) {
                if (u != target && !env.count(u)) ++unbound;
            }
            if (unbound == 0) {
                if (auto v = solve_single(*eq, target, env)) return v;
                break;
            }
        }
    }
    return std::nullopt;
}

Answer solve_reference(const WorldModel& model, SolveStats* stats) {
    Answer out;
    if (!model.ref_var()) {
        out.status = Answer::Status::missing_ref;
        return out;
    }
    auto value = recursive_solve(*model.ref_var(), induce_equations(model), {}, stats);
    if (!value) {
        out.status = Answer::Status::unsolvable;
        return out;
    }
    out.status = Answer::Status::solved;
    out.value = *value;
    return out;
}

}  // namespace mathworld
