#pragma once

// Test-only smatch oracle shared between the unit tests and the acceptance
// suite.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "mathworld/metrics.hpp"

namespace mwtest {

using namespace mathworld;

// Test oracle: complete enumeration of scoring mappings, organized very
// differently from the implementation. Node and edge variables are mapped by
// plain product-of-injections enumeration. Value variables (strong mode) are
// then enumerated over their only possibly-scoring candidates: the partner
// bound to the same role of the mapped owner, the variables carrying the
// same token, or staying unmapped. A value mapping outside that set matches
// no triple, so dropping it cannot lower the maximum.
class EnumerationOracle {
public:
    EnumerationOracle(const TripleSet& a, const TripleSet& b) : a_(a), b_(b) {}

    Rational best_f1() {
        run();
        if (a_.triples.empty() || b_.triples.empty()) return Rational(0);
        Rational p(best_, static_cast<std::int64_t>(a_.triples.size()));
        Rational r(best_, static_cast<std::int64_t>(b_.triples.size()));
        Rational d = p + r;
        return d.is_zero() ? Rational(0) : Rational(2) * p * r / d;
    }

    int best_matched() {
        run();
        return best_;
    }

private:
    void run() {
        if (done_) return;
        done_ = true;
        split(a_, a_nodes_, a_edges_, a_values_);
        split(b_, b_nodes_, b_edges_, b_values_);
        for (const Triple& t : b_.triples) {
            lookup_.insert(
                {t.predicate, {t.subject, t.object_is_var ? "$" + t.object : t.object}});
        }
        std::map<std::string, std::string> mapping;
        enumerate_structural(0, mapping);
    }

    static void split(const TripleSet& t, std::vector<std::string>& nodes,
                      std::vector<std::string>& edges, std::vector<std::string>& values) {
        for (std::size_t i = 0; i < t.variables.size(); ++i) {
            if (t.classes[i] == "node") nodes.push_back(t.variables[i]);
            if (t.classes[i] == "edge") edges.push_back(t.variables[i]);
            if (t.classes[i] == "value") values.push_back(t.variables[i]);
        }
    }

    void enumerate_structural(std::size_t depth, std::map<std::string, std::string>& mapping) {
        const std::vector<std::string>& pool = depth < a_nodes_.size() ? b_nodes_ : b_edges_;
        std::size_t structural = a_nodes_.size() + a_edges_.size();
        if (depth == structural) {
            // Pre-compute candidate lists for this structural mapping.
            std::vector<std::vector<std::string>> candidates;
            for (const std::string& v : a_values_) {
                candidates.push_back(value_candidates(v, mapping));
            }
            enumerate_values(0, candidates, mapping);
            return;
        }
        const std::string& var =
            depth < a_nodes_.size() ? a_nodes_[depth] : a_edges_[depth - a_nodes_.size()];
        for (const std::string& cand : pool) {
            if (taken_.count(cand)) continue;
            mapping[var] = cand;
            taken_.insert(cand);
            enumerate_structural(depth + 1, mapping);
            taken_.erase(cand);
        }
        mapping.erase(var);
        enumerate_structural(depth + 1, mapping);  // leave unmapped
    }

    std::vector<std::string> value_candidates(const std::string& var,
                                              const std::map<std::string, std::string>& mapping) {
        std::vector<std::string> cands;
        auto add = [&](const std::string& v) {
            if (std::find(cands.begin(), cands.end(), v) == cands.end()) cands.push_back(v);
        };
        // Same instance token on the other side.
        std::string token;
        for (const Triple& t : a_.triples) {
            if (t.predicate == "instance" && t.subject == var && !t.object_is_var) {
                token = t.object;
            }
        }
        for (const Triple& t : b_.triples) {
            if (t.predicate == "instance" && !t.object_is_var && t.object == token) {
                for (const std::string& v : b_values_) {
                    if (v == t.subject) add(v);
                }
            }
        }
        // Partner holding the same role of the mapped owner.
        for (const Triple& t : a_.triples) {
            if (!t.object_is_var || t.object != var || t.predicate == "instance") continue;
            auto owner = mapping.find(t.subject);
            if (owner == mapping.end()) continue;
            for (const Triple& u : b_.triples) {
                if (u.predicate == t.predicate && u.subject == owner->second &&
                    u.object_is_var) {
                    add(u.object);
                }
            }
        }
        return cands;
    }

    void enumerate_values(std::size_t depth, const std::vector<std::vector<std::string>>& cands,
                          std::map<std::string, std::string>& mapping) {
        // Each value variable touches exactly two triples (its role and its
        // instance), so two per remaining variable is an upper bound on what
        // the rest of the enumeration can still add.
        int ceiling = matched(mapping) +
                      2 * static_cast<int>(a_values_.size() - depth);
        if (ceiling <= best_) return;
        if (depth == a_values_.size()) {
            best_ = std::max(best_, matched(mapping));
            return;
        }
        const std::string& var = a_values_[depth];
        for (const std::string& cand : cands[depth]) {
            if (taken_.count(cand)) continue;
            mapping[var] = cand;
            taken_.insert(cand);
            enumerate_values(depth + 1, cands, mapping);
            taken_.erase(cand);
        }
        mapping.erase(var);
        enumerate_values(depth + 1, cands, mapping);
    }

    int matched(const std::map<std::string, std::string>& mapping) const {
        int count = 0;
        for (const Triple& t : a_.triples) {
            auto s = mapping.find(t.subject);
            if (s == mapping.end()) continue;
            std::string obj = t.object;
            if (t.object_is_var) {
                auto o = mapping.find(t.object);
                if (o == mapping.end()) continue;
                obj = "$" + o->second;
            }
            if (lookup_.count({t.predicate, {s->second, obj}})) ++count;
        }
        return count;
    }

    const TripleSet& a_;
    const TripleSet& b_;
    std::vector<std::string> a_nodes_, a_edges_, a_values_;
    std::vector<std::string> b_nodes_, b_edges_, b_values_;
    std::set<std::pair<std::string, std::pair<std::string, std::string>>> lookup_;
    std::set<std::string> taken_;
    int best_ = 0;
    bool done_ = false;
};


}  // namespace mwtest
