#include "mathworld/metrics.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mathworld {

namespace {

std::string instance_token(const Relation& r) {
    switch (r.type()) {
        case RelationType::transfer: return "transfer";
        case RelationType::rate: return "rate";
        case RelationType::comparison:
            return std::get<ComparisonKind>(r.kind).op == ComparisonOp::add ? "comparison-add"
                                                                            : "comparison-mul";
        case RelationType::part_whole: return "part-whole";
    }
    return "?";
}

std::string quantity_token(const Quantity& q) {
    return q.is_known() ? q.value().to_string() : "unknown";
}

struct TripleBuilder {
    TripleSet set;
    const std::string& prefix;
    int counter = 0;

    std::string fresh(const std::string& cls) {
        std::string v = prefix + std::to_string(counter++);
        set.variables.push_back(v);
        set.classes.push_back(cls);
        return v;
    }

    void instance(const std::string& var, const std::string& token) {
        set.triples.push_back({"instance", var, token, false});
    }
    void link(const std::string& pred, const std::string& a, const std::string& b) {
        set.triples.push_back({pred, a, b, true});
    }
    void property(const std::string& owner, int index, const std::string& value) {
        std::string v = fresh("value");
        link("ARG" + std::to_string(index), owner, v);
        instance(v, value);
    }
};

}  // namespace

TripleSet to_triples(const WorldModel& g, SmatchMode mode, const std::string& var_prefix,
                     const Normalizer& norm) {
    TripleBuilder b{TripleSet{}, var_prefix};
    std::map<int, std::string> node_var;

    for (const Container& c : g.containers()) {
        std::string v = b.fresh("node");
        node_var[c.id] = v;
        b.instance(v, "container");
        if (mode == SmatchMode::strong) {
            b.property(v, 0, norm.property(c.structure.entity));
            b.property(v, 1, quantity_token(c.quantity));
            b.property(v, 2, norm.label(c.structure.label));
            if (c.structure.attribute) b.property(v, 3, norm.property(*c.structure.attribute));
            if (c.structure.unit) b.property(v, 4, norm.property(*c.structure.unit));
        }
    }
    for (const Relation& r : g.relations()) {
        std::string v = b.fresh("edge");
        b.instance(v, instance_token(r));
        b.link("source", v, node_var.at(r.source));
        b.link("destination", v, node_var.at(r.target));
        if (mode == SmatchMode::strong) {
            switch (r.type()) {
                case RelationType::transfer: {
                    const auto& t = std::get<TransferKind>(r.kind);
                    if (t.recipient) b.property(v, 0, norm.label(*t.recipient));
                    if (t.sender) b.property(v, 1, norm.label(*t.sender));
                    b.property(v, 2, quantity_token(*r.quantity));
                    break;
                }
                case RelationType::rate:
                case RelationType::comparison:
                    b.property(v, 0, quantity_token(*r.quantity));
                    break;
                case RelationType::part_whole: break;
            }
        }
    }
    return b.set;
}

namespace {

// Shared search state: variables are indexed, triples pre-resolved to
// variable indices for fast evaluation under a candidate mapping.
struct Matcher {
    struct ResolvedTriple {
        int subject;  // index into a.variables
        int object;   // index or -1 when constant
        std::string key;  // predicate + constant part
    };

    const TripleSet& a;
    const TripleSet& b;
    std::vector<ResolvedTriple> a_triples;
    std::set<std::pair<std::string, std::pair<int, int>>> b_lookup;  // key, subj idx, obj idx
    std::vector<std::vector<int>> candidates;  // per a-var: compatible b-vars

    Matcher(const TripleSet& a_in, const TripleSet& b_in) : a(a_in), b(b_in) {
        std::map<std::string, int> a_index, b_index;
        for (std::size_t i = 0; i < a.variables.size(); ++i) a_index[a.variables[i]] = i;
        for (std::size_t i = 0; i < b.variables.size(); ++i) b_index[b.variables[i]] = i;

        for (const Triple& t : a.triples) {
            ResolvedTriple rt;
            rt.subject = a_index.at(t.subject);
            rt.object = t.object_is_var ? a_index.at(t.object) : -1;
            rt.key = t.predicate + "|" + (t.object_is_var ? "" : t.object);
            a_triples.push_back(std::move(rt));
        }
        for (const Triple& t : b.triples) {
            b_lookup.insert({t.predicate + "|" + (t.object_is_var ? "" : t.object),
                             {b_index.at(t.subject),
                              t.object_is_var ? b_index.at(t.object) : -1}});
        }
        // Cross-class mappings can never contribute a match.
        candidates.resize(a.variables.size());
        for (std::size_t i = 0; i < a.variables.size(); ++i) {
            for (std::size_t j = 0; j < b.variables.size(); ++j) {
                if (a.classes[i] == b.classes[j]) {
                    candidates[i].push_back(static_cast<int>(j));
                }
            }
        }
    }

    // mapping: per a-var index, b-var index or -1.
    int matched(const std::vector<int>& mapping) const {
        int count = 0;
        for (const ResolvedTriple& t : a_triples) {
            int ms = mapping[t.subject];
            if (ms < 0) continue;
            int mo = -1;
            if (t.object >= 0) {
                mo = mapping[t.object];
                if (mo < 0) continue;
            }
            if (b_lookup.count({t.key, {ms, mo}})) ++count;
        }
        return count;
    }

    // Triples whose variables are all assigned by the first `depth` a-vars.
    int matched_prefix(const std::vector<int>& mapping, int depth, int* undecided) const {
        int count = 0;
        *undecided = 0;
        for (const ResolvedTriple& t : a_triples) {
            if (t.subject >= depth || (t.object >= 0 && t.object >= depth)) {
                ++*undecided;
                continue;
            }
            int ms = mapping[t.subject];
            if (ms < 0) continue;
            int mo = -1;
            if (t.object >= 0) {
                mo = mapping[t.object];
                if (mo < 0) continue;
            }
            if (b_lookup.count({t.key, {ms, mo}})) ++count;
        }
        return count;
    }
};

// Exact branch-and-bound over injective class-respecting mappings.
void search_exhaustive(const Matcher& m, std::vector<int>& mapping, std::vector<bool>& used,
                       int depth, int& best, std::vector<int>& best_mapping) {
    int undecided = 0;
    int matched = m.matched_prefix(mapping, depth, &undecided);
    if (matched + undecided <= best) return;  // cannot beat the incumbent
    if (depth == static_cast<int>(mapping.size())) {
        if (matched > best) {
            best = matched;
            best_mapping = mapping;
        }
        return;
    }
    for (int cand : m.candidates[depth]) {
        if (used[cand]) continue;
        mapping[depth] = cand;
        used[cand] = true;
        search_exhaustive(m, mapping, used, depth + 1, best, best_mapping);
        used[cand] = false;
    }
    mapping[depth] = -1;
    search_exhaustive(m, mapping, used, depth + 1, best, best_mapping);
}

// One hill-climbing run from a given start, to a local maximum under
// single-variable remaps and pairwise swaps.
int hill_climb(const Matcher& m, std::vector<int>& mapping) {
    const int n = static_cast<int>(mapping.size());
    std::vector<bool> used(m.b.variables.size(), false);
    for (int v : mapping) {
        if (v >= 0) used[v] = true;
    }
    int score = m.matched(mapping);
    bool improved = true;
    while (improved) {
        improved = false;
        for (int i = 0; i < n && !improved; ++i) {
            int old = mapping[i];
            for (int cand : m.candidates[i]) {
                if (cand != old && used[cand]) continue;
                mapping[i] = cand == old ? -1 : cand;  // also try unmapping
                int s = m.matched(mapping);
                if (s > score) {
                    score = s;
                    if (old >= 0) used[old] = false;
                    if (mapping[i] >= 0) used[mapping[i]] = true;
                    improved = true;
                    break;
                }
                mapping[i] = old;
            }
        }
        for (int i = 0; i < n && !improved; ++i) {
            for (int j = i + 1; j < n && !improved; ++j) {
                if (m.a.classes[i] != m.a.classes[j]) continue;
                std::swap(mapping[i], mapping[j]);
                int s = m.matched(mapping);
                if (s > score) {
                    score = s;
                    improved = true;
                } else {
                    std::swap(mapping[i], mapping[j]);
                }
            }
        }
    }
    return score;
}

std::vector<int> greedy_start(const Matcher& m) {
    std::vector<int> mapping(m.a.variables.size(), -1);
    std::vector<bool> used(m.b.variables.size(), false);
    for (std::size_t i = 0; i < mapping.size(); ++i) {
        int best_cand = -1, best_score = -1;
        for (int cand : m.candidates[i]) {
            if (used[cand]) continue;
            mapping[i] = cand;
            int s = m.matched(mapping);
            if (s > best_score) {
                best_score = s;
                best_cand = cand;
            }
        }
        mapping[i] = best_cand;
        if (best_cand >= 0) used[best_cand] = true;
    }
    return mapping;
}

std::vector<int> random_start(const Matcher& m, unsigned seed) {
    std::mt19937 rng(seed);
    std::vector<int> mapping(m.a.variables.size(), -1);
    std::vector<bool> used(m.b.variables.size(), false);
    for (std::size_t i = 0; i < mapping.size(); ++i) {
        std::vector<int> open;
        for (int cand : m.candidates[i]) {
            if (!used[cand]) open.push_back(cand);
        }
        if (open.empty()) continue;
        int pick = open[rng() % open.size()];
        mapping[i] = pick;
        used[pick] = true;
    }
    return mapping;
}

}  // namespace

SmatchScore smatch_triples(const TripleSet& a, const TripleSet& b, const SmatchOptions& options) {
    SmatchScore score;
    score.precision = Rational(0);
    score.recall = Rational(0);
    score.f1 = Rational(0);
    if (a.triples.empty() || b.triples.empty()) {
        return score;  // f1 = 0 when either side is empty (P + R = 0 handled below)
    }

    Matcher m(a, b);
    std::vector<int> best_mapping(a.variables.size(), -1);
    int best = 0;

    bool exhaustive;
    switch (options.search) {
        case SmatchOptions::Search::exhaustive: exhaustive = true; break;
        case SmatchOptions::Search::hill_climb: exhaustive = false; break;
        default:
            exhaustive =
                std::min(a.variables.size(), b.variables.size()) <= options.exhaustive_limit;
    }

    if (exhaustive) {
        std::vector<int> mapping(a.variables.size(), -1);
        std::vector<bool> used(b.variables.size(), false);
        search_exhaustive(m, mapping, used, 0, best, best_mapping);
    } else {
        int restarts = std::max(1, options.restarts);
        std::vector<std::vector<int>> results(restarts);
        std::vector<int> scores(restarts, 0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (options.jobs > 1) num_threads(options.jobs)
#endif
        for (int r = 0; r < restarts; ++r) {
            std::vector<int> mapping =
                r == 0 ? greedy_start(m) : random_start(m, options.seed + r);
            scores[r] = hill_climb(m, mapping);
            results[r] = std::move(mapping);
        }
        for (int r = 0; r < restarts; ++r) {
            if (scores[r] > best) {
                best = scores[r];
                best_mapping = results[r];
            }
        }
    }

    score.precision = Rational(best, static_cast<std::int64_t>(a.triples.size()));
    score.recall = Rational(best, static_cast<std::int64_t>(b.triples.size()));
    Rational denom = score.precision + score.recall;
    score.f1 = denom.is_zero() ? Rational(0)
                               : Rational(2) * score.precision * score.recall / denom;
    for (std::size_t i = 0; i < best_mapping.size(); ++i) {
        if (best_mapping[i] >= 0) {
            score.best_mapping.emplace_back(a.variables[i], b.variables[best_mapping[i]]);
        }
    }
    return score;
}

SmatchScore smatch(const WorldModel& g1, const WorldModel& g2, SmatchMode mode,
                   const SmatchOptions& options) {
    return smatch_triples(to_triples(g1, mode, "a"), to_triples(g2, mode, "b"), options);
}

namespace {

struct EdgePayload {
    RelationType type;
    // Strong-mode properties; empty in weak mode.
    std::string detail;

    bool operator<(const EdgePayload& o) const {
        return type != o.type ? type < o.type : detail < o.detail;
    }
    bool operator==(const EdgePayload& o) const {
        return type == o.type && detail == o.detail;
    }
};

std::string relation_detail(const Relation& r, const Normalizer& norm) {
    std::string d;
    if (r.quantity) d += "q=" + quantity_token(*r.quantity) + ";";
    if (const auto* t = std::get_if<TransferKind>(&r.kind)) {
        if (t->recipient) d += "r=" + norm.label(*t->recipient) + ";";
        if (t->sender) d += "s=" + norm.label(*t->sender) + ";";
    } else if (const auto* c = std::get_if<ComparisonKind>(&r.kind)) {
        d += c->op == ComparisonOp::add ? "op=add;" : "op=mul;";
    }
    return d;
}

struct IsoChecker {
    const WorldModel& g1;
    const WorldModel& g2;
    bool strong;
    const Normalizer& norm;

    std::vector<int> ids1, ids2;
    // Edge multiset per ordered (source, target) pair.
    std::map<std::pair<int, int>, std::vector<EdgePayload>> edges1, edges2;

    IsoChecker(const WorldModel& a, const WorldModel& b, bool strong_in, const Normalizer& n)
        : g1(a), g2(b), strong(strong_in), norm(n) {
        for (const Container& c : a.containers()) ids1.push_back(c.id);
        for (const Container& c : b.containers()) ids2.push_back(c.id);
        auto collect = [&](const WorldModel& g,
                           std::map<std::pair<int, int>, std::vector<EdgePayload>>& out) {
            for (const Relation& r : g.relations()) {
                EdgePayload p{r.type(), strong ? relation_detail(r, norm) : ""};
                out[{r.source, r.target}].push_back(p);
            }
            for (auto& [pair, v] : out) std::sort(v.begin(), v.end());
        };
        collect(a, edges1);
        collect(b, edges2);
    }

    bool node_compatible(int id1, int id2) const {
        if (!strong) return true;
        const Container& c1 = *g1.container(id1);
        const Container& c2 = *g2.container(id2);
        return structural_equal(c1.structure, c2.structure, norm) &&
               c1.quantity == c2.quantity;
    }

    bool run() {
        if (ids1.size() != ids2.size()) return false;
        if (g1.relations().size() != g2.relations().size()) return false;
        std::map<int, int> mapping;
        std::set<int> used;
        return extend(0, mapping, used);
    }

    bool extend(std::size_t depth, std::map<int, int>& mapping, std::set<int>& used) {
        if (depth == ids1.size()) return edges_match(mapping);
        int u = ids1[depth];
        for (int v : ids2) {
            if (used.count(v) || !node_compatible(u, v)) continue;
            mapping[u] = v;
            used.insert(v);
            if (partial_edges_ok(mapping) && extend(depth + 1, mapping, used)) return true;
            mapping.erase(u);
            used.erase(v);
        }
        return false;
    }

    // Prune: pairs whose both endpoints are mapped must agree already.
    bool partial_edges_ok(const std::map<int, int>& mapping) const {
        for (const auto& [pair, payloads] : edges1) {
            auto s = mapping.find(pair.first);
            auto t = mapping.find(pair.second);
            if (s == mapping.end() || t == mapping.end()) continue;
            auto it = edges2.find({s->second, t->second});
            if (it == edges2.end() || !(it->second == payloads)) return false;
        }
        return true;
    }

    bool edges_match(const std::map<int, int>& mapping) const {
        std::size_t covered = 0;
        for (const auto& [pair, payloads] : edges1) {
            auto it = edges2.find({mapping.at(pair.first), mapping.at(pair.second)});
            if (it == edges2.end() || !(it->second == payloads)) return false;
            covered += payloads.size();
        }
        return covered == g2.relations().size();
    }
};

}  // namespace

bool weak_equivalent(const WorldModel& g1, const WorldModel& g2, const Normalizer& norm) {
    return IsoChecker(g1, g2, false, norm).run();
}

bool strong_equivalent(const WorldModel& g1, const WorldModel& g2, const Normalizer& norm) {
    return IsoChecker(g1, g2, true, norm).run();
}

}  // namespace mathworld
