// Benchmark comparing the serial reference paths against the OpenMP kernels:
// corpus evaluation (per-problem loop) and batched smatch scoring
// (hill-climbing restarts). Scores are checked for equality while timing.

#include <chrono>
#include <iostream>
#include <random>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "mathworld/convert.hpp"
#include "mathworld/corpus.hpp"
#include "mathworld/eval.hpp"
#include "mathworld/metrics.hpp"
#include "mathworld/reasoner.hpp"

using namespace mathworld;
using hclock = std::chrono::high_resolution_clock;

namespace {

double ms_since(hclock::time_point start) {
    return std::chrono::duration<double, std::milli>(hclock::now() - start).count();
}

// A transfer chain with a comparison, a rate and a part-whole block hanging
// off it; sized by `steps`.
AnnotatedMSP synthetic_problem(int index, int steps, std::mt19937& rng) {
    WorldModel g;
    std::vector<StateSnapshot> states;
    std::string owner = "owner" + std::to_string(index);

    auto snapshot = [&]() {
        StateSnapshot s;
        for (const Container& c : g.containers()) s.containers.push_back(c.id);
        for (const Relation& r : g.relations()) s.relations.push_back(r.id);
        states.push_back(s);
    };

    int current = g.add_container({owner, "marble", {}, {}},
                                  Quantity::known(Rational(50 + (int)(rng() % 50))));
    snapshot();
    for (int i = 0; i < steps; ++i) {
        int next = g.add_container({owner, "marble", {}, {}},
                                   Quantity::var(fresh_var(g)));
        bool gain = rng() % 2 == 0;
        g.add_relation(TransferKind{gain ? std::optional<std::string>(owner) : std::nullopt,
                                    gain ? std::nullopt : std::optional<std::string>(owner)},
                       Quantity::known(Rational(1 + (int)(rng() % 9))), current, next);
        current = next;
        snapshot();
    }
    int friend_count =
        g.add_container({"rival" + std::to_string(index), "marble", {}, {}},
                        Quantity::var(fresh_var(g)));
    g.add_relation(ComparisonKind{ComparisonOp::add},
                   Quantity::known(Rational(1 + (int)(rng() % 5))), current, friend_count);
    snapshot();

    AnnotatedMSP msp;
    msp.id = "bench" + std::to_string(index);
    msp.source_dataset = "bench";
    const Container* answer_holder = g.container(friend_count);
    g.set_ref_var(answer_holder->quantity.var_name());
    msp.logical_forms = graph_to_lfs(g, states);
    for (std::size_t i = 0; i < msp.logical_forms.size(); ++i) {
        msp.sentences.push_back("Sentence " + std::to_string(i + 1) + ".");
    }
    Answer a = solve_reference(g);
    msp.gold_answer = a.solved() ? std::optional<Rational>(a.value) : std::nullopt;
    msp.gold_states = states;
    msp.gold_graph = std::move(g);
    return msp;
}

}  // namespace

int main(int argc, char** argv) {
    int problems = argc > 1 ? std::atoi(argv[1]) : 60;
    int steps = argc > 2 ? std::atoi(argv[2]) : 8;
    int threads = 4;
#ifdef _OPENMP
    threads = omp_get_max_threads();
#endif

    std::mt19937 rng(42);
    std::vector<AnnotatedMSP> corpus;
    Predictions preds;
    for (int i = 0; i < problems; ++i) {
        corpus.push_back(synthetic_problem(i, steps, rng));
        preds.records.emplace_back(corpus.back().id, corpus.back().logical_forms);
    }
    std::cout << "corpus: " << problems << " problems, " << steps << " transfer steps each\n";
#ifdef _OPENMP
    std::cout << "openmp: up to " << threads << " thread(s)\n";
#else
    std::cout << "openmp: not enabled in this build\n";
#endif

    // Corpus evaluation: serial reference vs parallel kernel.
    EvalOptions serial;
    serial.jobs = 1;
    auto t0 = hclock::now();
    EvalReport ref = evaluate(corpus, preds, serial);
    double serial_ms = ms_since(t0);

    EvalOptions parallel;
    parallel.jobs = threads;
    t0 = hclock::now();
    EvalReport par = evaluate(corpus, preds, parallel);
    double parallel_ms = ms_since(t0);

    bool same = render_report_json(ref) == render_report_json(par);
    std::printf("evaluate      serial %8.1f ms   parallel(%d) %8.1f ms   speedup %.2fx   %s\n",
                serial_ms, threads, parallel_ms, serial_ms / parallel_ms,
                same ? "identical reports" : "REPORTS DIFFER");

    // Batched smatch: hill-climbing restarts, serial vs parallel option.
    std::vector<std::pair<TripleSet, TripleSet>> pairs;
    for (int i = 0; i + 1 < problems; i += 2) {
        pairs.emplace_back(to_triples(*corpus[i].gold_graph, SmatchMode::strong, "a"),
                           to_triples(*corpus[i + 1].gold_graph, SmatchMode::strong, "b"));
    }
    SmatchOptions climb;
    climb.search = SmatchOptions::Search::hill_climb;
    climb.restarts = 8;

    t0 = hclock::now();
    std::vector<Rational> serial_scores;
    for (const auto& [a, b] : pairs) serial_scores.push_back(smatch_triples(a, b, climb).f1);
    double smatch_serial_ms = ms_since(t0);

    climb.jobs = threads;
    t0 = hclock::now();
    std::vector<Rational> parallel_scores;
    for (const auto& [a, b] : pairs) parallel_scores.push_back(smatch_triples(a, b, climb).f1);
    double smatch_parallel_ms = ms_since(t0);

    bool smatch_same = serial_scores == parallel_scores;
    std::printf("smatch batch  serial %8.1f ms   parallel(%d) %8.1f ms   speedup %.2fx   %s\n",
                smatch_serial_ms, threads, smatch_parallel_ms,
                smatch_serial_ms / smatch_parallel_ms,
                smatch_same ? "identical scores" : "SCORES DIFFER");

    return same && smatch_same ? 0 : 1;
}
