#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mathworld/convert.hpp"
#include "mathworld/corpus.hpp"
#include "mathworld/metrics.hpp"
#include "mathworld/rational.hpp"

namespace mathworld {

struct EvalOptions {
    unsigned seed = 0;
    std::size_t smatch_exhaustive_limit = 8;
    // Worker count for the per-problem loop. 1 runs the serial reference
    // path; higher values use the OpenMP kernel. Results are identical.
    int jobs = 1;
};

struct MspEval {
    std::string id;
    std::string dataset;
    bool has_prediction = false;
    bool complete = false;  // the solver produced a value
    bool correct = false;   // exact rational match with the gold answer
    std::optional<Rational> predicted_answer;
    Rational weak_f1{0};
    Rational strong_f1{0};
};

struct EvalGroup {
    std::string name;
    long count = 0;
    long correct = 0;
    long complete = 0;
    Rational answer_accuracy{0};
    Rational complete_rate{0};
    Rational avg_weak{0};
    Rational avg_strong{0};
};

struct EvalReport {
    std::vector<MspEval> rows;       // gold corpus order
    std::vector<EvalGroup> datasets;  // sorted by name
    EvalGroup overall;
    unsigned seed = 0;
};

// Scores predictions against a gold corpus: per problem, the predicted
// logical forms build a graph, the reasoner attempts the reference variable
// (correct = exact rational equality with the gold answer), and weak/strong
// smatch compare against the gold graph. Missing predictions count as
// incomplete and incorrect with zero smatch; averages include every problem.
// Throws ValidationError when a prediction id is not in the corpus or a gold
// record lacks its graph or answer.
EvalReport evaluate(const std::vector<AnnotatedMSP>& gold, const Predictions& predictions,
                    const EvalOptions& options = {});

std::string render_report_text(const EvalReport& report);
std::string render_report_json(const EvalReport& report);

}  // namespace mathworld
