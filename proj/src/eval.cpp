#include "mathworld/eval.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>

#include <json.hpp>

#include "mathworld/errors.hpp"
#include "mathworld/reasoner.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mathworld {

namespace {

MspEval score_one(const AnnotatedMSP& gold, const std::vector<LogicalForm>* forms,
                  const EvalOptions& options) {
    MspEval row;
    row.id = gold.id;
    row.dataset = gold.source_dataset;
    if (!forms) return row;  // unpredicted: incomplete, incorrect, zero smatch

    row.has_prediction = true;
    GraphBuildResult built = lfs_to_graph(*forms);
    Answer answer = solve_reference(built.model);
    row.complete = answer.solved();
    if (row.complete) {
        row.predicted_answer = answer.value;
        row.correct = gold.gold_answer && answer.value == *gold.gold_answer;
    }

    SmatchOptions smatch_options;
    smatch_options.seed = options.seed;
    smatch_options.exhaustive_limit = options.smatch_exhaustive_limit;
    row.weak_f1 = smatch(built.model, *gold.gold_graph, SmatchMode::weak, smatch_options).f1;
    row.strong_f1 = smatch(built.model, *gold.gold_graph, SmatchMode::strong, smatch_options).f1;
    return row;
}

EvalGroup summarize(const std::string& name, const std::vector<const MspEval*>& rows) {
    EvalGroup g;
    g.name = name;
    g.count = static_cast<long>(rows.size());
    if (rows.empty()) return g;
    Rational weak_sum(0), strong_sum(0);
    for (const MspEval* r : rows) {
        if (r->correct) ++g.correct;
        if (r->complete) ++g.complete;
        weak_sum = weak_sum + r->weak_f1;
        strong_sum = strong_sum + r->strong_f1;
    }
    g.answer_accuracy = Rational(g.correct, g.count);
    g.complete_rate = Rational(g.complete, g.count);
    g.avg_weak = weak_sum / Rational(g.count);
    g.avg_strong = strong_sum / Rational(g.count);
    return g;
}

std::string fixed4(const Rational& r) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", r.to_double());
    return buf;
}

}  // namespace

EvalReport evaluate(const std::vector<AnnotatedMSP>& gold, const Predictions& predictions,
                    const EvalOptions& options) {
    for (const auto& [id, forms] : predictions.records) {
        bool known = false;
        for (const AnnotatedMSP& msp : gold) known = known || msp.id == id;
        if (!known) throw ValidationError("prediction id '" + id + "' is not in the corpus");
    }
    for (const AnnotatedMSP& msp : gold) {
        if (!msp.gold_graph) {
            throw ValidationError("record '" + msp.id + "' has no gold graph to score against");
        }
        if (!msp.gold_answer) {
            throw ValidationError("record '" + msp.id + "' has no gold answer");
        }
    }

    EvalReport report;
    report.seed = options.seed;
    report.rows.resize(gold.size());

    const int n = static_cast<int>(gold.size());
    if (options.jobs <= 1) {
        // Serial reference path, kept as the comparison baseline for the
        // parallel kernel.
        for (int i = 0; i < n; ++i) {
            report.rows[i] = score_one(gold[i], predictions.find(gold[i].id), options);
        }
    } else {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(options.jobs)
#endif
        for (int i = 0; i < n; ++i) {
            report.rows[i] = score_one(gold[i], predictions.find(gold[i].id), options);
        }
    }

    std::map<std::string, std::vector<const MspEval*>> by_dataset;
    std::vector<const MspEval*> all;
    for (const MspEval& row : report.rows) {
        by_dataset[row.dataset].push_back(&row);
        all.push_back(&row);
    }
    for (const auto& [name, rows] : by_dataset) {
        report.datasets.push_back(summarize(name, rows));
    }
    report.overall = summarize("overall", all);
    return report;
}

std::string render_report_text(const EvalReport& report) {
    std::ostringstream out;
    out << "id                        dataset       pred complete correct   weak strong\n";
    for (const MspEval& r : report.rows) {
        char line[160];
        std::snprintf(line, sizeof line, "%-25s %-13s %4s %8s %7s %6s %6s\n", r.id.c_str(),
                      r.dataset.c_str(), r.has_prediction ? "yes" : "no",
                      r.complete ? "yes" : "no", r.correct ? "yes" : "no",
                      fixed4(r.weak_f1).c_str(), fixed4(r.strong_f1).c_str());
        out << line;
    }
    out << "\n";
    auto group = [&](const EvalGroup& g) {
        out << "[" << g.name << "]\n";
        out << "  answer accuracy   " << g.correct << "/" << g.count << " ("
            << fixed4(g.answer_accuracy) << ")\n";
        out << "  complete rate     " << g.complete << "/" << g.count << " ("
            << fixed4(g.complete_rate) << ")\n";
        out << "  avg weak smatch   " << fixed4(g.avg_weak) << "\n";
        out << "  avg strong smatch " << fixed4(g.avg_strong) << "\n";
    };
    for (const EvalGroup& g : report.datasets) group(g);
    group(report.overall);
    return out.str();
}

namespace {

nlohmann::json group_json(const EvalGroup& g) {
    auto metric = [](const Rational& r) {
        return nlohmann::json{{"exact", r.to_string()}, {"value", fixed4(r)}};
    };
    return {{"name", g.name},
            {"count", g.count},
            {"answer_accuracy", metric(g.answer_accuracy)},
            {"complete_rate", metric(g.complete_rate)},
            {"avg_weak_smatch", metric(g.avg_weak)},
            {"avg_strong_smatch", metric(g.avg_strong)}};
}

}  // namespace

std::string render_report_json(const EvalReport& report) {
    nlohmann::json rows = nlohmann::json::array();
    for (const MspEval& r : report.rows) {
        nlohmann::json row = {{"id", r.id},
                              {"dataset", r.dataset},
                              {"predicted", r.has_prediction},
                              {"complete", r.complete},
                              {"correct", r.correct},
                              {"weak_smatch", {{"exact", r.weak_f1.to_string()},
                                               {"value", fixed4(r.weak_f1)}}},
                              {"strong_smatch", {{"exact", r.strong_f1.to_string()},
                                                 {"value", fixed4(r.strong_f1)}}}};
        if (r.predicted_answer) row["answer"] = r.predicted_answer->to_string();
        rows.push_back(row);
    }
    nlohmann::json datasets = nlohmann::json::array();
    for (const EvalGroup& g : report.datasets) datasets.push_back(group_json(g));
    nlohmann::json j = {{"format_version", 1},
                        {"seed", report.seed},
                        {"rows", rows},
                        {"datasets", datasets},
                        {"overall", group_json(report.overall)}};
    return j.dump(2) + "\n";
}

}  // namespace mathworld
