#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "mathworld/convert.hpp"
#include "mathworld/corpus.hpp"
#include "mathworld/errors.hpp"
#include "mathworld/eval.hpp"
#include "mathworld/fol.hpp"
#include "mathworld/metrics.hpp"
#include "mathworld/qa.hpp"
#include "mathworld/reasoner.hpp"

namespace fs = std::filesystem;
using namespace mathworld;

namespace {

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError(path + ": cannot open");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError(path + ": cannot write");
    out << text;
}

// Scores rendered with at least one decimal: 1.0, 0.8333.
std::string format_score(const Rational& r) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", r.to_double());
    std::string s = buf;
    while (s.size() > 3 && s.back() == '0') s.pop_back();
    return s;
}

// A logical-form file for one problem: either a bare sequence of sentence
// groups separated by "---" lines, or the first record of a prediction file.
std::vector<LogicalForm> read_single_lf_file(const std::string& path, ParseMode mode,
                                             std::vector<std::string>* notes) {
    std::string text = read_text(path);
    std::istringstream lines(text);
    std::string line;
    std::vector<std::string> groups{""};
    bool saw_header = false;
    while (std::getline(lines, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (!line.empty() && line[0] == '#') {
            if (saw_header) break;  // only the first record
            saw_header = true;
            continue;
        }
        if (line == "---") {
            groups.push_back("");
        } else {
            groups.back() += line + "\n";
        }
    }
    std::vector<LogicalForm> forms;
    for (std::size_t i = 0; i < groups.size(); ++i) {
        LfParseResult r = parse_logical_form(groups[i], mode);
        if (notes) {
            for (const std::string& d : r.dropped) {
                notes->push_back("sentence " + std::to_string(i + 1) + ": " + d);
            }
        }
        forms.push_back(std::move(r.form));
    }
    return forms;
}

int run(int argc, char** argv) {
    CLI::App app{"MathWorld toolkit: story-problem world models, logical forms,"
                 " solving, similarity, FOL export and evaluation"};
    app.require_subcommand(1);

    // parse
    auto* parse_cmd = app.add_subcommand(
        "parse", "Convert a logical-form file to a world-model graph file");
    std::string parse_in, parse_out;
    bool parse_strict = false;
    parse_cmd->add_option("lf-file", parse_in, "logical forms, sentences separated by ---")
        ->required();
    parse_cmd->add_option("-o,--out", parse_out, "output graph file (default stdout)");
    parse_cmd->add_flag("--strict", parse_strict, "fail on any malformed predicate");

    // solve
    auto* solve_cmd = app.add_subcommand("solve", "Solve a graph file for its reference variable");
    std::string solve_in;
    solve_cmd->add_option("graph", solve_in, "world-model graph file")->required();

    // compare
    auto* compare_cmd =
        app.add_subcommand("compare", "Equivalence and smatch similarity of two graph files");
    std::string cmp_a, cmp_b;
    unsigned cmp_seed = 0;
    std::size_t cmp_limit = 8;
    compare_cmd->add_option("a", cmp_a)->required();
    compare_cmd->add_option("b", cmp_b)->required();
    compare_cmd->add_option("--seed", cmp_seed, "hill-climbing seed");
    compare_cmd->add_option("--smatch-exhaustive-limit", cmp_limit,
                            "max variables for exact mapping search");

    // to-fol
    auto* fol_cmd = app.add_subcommand("to-fol", "Export a graph file to first-order logic");
    std::string fol_in, fol_out, fol_axiom_choice = "none";
    fol_cmd->add_option("graph", fol_in)->required();
    fol_cmd->add_option("-o,--out", fol_out, "output file (default stdout)");
    fol_cmd->add_option("--axioms", fol_axiom_choice,
                        "append axiom families: none|all|measure|relations|reasoning");

    // gen-qa
    auto* qa_cmd = app.add_subcommand(
        "gen-qa", "Generate synthetic QA prompts for a corpus plus a JSONL sidecar");
    std::string qa_corpus, qa_outdir, qa_style = "sentence-by-sentence", qa_shots_from;
    int qa_k = 2, qa_shots = 0;
    unsigned qa_seed = 0;
    qa_cmd->add_option("--corpus", qa_corpus, "gold corpus (JSONL)")->required();
    qa_cmd->add_option("--out-dir", qa_outdir, "directory for prompts and sidecar")->required();
    qa_cmd->add_option("--style", qa_style, "all-at-once | sentence-by-sentence | original");
    qa_cmd->add_option("--k", qa_k, "QA pairs per problem");
    qa_cmd->add_option("--seed", qa_seed, "sampling seed");
    qa_cmd->add_option("--shots", qa_shots, "number of in-context examples");
    qa_cmd->add_option("--shots-from", qa_shots_from,
                       "corpus to draw shots from (default: the corpus itself)");

    // eval
    auto* eval_cmd =
        app.add_subcommand("eval", "Score predicted logical forms against a gold corpus");
    std::string eval_gold, eval_pred, eval_format = "text", eval_out;
    unsigned eval_seed = 0;
    std::size_t eval_limit = 8;
    int eval_jobs = 1;
    eval_cmd->add_option("--gold", eval_gold, "gold corpus (JSONL)")->required();
    eval_cmd->add_option("--pred", eval_pred, "prediction file (logical-form wire format)")
        ->required();
    eval_cmd->add_option("--seed", eval_seed, "smatch hill-climbing seed");
    eval_cmd->add_option("--smatch-exhaustive-limit", eval_limit,
                         "max variables for exact mapping search");
    eval_cmd->add_option("--jobs", eval_jobs, "worker count (1 = serial reference)");
    eval_cmd->add_option("--format", eval_format, "text | json | both");
    eval_cmd->add_option("-o,--out", eval_out, "write the JSON report here");

    // roundtrip-check
    auto* rt_cmd = app.add_subcommand(
        "roundtrip-check", "Linearize and rebuild every gold graph, report equivalence");
    std::string rt_corpus;
    rt_cmd->add_option("corpus", rt_corpus, "gold corpus (JSONL)")->required();

    CLI11_PARSE(app, argc, argv);

    if (parse_cmd->parsed()) {
        std::vector<std::string> notes;
        auto forms = read_single_lf_file(parse_in, parse_strict ? ParseMode::strict
                                                                : ParseMode::recover,
                                         &notes);
        GraphBuildResult built = lfs_to_graph(forms);
        for (const std::string& n : notes) std::cerr << "note: " << n << "\n";
        for (const std::string& d : built.diagnostics) std::cerr << "note: " << d << "\n";
        write_output(parse_out, graph_to_json_text({built.model, built.states}));
        return 0;
    }

    if (solve_cmd->parsed()) {
        GraphDocument doc = load_graph(solve_in);
        Answer a = solve_reference(doc.model);
        if (a.status == Answer::Status::missing_ref) {
            std::cerr << "world model has no reference variable\n";
            return 1;
        }
        if (a.status == Answer::Status::unsolvable) {
            std::cerr << "world model is incomplete: cannot solve for " << *doc.model.ref_var()
                      << "\n";
            return 1;
        }
        std::cout << a.value.to_string() << "\n";
        return 0;
    }

    if (compare_cmd->parsed()) {
        GraphDocument a = load_graph(cmp_a);
        GraphDocument b = load_graph(cmp_b);
        SmatchOptions opt;
        opt.seed = cmp_seed;
        opt.exhaustive_limit = cmp_limit;
        SmatchScore weak = smatch(a.model, b.model, SmatchMode::weak, opt);
        SmatchScore strong = smatch(a.model, b.model, SmatchMode::strong, opt);
        std::string level = strong_equivalent(a.model, b.model)  ? "strong-equivalent"
                            : weak_equivalent(a.model, b.model) ? "weak-equivalent"
                                                                : "not-equivalent";
        std::cout << level << ", f1=" << format_score(weak.f1) << "/"
                  << format_score(strong.f1) << "\n";
        return 0;
    }

    if (fol_cmd->parsed()) {
        GraphDocument doc = load_graph(fol_in);
        FolDocument fol = to_fol(doc.model);
        if (fol_axiom_choice != "none") {
            AxiomFamily family;
            if (fol_axiom_choice == "all") family = AxiomFamily::all;
            else if (fol_axiom_choice == "measure") family = AxiomFamily::measure;
            else if (fol_axiom_choice == "relations") family = AxiomFamily::relations;
            else if (fol_axiom_choice == "reasoning") family = AxiomFamily::reasoning;
            else throw ValidationError("unknown axiom family '" + fol_axiom_choice + "'");
            fol.axioms = fol_axioms(family);
        }
        parse_fol_document(fol.text());  // round-trip syntactic check
        write_output(fol_out, fol.text());
        return 0;
    }

    if (qa_cmd->parsed()) {
        auto style = prompt_style_from_name(qa_style);
        if (!style) throw ValidationError("unknown prompt style '" + qa_style + "'");
        auto corpus = load_corpus(qa_corpus);
        std::vector<AnnotatedMSP> shot_pool =
            qa_shots_from.empty() ? corpus : load_corpus(qa_shots_from);
        fs::create_directories(qa_outdir);
        std::string sidecar;
        for (const AnnotatedMSP& msp : corpus) {
            std::vector<AnnotatedMSP> shots;
            for (const AnnotatedMSP& candidate : shot_pool) {
                if (static_cast<int>(shots.size()) >= qa_shots) break;
                if (candidate.id != msp.id) shots.push_back(candidate);
            }
            PromptBuild build = build_prompt_detailed(msp, *style, qa_k, qa_seed, shots);
            write_output(qa_outdir + "/" + msp.id + ".txt", build.text + "\n");
            nlohmann::json anchors = nlohmann::json::array();
            nlohmann::json questions = nlohmann::json::array();
            nlohmann::json answers = nlohmann::json::array();
            for (const SyntheticQA& qa : build.selected) {
                anchors.push_back(qa.anchor);
                questions.push_back(qa.question);
                answers.push_back(qa.answer.to_string());
            }
            nlohmann::json row = {{"id", msp.id},
                                  {"style", prompt_style_name(*style)},
                                  {"anchors", anchors},
                                  {"questions", questions},
                                  {"answers", answers}};
            if (msp.gold_answer) row["gold_answer"] = msp.gold_answer->to_string();
            sidecar += row.dump() + "\n";
        }
        write_output(qa_outdir + "/prompts.jsonl", sidecar);
        std::cout << "wrote " << corpus.size() << " prompts to " << qa_outdir << "\n";
        return 0;
    }

    if (eval_cmd->parsed()) {
        auto gold = load_corpus(eval_gold);
        Predictions preds = load_predictions(eval_pred);
        for (const std::string& w : preds.warnings) std::cerr << "note: " << w << "\n";
        EvalOptions opt;
        opt.seed = eval_seed;
        opt.smatch_exhaustive_limit = eval_limit;
        opt.jobs = eval_jobs;
        EvalReport report = evaluate(gold, preds, opt);
        if (eval_format == "text" || eval_format == "both") {
            std::cout << render_report_text(report);
        }
        if (eval_format == "json" || eval_format == "both") {
            std::cout << render_report_json(report);
        }
        if (!eval_out.empty()) write_output(eval_out, render_report_json(report));
        return 0;
    }

    if (rt_cmd->parsed()) {
        auto corpus = load_corpus(rt_corpus);
        int failures = 0;
        for (const AnnotatedMSP& msp : corpus) {
            if (!msp.gold_graph || msp.gold_states.empty()) {
                std::cout << msp.id << ": skipped (no gold graph states)\n";
                continue;
            }
            auto forms = graph_to_lfs(*msp.gold_graph, msp.gold_states);
            auto rebuilt = lfs_to_graph(forms);
            if (strong_equivalent(rebuilt.model, *msp.gold_graph)) {
                std::cout << msp.id << ": strong\n";
            } else if (weak_equivalent(rebuilt.model, *msp.gold_graph)) {
                std::cout << msp.id << ": weak\n";
            } else {
                std::cout << msp.id << ": FAIL\n";
                ++failures;
            }
        }
        return failures ? 1 : 0;
    }

    return 2;  // unreachable: a subcommand is required
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
}
