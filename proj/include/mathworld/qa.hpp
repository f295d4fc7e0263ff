#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mathworld/convert.hpp"
#include "mathworld/model.hpp"

namespace mathworld {

struct SyntheticQA {
    std::string question;  // bare question text, no "Q:" framing
    Rational answer;
    int anchor = 0;      // first sentence index whose state holds the element
    int element_id = 0;  // queried container or relation
};

struct QaResult {
    std::vector<SyntheticQA> qas;
    std::vector<std::string> diagnostics;  // skipped unresolved unknowns
};

// Template-filled question-answer pairs: two per container and one per
// relation, walking elements in id order. Unknown quantities are resolved
// through the reasoner when solve_unknowns is set and skipped (with a
// diagnostic) when they cannot be; without solve_unknowns they are skipped
// silently. Anchors need the per-sentence states; without them every anchor
// is 0.
QaResult generate_qas(const WorldModel& g, bool solve_unknowns,
                      const std::vector<StateSnapshot>* states = nullptr);

enum class PromptStyle { all_at_once, sentence_by_sentence, original };

std::optional<PromptStyle> prompt_style_from_name(std::string_view name);
std::string prompt_style_name(PromptStyle style);

struct PromptBuild {
    std::string text;
    std::vector<SyntheticQA> selected;  // the target problem's sampled QAs
};

// Assembles one prompt. Style all_at_once places the k sampled QA pairs
// after the full body; sentence_by_sentence repeats the growing sentence
// prefix up to each QA's anchor; original is body + question only. Shots are
// prepended in the same style with their gold answer filled in after "A:".
// Sampling is without replacement from an explicit seed; identical inputs
// give byte-identical prompts.
PromptBuild build_prompt_detailed(const AnnotatedMSP& msp, PromptStyle style, int k,
                                  unsigned seed, const std::vector<AnnotatedMSP>& shots = {});
std::string build_prompt(const AnnotatedMSP& msp, PromptStyle style, int k, unsigned seed,
                         const std::vector<AnnotatedMSP>& shots = {});

}  // namespace mathworld
