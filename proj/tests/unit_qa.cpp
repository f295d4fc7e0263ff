#include <doctest.h>

#include "fixtures.hpp"
#include "mathworld/qa.hpp"
#include "mathworld/reasoner.hpp"

using namespace mathworld;
using namespace mwtest;

TEST_CASE("container and relation templates") {
    SUBCASE("gavin's blue shirts") {
        QaResult r = generate_qas(*gavin().msp.gold_graph, true);
        bool found = false;
        for (const SyntheticQA& qa : r.qas) {
            if (qa.question == "How many blue shirts does Gavin have?") {
                found = true;
                CHECK(qa.answer == Rational(6));
            }
        }
        CHECK(found);
    }
    SUBCASE("solved comparison on the balloons problem") {
        QaResult r = generate_qas(*balloons().msp.gold_graph, true);
        bool found = false;
        for (const SyntheticQA& qa : r.qas) {
            if (qa.question == "How many more balloons does James have than Amy?") {
                found = true;
                CHECK(qa.answer == Rational(131));
            }
        }
        CHECK(found);
    }
    SUBCASE("unsolved unknowns are skipped without the solver") {
        QaResult r = generate_qas(*balloons().msp.gold_graph, false);
        CHECK(r.qas.size() == 4);  // two containers, two templates each
        for (const SyntheticQA& qa : r.qas) {
            CHECK(qa.question.find("more") == std::string::npos);
        }
    }
    SUBCASE("unresolvable unknowns are skipped with a diagnostic") {
        WorldModel g;
        g.add_container(cs("a", "apple"), vr("x1"));
        QaResult r = generate_qas(g, true);
        CHECK(r.qas.empty());
        CHECK(r.diagnostics.size() == 2);  // both container templates
    }
    SUBCASE("empty graph yields nothing") {
        QaResult r = generate_qas(WorldModel{}, true);
        CHECK(r.qas.empty());
        CHECK(r.diagnostics.empty());
    }
    SUBCASE("transfer and rate phrasing") {
        QaResult r = generate_qas(*will().msp.gold_graph, true);
        bool transfer = false, rate = false;
        for (const SyntheticQA& qa : r.qas) {
            if (qa.question == "How many moneys are transferred from Will?") {
                transfer = true;
                CHECK(qa.answer == Rational(3));
            }
            if (qa.question == "How many money does Will have per toy?") {
                rate = true;
                CHECK(qa.answer == Rational(4));
            }
        }
        CHECK(transfer);
        CHECK(rate);
    }
    SUBCASE("every answer is reproducible from the graph") {
        for (const Fixture& f : all_fixtures()) {
            CAPTURE(f.msp.id);
            auto eqs = induce_equations(*f.msp.gold_graph);
            for (const SyntheticQA& qa : generate_qas(*f.msp.gold_graph, true).qas) {
                const WorldModel& g = *f.msp.gold_graph;
                Quantity q = Quantity::known(Rational(1));
                if (const Container* c = g.container(qa.element_id)) {
                    q = c->quantity;
                } else if (const Relation* r = g.relation(qa.element_id)) {
                    q = r->type() == RelationType::part_whole
                            ? g.container(r->source)->quantity
                            : *r->quantity;
                }
                if (q.is_known()) {
                    CHECK(qa.answer == q.value());
                } else {
                    auto v = recursive_solve(q.var_name(), eqs);
                    REQUIRE(v.has_value());
                    CHECK(qa.answer == *v);
                }
            }
        }
    }
}

TEST_CASE("pluralization in templates is naive and idempotent") {
    CHECK(Normalizer::pluralize("candy") == "candys");
    CHECK(Normalizer::pluralize("apple") == "apples");
    CHECK(Normalizer::pluralize("apples") == "apples");
    CHECK(Normalizer::pluralize(Normalizer::pluralize("toy")) == "toys");
}

TEST_CASE("prompt styles") {
    const Fixture bobby = candy_bobby();

    SUBCASE("original is body plus question") {
        std::string p = build_prompt(bobby.msp, PromptStyle::original, 0, 0);
        CHECK(p ==
              "Bobby had 19 pieces of candy. He ate 2 pieces of candy.\n"
              "Q: how many pieces of candy does he still have left?\n"
              "A:");
    }
    SUBCASE("same seed gives byte-identical prompts") {
        for (PromptStyle style : {PromptStyle::all_at_once, PromptStyle::sentence_by_sentence,
                                  PromptStyle::original}) {
            std::string a = build_prompt(bobby.msp, style, 2, 7);
            std::string b = build_prompt(bobby.msp, style, 2, 7);
            std::string c = build_prompt(bobby.msp, style, 2, 8);
            CHECK(a == b);
            (void)c;  // different seed may or may not differ; only equality is contractual
        }
    }
    SUBCASE("sentence-by-sentence repeats the growing prefix at each anchor") {
        // Find a seed whose sample is the amount-template QA plus the
        // transfer QA, then pin the whole layout.
        std::optional<unsigned> seed;
        for (unsigned s = 0; s < 500 && !seed; ++s) {
            PromptBuild b =
                build_prompt_detailed(bobby.msp, PromptStyle::sentence_by_sentence, 2, s);
            if (b.selected.size() == 2 &&
                b.selected[0].question ==
                    "What is the amount of candys associated with bobby?" &&
                b.selected[0].answer == Rational(19) &&
                b.selected[1].question == "How many candys are transferred from bobby?") {
                seed = s;
            }
        }
        REQUIRE(seed.has_value());
        std::string p =
            build_prompt(bobby.msp, PromptStyle::sentence_by_sentence, 2, *seed);
        CHECK(p ==
              "Bobby had 19 pieces of candy.\n"
              "Q: What is the amount of candys associated with bobby?\n"
              "A: 19\n"
              "Bobby had 19 pieces of candy. He ate 2 pieces of candy.\n"
              "Q: How many candys are transferred from bobby?\n"
              "A: 2\n"
              "Bobby had 19 pieces of candy. He ate 2 pieces of candy.\n"
              "Q: how many pieces of candy does he still have left?\n"
              "A:");
    }
    SUBCASE("all-at-once keeps the QA pairs after the full body") {
        PromptBuild b = build_prompt_detailed(bobby.msp, PromptStyle::all_at_once, 2, 3);
        REQUIRE(b.selected.size() == 2);
        std::string expect = "Bobby had 19 pieces of candy. He ate 2 pieces of candy.\n";
        for (const SyntheticQA& qa : b.selected) {
            expect += "Q: " + qa.question + "\nA: " + qa.answer.to_string() + "\n";
        }
        expect += "Q: how many pieces of candy does he still have left?\nA:";
        CHECK(b.text == expect);
    }
    SUBCASE("shots are prepended in the same style with answers") {
        const Fixture shot = found_coins();
        std::string p = build_prompt(bobby.msp, PromptStyle::original, 0, 0, {shot.msp});
        CHECK(p ==
              "Mia had 12 coins. She found 7 more coins.\n"
              "Q: How many coins does Mia have now?\n"
              "A: 19\n"
              "\n"
              "Bobby had 19 pieces of candy. He ate 2 pieces of candy.\n"
              "Q: how many pieces of candy does he still have left?\n"
              "A:");
    }
    SUBCASE("k beyond the pool uses everything available") {
        PromptBuild b = build_prompt_detailed(bobby.msp, PromptStyle::all_at_once, 99, 0);
        CHECK(b.selected.size() == 5);  // 2 containers x 2 templates + 1 transfer
    }
}
