#pragma once

// Hand-built story-problem fixtures: the classic textbook problems used as
// golden data (known graphs, known answers) plus constructed cases covering
// every relation type, the two-owner transfer, quantity binding and the two
// documented lossy linearization cases.

#include <string>
#include <vector>

#include "mathworld/convert.hpp"
#include "mathworld/model.hpp"

namespace mwtest {

using namespace mathworld;

enum class RoundTripLevel { strong, weak };

struct Fixture {
    AnnotatedMSP msp;
    RoundTripLevel round_trip = RoundTripLevel::strong;
};

inline ContainerStructure cs(std::string label, std::string entity,
                             std::optional<std::string> attribute = std::nullopt,
                             std::optional<std::string> unit = std::nullopt) {
    return {std::move(label), std::move(entity), std::move(attribute), std::move(unit)};
}

inline Quantity kn(std::int64_t n) { return Quantity::known(Rational(n)); }
inline Quantity vr(const char* name) { return Quantity::var(name); }

inline StateSnapshot snap(std::vector<int> containers, std::vector<int> relations = {}) {
    StateSnapshot s;
    s.containers = std::move(containers);
    s.relations = std::move(relations);
    return s;
}

namespace detail {

inline Fixture finish(std::string id, std::string dataset, std::vector<std::string> sentences,
                      WorldModel model, std::vector<StateSnapshot> states, Rational answer,
                      RoundTripLevel level = RoundTripLevel::strong) {
    Fixture f;
    f.msp.id = std::move(id);
    f.msp.source_dataset = std::move(dataset);
    f.msp.sentences = std::move(sentences);
    f.msp.gold_states = std::move(states);
    f.msp.gold_answer = answer;
    f.msp.logical_forms = graph_to_lfs(model, f.msp.gold_states);
    f.msp.gold_graph = std::move(model);
    f.round_trip = level;
    return f;
}

}  // namespace detail

inline Fixture cafeteria() {
    WorldModel m;
    int c1 = m.add_container(cs("school cafeteria", "apple"), kn(14));
    int c2 = m.add_container(cs("school cafeteria", "apple"), vr("x1"));
    m.add_relation(TransferKind{std::nullopt, "school cafeteria"}, kn(13), c1, c2);
    int c3 = m.add_container(cs("school cafeteria", "apple"), vr("x2"));
    m.add_relation(TransferKind{"school cafeteria", std::nullopt}, kn(49), c2, c3);
    m.set_ref_var("x2");
    return detail::finish(
        "cafeteria", "textbook-a",
        {"The school cafeteria had 14 apples.",
         "They used 13 to make lunch for the students and then bought 49 more.",
         "How many apples would they have?"},
        std::move(m), {snap({1}), snap({1, 2, 4}, {3, 5}), snap({1, 2, 4}, {3, 5})},
        Rational(50));
}

inline Fixture alice_bob() {
    WorldModel m;
    int a1 = m.add_container(cs("Alice", "apple"), kn(7));
    int b1 = m.add_container(cs("Bob", "apple"), kn(4));
    int a2 = m.add_container(cs("Alice", "apple"), vr("x1"));
    m.add_relation(TransferKind{"Bob", "Alice"}, kn(3), a1, a2);
    int b2 = m.add_container(cs("Bob", "apple"), vr("x2"));
    m.add_relation(TransferKind{"Bob", "Alice"}, kn(3), b1, b2);
    m.set_ref_var("x2");
    return detail::finish(
        "alice_bob", "textbook-a",
        {"Alice has 7 apples and Bob has 4 apples.", "Alice gives 3 apples to Bob.",
         "How many apples does Bob have now?"},
        std::move(m), {snap({1, 2}), snap({1, 2, 3, 5}, {4, 6}), snap({1, 2, 3, 5}, {4, 6})},
        Rational(7));
}

inline Fixture lansing() {
    WorldModel m;
    int schools = m.add_container(cs("Lansing", "elementary school"), kn(25));
    int students = m.add_container(cs("Lansing", "student"), vr("x1"));
    m.add_relation(RateKind{}, kn(247), students, schools);
    m.set_ref_var("x1");
    return detail::finish(
        "lansing", "textbook-a",
        {"Lansing has 25 elementary schools.", "There are 247 students in each school.",
         "How many elementary students are there altogether in Lansing?"},
        std::move(m), {snap({1}), snap({1, 2}, {3}), snap({1, 2}, {3})}, Rational(6175));
}

inline Fixture balloons() {
    WorldModel m;
    int james = m.add_container(cs("James", "balloon"), kn(232));
    int amy = m.add_container(cs("Amy", "balloon"), kn(101));
    m.add_relation(ComparisonKind{ComparisonOp::add}, vr("x1"), amy, james);
    m.set_ref_var("x1");
    return detail::finish(
        "balloons", "textbook-b",
        {"James has 232 balloons.", "Amy has 101 balloons.",
         "How many more balloons does James have than Amy?"},
        std::move(m), {snap({1}), snap({1, 2}), snap({1, 2}, {3})}, Rational(131));
}

inline Fixture gavin() {
    WorldModel m;
    int whole = m.add_container(cs("Gavin", "shirt"), kn(23));
    int blue = m.add_container(cs("Gavin", "shirt", "blue"), kn(6));
    int green = m.add_container(cs("Gavin", "shirt", "green"), vr("x1"));
    m.add_relation(PartWholeKind{}, std::nullopt, blue, whole);
    m.add_relation(PartWholeKind{}, std::nullopt, green, whole);
    m.set_ref_var("x1");
    return detail::finish(
        "gavin", "textbook-b",
        {"Gavin has 23 shirts.", "6 are blue and the rest are green.",
         "How many green shirts does Gavin have?"},
        std::move(m), {snap({1}), snap({1, 2, 3}, {4, 5}), snap({1, 2, 3}, {4, 5})},
        Rational(17));
}

inline Fixture will() {
    WorldModel m;
    int before = m.add_container(cs("Will", "money", std::nullopt, "dollar"), kn(83));
    int after = m.add_container(cs("Will", "money", std::nullopt, "dollar"), vr("x1"));
    m.add_relation(TransferKind{std::nullopt, "Will"}, kn(3), before, after);
    int toys = m.add_container(cs("Will", "toy"), vr("x2"));
    m.add_relation(RateKind{}, kn(4), after, toys);
    m.set_ref_var("x2");
    return detail::finish(
        "will", "textbook-b",
        {"Will had 83 dollars.", "He spent 3 dollars on candy.",
         "If each toy costs 4 dollars, how many toys can Will buy with the rest?"},
        std::move(m), {snap({1}), snap({1, 2}, {3}), snap({1, 2, 4}, {3, 5})}, Rational(20));
}

inline Fixture found_coins() {
    WorldModel m;
    int before = m.add_container(cs("Mia", "coin"), kn(12));
    int after = m.add_container(cs("Mia", "coin"), vr("x1"));
    m.add_relation(TransferKind{"Mia", std::nullopt}, kn(7), before, after);
    m.set_ref_var("x1");
    return detail::finish(
        "found_coins", "textbook-a",
        {"Mia had 12 coins.", "She found 7 more coins.", "How many coins does Mia have now?"},
        std::move(m), {snap({1}), snap({1, 2}, {3}), snap({1, 2}, {3})}, Rational(19));
}

inline Fixture flour() {
    WorldModel m;
    int before = m.add_container(cs("Alice", "flour", std::nullopt, "gram"), kn(500));
    int after = m.add_container(cs("Alice", "flour", std::nullopt, "gram"), vr("x1"));
    m.add_relation(TransferKind{std::nullopt, "Alice"}, kn(125), before, after);
    m.set_ref_var("x1");
    return detail::finish(
        "flour", "textbook-a",
        {"Alice had 500 grams of flour.", "She used 125 grams for a cake.",
         "How much flour does she have left?"},
        std::move(m), {snap({1}), snap({1, 2}, {3}), snap({1, 2}, {3})}, Rational(375));
}

inline Fixture stickers() {
    WorldModel m;
    int leo = m.add_container(cs("Leo", "sticker"), kn(4));
    int mara = m.add_container(cs("Mara", "sticker"), vr("x1"));
    m.add_relation(ComparisonKind{ComparisonOp::mul}, kn(3), leo, mara);
    m.set_ref_var("x1");
    return detail::finish(
        "stickers", "textbook-a",
        {"Leo has 4 stickers.", "Mara has 3 times as many stickers as Leo.",
         "How many stickers does Mara have?"},
        std::move(m), {snap({1}), snap({1, 2}, {3}), snap({1, 2}, {3})}, Rational(12));
}

inline Fixture pam_balloons() {
    WorldModel m;
    int red = m.add_container(cs("Pam", "balloon", "red"), kn(30));
    int blue = m.add_container(cs("Pam", "balloon", "blue"), kn(12));
    m.add_relation(ComparisonKind{ComparisonOp::add}, vr("x1"), blue, red);
    m.set_ref_var("x1");
    return detail::finish(
        "pam_balloons", "textbook-a",
        {"Pam has 30 red balloons.", "She has 12 blue balloons.",
         "How many more red balloons than blue balloons does Pam have?"},
        std::move(m), {snap({1}), snap({1, 2}), snap({1, 2}, {3})}, Rational(18));
}

inline Fixture farm() {
    WorldModel m;
    int animals = m.add_container(cs("farmer", "animal"), kn(40));
    int cows = m.add_container(cs("farmer", "cow"), kn(12));
    int pigs = m.add_container(cs("farmer", "pig"), kn(9));
    int sheep = m.add_container(cs("farmer", "sheep"), vr("x1"));
    m.add_relation(PartWholeKind{}, std::nullopt, cows, animals);
    m.add_relation(PartWholeKind{}, std::nullopt, pigs, animals);
    m.add_relation(PartWholeKind{}, std::nullopt, sheep, animals);
    m.set_ref_var("x1");
    return detail::finish(
        "farm", "textbook-a",
        {"A farmer keeps 40 animals.", "12 are cows, 9 are pigs and the rest are sheep.",
         "How many sheep does the farmer keep?"},
        std::move(m), {snap({1}), snap({1, 2, 3, 4}, {5, 6, 7}), snap({1, 2, 3, 4}, {5, 6, 7})},
        Rational(19));
}

inline Fixture eggs() {
    WorldModel m;
    int boxes = m.add_container(cs("World", "box"), kn(8));
    int all_eggs = m.add_container(cs("World", "egg"), vr("x1"));
    m.add_relation(RateKind{}, kn(6), all_eggs, boxes);
    m.set_ref_var("x1");
    return detail::finish(
        "eggs", "textbook-a",
        {"There are 8 boxes.", "Each box holds 6 eggs.", "How many eggs are there in total?"},
        std::move(m), {snap({1}), snap({1, 2}, {3}), snap({1, 2}, {3})}, Rational(48));
}

// A later sentence binds an unknown to a known value; earlier states carry
// the pre-binding quantity as an override.
inline Fixture apples_start() {
    WorldModel m;
    int start = m.add_container(cs("Alice", "apple"), vr("x1"));
    int now = m.add_container(cs("Alice", "apple"), kn(10));
    m.add_relation(TransferKind{"Alice", std::nullopt}, kn(4), start, now);
    m.set_ref_var("x1");
    auto s1 = snap({1});
    auto s2 = snap({1, 2}, {3});
    s2.quantity_overrides.emplace_back(2, vr("x2"));
    auto s3 = snap({1, 2}, {3});
    auto s4 = s3;
    return detail::finish(
        "apples_start", "textbook-b",
        {"Alice had some apples.", "She bought 4 more.", "Now she has 10 apples.",
         "How many apples did Alice start with?"},
        std::move(m), {s1, s2, s3, s4}, Rational(6));
}

// Two structurally equal containers: rebuilding attaches the transfer to the
// most recent one, so only weak equivalence survives the round trip.
inline Fixture coins_ambiguous() {
    WorldModel m;
    int left = m.add_container(cs("Bob", "coin"), kn(4));
    m.add_container(cs("Bob", "coin"), kn(7));
    int left_after = m.add_container(cs("Bob", "coin"), vr("x1"));
    m.add_relation(TransferKind{"Bob", std::nullopt}, kn(2), left, left_after);
    m.set_ref_var("x1");
    return detail::finish(
        "coins_ambiguous", "textbook-b",
        {"Bob has 4 coins in his left pocket and 7 coins in his right pocket.",
         "He puts 2 more coins in his left pocket.",
         "How many coins are in Bob's left pocket now?"},
        std::move(m), {snap({1, 2}), snap({1, 2, 3}, {4}), snap({1, 2, 3}, {4})}, Rational(6),
        RoundTripLevel::weak);
}

// Part-whole edges split across sentences: the question adds a single new
// part, forcing the padded part predicate.
inline Fixture charity() {
    WorldModel m;
    int total = m.add_container(cs("Sarah", "money", std::nullopt, "dollar"), kn(900));
    int first = m.add_container(cs("Sarah", "money", "first", "dollar"), kn(325));
    int second = m.add_container(cs("Sarah", "money", "second", "dollar"), kn(260));
    m.add_relation(PartWholeKind{}, std::nullopt, first, total);
    m.add_relation(PartWholeKind{}, std::nullopt, second, total);
    int last = m.add_container(cs("Sarah", "money", "last", "dollar"), vr("x1"));
    m.add_relation(PartWholeKind{}, std::nullopt, last, total);
    m.set_ref_var("x1");
    return detail::finish(
        "charity", "textbook-b",
        {"Sarah gave 900 dollars in all.",
         "She gave 325 dollars to the first family and 260 dollars to the second family.",
         "How much did she give to the last family?"},
        std::move(m),
        {snap({1}), snap({1, 2, 3}, {4, 5}), snap({1, 2, 3, 6}, {4, 5, 7})}, Rational(315),
        RoundTripLevel::weak);
}

inline Fixture red_marbles() {
    WorldModel m;
    int a1 = m.add_container(cs("Alice", "marble", "red"), kn(9));
    int b1 = m.add_container(cs("Ben", "marble", "red"), kn(2));
    int a2 = m.add_container(cs("Alice", "marble", "red"), vr("x1"));
    m.add_relation(TransferKind{"Ben", "Alice"}, kn(5), a1, a2);
    int b2 = m.add_container(cs("Ben", "marble", "red"), vr("x2"));
    m.add_relation(TransferKind{"Ben", "Alice"}, kn(5), b1, b2);
    m.set_ref_var("x2");
    return detail::finish(
        "red_marbles", "textbook-b",
        {"Alice has 9 red marbles and Ben has 2 red marbles.",
         "Alice gives 5 red marbles to Ben.", "How many red marbles does Ben have now?"},
        std::move(m), {snap({1, 2}), snap({1, 2, 3, 5}, {4, 6}), snap({1, 2, 3, 5}, {4, 6})},
        Rational(7));
}

// Two-owner transfer whose recipient was never introduced: the recipient
// side springs into existence with unknown quantities.
inline Fixture pens() {
    WorldModel m;
    int tom1 = m.add_container(cs("Tom", "pen"), kn(9));
    int tom2 = m.add_container(cs("Tom", "pen"), vr("x1"));
    m.add_relation(TransferKind{"Ann", "Tom"}, kn(2), tom1, tom2);
    int ann1 = m.add_container(cs("Ann", "pen"), vr("x2"));
    int ann2 = m.add_container(cs("Ann", "pen"), vr("x3"));
    m.add_relation(TransferKind{"Ann", "Tom"}, kn(2), ann1, ann2);
    m.set_ref_var("x1");
    return detail::finish(
        "pens", "textbook-b",
        {"Tom had 9 pens.", "He gave 2 pens to Ann.", "How many pens does Tom have now?"},
        std::move(m), {snap({1}), snap({1, 2, 4, 5}, {3, 6}), snap({1, 2, 4, 5}, {3, 6})},
        Rational(7));
}

// Three chained transfers with an out-of-coverage filler sentence (empty
// logical form) in the middle.
inline Fixture apples_chain() {
    WorldModel m;
    int s0 = m.add_container(cs("Maya", "apple"), kn(5));
    int s1 = m.add_container(cs("Maya", "apple"), vr("x1"));
    m.add_relation(TransferKind{"Maya", std::nullopt}, kn(3), s0, s1);
    int s2 = m.add_container(cs("Maya", "apple"), vr("x2"));
    m.add_relation(TransferKind{std::nullopt, "Maya"}, kn(2), s1, s2);
    int s3 = m.add_container(cs("Maya", "apple"), vr("x3"));
    m.add_relation(TransferKind{"Maya", std::nullopt}, kn(10), s2, s3);
    m.set_ref_var("x3");
    return detail::finish(
        "apples_chain", "textbook-b",
        {"Maya had 5 apples.", "It was a sunny day.", "She picked 3 more.", "She ate 2.",
         "Then she picked another 10.", "How many apples does Maya have now?"},
        std::move(m),
        {snap({1}), snap({1}), snap({1, 2}, {3}), snap({1, 2, 4}, {3, 5}),
         snap({1, 2, 4, 6}, {3, 5, 7}), snap({1, 2, 4, 6}, {3, 5, 7})},
        Rational(16));
}

// The whole is unknown and introduced by the question itself.
inline Fixture fruit() {
    WorldModel m;
    int roses = m.add_container(cs("World", "rose"), kn(12));
    int tulips = m.add_container(cs("World", "tulip"), kn(8));
    int flowers = m.add_container(cs("World", "flower"), vr("x1"));
    m.add_relation(PartWholeKind{}, std::nullopt, roses, flowers);
    m.add_relation(PartWholeKind{}, std::nullopt, tulips, flowers);
    m.set_ref_var("x1");
    return detail::finish(
        "fruit", "textbook-b",
        {"There are 12 roses in the vase.", "There are 8 tulips in the vase.",
         "How many flowers are in the vase?"},
        std::move(m), {snap({1}), snap({1, 2}), snap({1, 2, 3}, {4, 5})}, Rational(20));
}

inline Fixture rice_jars() {
    WorldModel m;
    int jars = m.add_container(cs("Ben", "jar"), kn(4));
    int rice = m.add_container(cs("Ben", "rice", std::nullopt, "gram"), vr("x1"));
    m.add_relation(RateKind{}, kn(250), rice, jars);
    m.set_ref_var("x1");
    return detail::finish(
        "rice_jars", "textbook-b",
        {"Ben fills 4 jars.", "Each jar takes 250 grams of rice.",
         "How much rice does Ben need?"},
        std::move(m), {snap({1}), snap({1, 2}, {3}), snap({1, 2}, {3})}, Rational(1000));
}

inline Fixture green_red_apples() {
    WorldModel m;
    int green = m.add_container(cs("Alice", "apple", "green"), kn(5));
    int red = m.add_container(cs("Alice", "apple", "red"), vr("x1"));
    m.add_relation(ComparisonKind{ComparisonOp::add}, kn(3), green, red);
    m.set_ref_var("x1");
    return detail::finish(
        "green_red_apples", "textbook-b",
        {"Alice has 5 green apples.", "She has 3 more red apples than green apples.",
         "How many red apples does Alice have?"},
        std::move(m), {snap({1}), snap({1, 2}, {3}), snap({1, 2}, {3})}, Rational(8));
}

inline Fixture money_mul() {
    WorldModel m;
    int zoe = m.add_container(cs("Zoe", "money", std::nullopt, "dollar"), kn(15));
    int milo = m.add_container(cs("Milo", "money", std::nullopt, "dollar"), vr("x1"));
    m.add_relation(ComparisonKind{ComparisonOp::mul}, kn(4), zoe, milo);
    m.set_ref_var("x1");
    return detail::finish(
        "money_mul", "textbook-b",
        {"Zoe has 15 dollars.", "Milo has 4 times as much money as Zoe.",
         "How much money does Milo have?"},
        std::move(m), {snap({1}), snap({1, 2}, {3}), snap({1, 2}, {3})}, Rational(60));
}

inline Fixture candy_bobby() {
    WorldModel m;
    int before = m.add_container(cs("bobby", "candy"), kn(19));
    int after = m.add_container(cs("bobby", "candy"), vr("x1"));
    m.add_relation(TransferKind{std::nullopt, "bobby"}, kn(2), before, after);
    m.set_ref_var("x1");
    return detail::finish(
        "candy_bobby", "textbook-a",
        {"Bobby had 19 pieces of candy.", "He ate 2 pieces of candy.",
         "how many pieces of candy does he still have left?"},
        std::move(m), {snap({1}), snap({1, 2}, {3}), snap({1, 2}, {3})}, Rational(17));
}

inline Fixture tickets_fraction() {
    WorldModel m;
    int price = m.add_container(cs("World", "price", std::nullopt, "dollar"), kn(3));
    int paid = m.add_container(cs("World", "money", std::nullopt, "dollar"), vr("x1"));
    m.add_relation(ComparisonKind{ComparisonOp::mul}, Quantity::known(Rational(5, 2)), price,
                   paid);
    m.set_ref_var("x1");
    return detail::finish(
        "tickets_fraction", "textbook-a",
        {"A child ticket costs 3 dollars.", "An adult ticket costs 2.5 times as much.",
         "How much does an adult ticket cost?"},
        std::move(m), {snap({1}), snap({1, 2}, {3}), snap({1, 2}, {3})}, Rational(15, 2));
}

// All six problems above with full texts and answers; these make up the
// committed corpus file.
inline std::vector<Fixture> golden_fixtures() {
    return {cafeteria(), alice_bob(), lansing(), balloons(), gavin(), will()};
}

inline std::vector<Fixture> all_fixtures() {
    return {cafeteria(),   alice_bob(),       lansing(),
            balloons(),    gavin(),           will(),
            found_coins(), flour(),           stickers(),
            pam_balloons(), farm(),           eggs(),
            apples_start(), coins_ambiguous(), charity(),
            red_marbles(), pens(),            apples_chain(),
            fruit(),       rice_jars(),       green_red_apples(),
            money_mul(),   candy_bobby(),     tickets_fraction()};
}

}  // namespace mwtest
