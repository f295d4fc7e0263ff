#pragma once

#include <string>
#include <string_view>

namespace mathworld {

// Text normalization used by every equality/matching check.
//
// Properties (entity, attribute, unit) are lowercased, whitespace-collapsed
// and de-pluralized on the last word ("green apples" -> "green apple").
// Labels are lowercased and collapsed but never de-pluralized, so that a set
// ("friends") stays distinct from one of its elements ("friend").
struct Normalizer {
    bool strip_plurals = true;

    std::string property(std::string_view text) const;
    std::string label(std::string_view text) const;

    // Naive English plural append, idempotent: "candy" -> "candys",
    // "apples" -> "apples". Used by the QA templates.
    static std::string pluralize(std::string_view word);
    // Naive singular form of one word: apples->apple, boxes->box, berries->berry.
    static std::string singularize(std::string_view word);

    static const Normalizer& standard();
};

// Lowercase + trim + collapse internal whitespace runs to single spaces.
std::string fold_whitespace_lower(std::string_view text);

}  // namespace mathworld
