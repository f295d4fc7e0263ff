#include "mathworld/normalize.hpp"

#include <cctype>

namespace mathworld {

namespace {

bool ends_with(std::string_view s, std::string_view suffix) {
    return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

}  // namespace

std::string fold_whitespace_lower(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    bool pending_space = false;
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) {
            out.push_back(' ');
            pending_space = false;
        }
        out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    return out;
}

std::string Normalizer::singularize(std::string_view word) {
    std::string w(word);
    if (w.size() >= 4 && ends_with(w, "ies")) {
        w.erase(w.size() - 3);
        w.push_back('y');
        return w;
    }
    if (w.size() >= 4 && (ends_with(w, "ses") || ends_with(w, "xes") || ends_with(w, "zes") ||
                          ends_with(w, "ches") || ends_with(w, "shes"))) {
        w.erase(w.size() - 2);
        return w;
    }
    if (w.size() >= 2 && w.back() == 's' && !ends_with(w, "ss")) {
        w.pop_back();
    }
    return w;
}

std::string Normalizer::pluralize(std::string_view word) {
    std::string w(word);
    if (!w.empty() && w.back() == 's') return w;
    w.push_back('s');
    return w;
}

std::string Normalizer::property(std::string_view text) const {
    std::string folded = fold_whitespace_lower(text);
    if (!strip_plurals) return folded;
    auto last_space = folded.rfind(' ');
    if (last_space == std::string::npos) return singularize(folded);
    return folded.substr(0, last_space + 1) + singularize(folded.substr(last_space + 1));
}

std::string Normalizer::label(std::string_view text) const {
    return fold_whitespace_lower(text);
}

const Normalizer& Normalizer::standard() {
    static const Normalizer instance{};
    return instance;
}

}  // namespace mathworld
