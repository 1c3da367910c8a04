#ifndef DCF_PORTER_HPP
#define DCF_PORTER_HPP

#include <string>
#include <string_view>

// Classic Porter stemming algorithm (the original 1980 definition, steps
// 1a-5b). Operates on lowercase ASCII words; words of length <= 2 are
// returned unchanged.

namespace dcf {
namespace porter_detail {

inline bool is_vowel_letter(char c) {
    return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

// True if word[i] acts as a consonant. 'y' counts as a consonant unless it
// follows a consonant ("sky" -> y is a vowel, "toy" -> y is a consonant).
inline bool is_consonant(const std::string& w, std::size_t i) {
    char c = w[i];
    if (is_vowel_letter(c)) return false;
    if (c == 'y') return i == 0 || !is_consonant(w, i - 1);
    return true;
}

// The measure m: number of VC sequences in the form [C](VC)^m[V].
inline int measure(const std::string& w, std::size_t len) {
    int m = 0;
    std::size_t i = 0;
    while (i < len && is_consonant(w, i)) ++i;
    while (i < len) {
        while (i < len && !is_consonant(w, i)) ++i;
        if (i >= len) break;
        ++m;
        while (i < len && is_consonant(w, i)) ++i;
    }
    return m;
}

inline bool contains_vowel(const std::string& w, std::size_t len) {
    for (std::size_t i = 0; i < len; ++i)
        if (!is_consonant(w, i)) return true;
    return false;
}

inline bool ends_double_consonant(const std::string& w) {
    std::size_t n = w.size();
    return n >= 2 && w[n - 1] == w[n - 2] && is_consonant(w, n - 1);
}

// *o: stem ends cvc where the final c is not w, x or y.
inline bool ends_cvc(const std::string& w, std::size_t len) {
    if (len < 3) return false;
    if (!is_consonant(w, len - 3) || is_consonant(w, len - 2) || !is_consonant(w, len - 1))
        return false;
    char c = w[len - 1];
    return c != 'w' && c != 'x' && c != 'y';
}

inline bool ends_with(const std::string& w, std::string_view suf) {
    return w.size() >= suf.size() &&
           std::string_view(w).substr(w.size() - suf.size()) == suf;
}

// Replace suffix `suf` with `rep` if the stem before it has measure > min_m.
inline bool replace_if(std::string& w, std::string_view suf, std::string_view rep, int min_m) {
    if (!ends_with(w, suf)) return false;
    std::size_t stem_len = w.size() - suf.size();
    if (measure(w, stem_len) > min_m) {
        w.resize(stem_len);
        w.append(rep);
    }
    return true; // suffix matched, even if the condition blocked the rewrite
}

} // namespace porter_detail

inline std::string porter_stem(std::string w) {
    using namespace porter_detail;
    if (w.size() <= 2) return w;

    // Step 1a
    if (ends_with(w, "sses")) w.resize(w.size() - 2);
    else if (ends_with(w, "ies")) w.resize(w.size() - 2);
    else if (!ends_with(w, "ss") && ends_with(w, "s")) w.resize(w.size() - 1);

    // Step 1b
    bool cleanup = false;
    if (ends_with(w, "eed")) {
        if (measure(w, w.size() - 3) > 0) w.resize(w.size() - 1);
    } else if (ends_with(w, "ed") && contains_vowel(w, w.size() - 2)) {
        w.resize(w.size() - 2);
        cleanup = true;
    } else if (ends_with(w, "ing") && contains_vowel(w, w.size() - 3)) {
        w.resize(w.size() - 3);
        cleanup = true;
    }
    if (cleanup) {
        if (ends_with(w, "at") || ends_with(w, "bl") || ends_with(w, "iz")) {
            w.push_back('e');
        } else if (ends_double_consonant(w)) {
            char c = w.back();
            if (c != 'l' && c != 's' && c != 'z') w.pop_back();
        } else if (measure(w, w.size()) == 1 && ends_cvc(w, w.size())) {
            w.push_back('e');
        }
    }

    // Step 1c
    if (ends_with(w, "y") && contains_vowel(w, w.size() - 1)) w.back() = 'i';

    // Step 2 (m > 0)
    static constexpr std::pair<std::string_view, std::string_view> step2[] = {
        {"ational", "ate"}, {"tional", "tion"}, {"enci", "ence"}, {"anci", "ance"},
        {"izer", "ize"},    {"abli", "able"},   {"alli", "al"},   {"entli", "ent"},
        {"eli", "e"},       {"ousli", "ous"},   {"ization", "ize"}, {"ation", "ate"},
        {"ator", "ate"},    {"alism", "al"},    {"iveness", "ive"}, {"fulness", "ful"},
        {"ousness", "ous"}, {"aliti", "al"},    {"iviti", "ive"},  {"biliti", "ble"},
    };
    for (const auto& [suf, rep] : step2) {
        if (replace_if(w, suf, rep, 0)) break;
    }

    // Step 3 (m > 0)
    static constexpr std::pair<std::string_view, std::string_view> step3[] = {
        {"icate", "ic"}, {"ative", ""}, {"alize", "al"}, {"iciti", "ic"},
        {"ical", "ic"},  {"ful", ""},   {"ness", ""},
    };
    for (const auto& [suf, rep] : step3) {
        if (replace_if(w, suf, rep, 0)) break;
    }

    // Step 4 (m > 1)
    static constexpr std::string_view step4[] = {
        "al", "ance", "ence", "er", "ic", "able", "ible", "ant", "ement",
        "ment", "ent", "ou", "ism", "ate", "iti", "ous", "ive", "ize",
    };
    bool matched4 = false;
    if (ends_with(w, "ion")) {
        // (m>1 and (*S or *T)) ION ->
        std::size_t stem_len = w.size() - 3;
        if (stem_len > 0 && (w[stem_len - 1] == 's' || w[stem_len - 1] == 't')) {
            if (measure(w, stem_len) > 1) w.resize(stem_len);
            matched4 = true;
        }
    }
    if (!matched4) {
        for (std::string_view suf : step4) {
            if (replace_if(w, suf, "", 1)) break;
        }
    }

    // Step 5a
    if (ends_with(w, "e")) {
        std::size_t stem_len = w.size() - 1;
        int m = measure(w, stem_len);
        if (m > 1 || (m == 1 && !ends_cvc(w, stem_len))) w.resize(stem_len);
    }

    // Step 5b: (m > 1 and *d and *L) -> single letter
    if (ends_double_consonant(w) && w.back() == 'l' && measure(w, w.size()) > 1)
        w.pop_back();

    return w;
}

} // namespace dcf

#endif // DCF_PORTER_HPP
