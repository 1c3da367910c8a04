#ifndef DCF_STOPWORDS_HPP
#define DCF_STOPWORDS_HPP

#include <string_view>
#include <unordered_set>

namespace dcf {

// Fixed English stop-word list (120 words, the classic list used by most
// text-classification toolkits). Kept short on purpose: aggressive lists
// contain fragments of negated auxiliaries ("won", "wasn") that collide
// with content words after punctuation stripping.
inline const std::unordered_set<std::string_view>& english_stopwords() {
    static const std::unordered_set<std::string_view> words = {
        "i", "me", "my", "myself", "we", "our", "ours", "ourselves",
        "you", "your", "yours", "yourself", "yourselves",
        "he", "him", "his", "himself", "she", "her", "hers", "herself",
        "it", "its", "itself", "they", "them", "their", "theirs", "themselves",
        "what", "which", "who", "whom", "this", "that", "these", "those",
        "am", "is", "are", "was", "were", "be", "been", "being",
        "have", "has", "had", "having", "do", "does", "did", "doing",
        "a", "an", "the", "and", "but", "if", "or", "because", "as",
        "until", "while", "of", "at", "by", "for", "with", "about",
        "against", "between", "into", "through", "during", "before",
        "after", "above", "below", "to", "from", "up", "down", "in",
        "out", "on", "off", "over", "under", "again", "further", "then",
        "once", "here", "there", "when", "where", "why", "how", "all",
        "any", "both", "each", "few", "more", "most", "other", "some",
        "such", "no", "nor", "not", "only", "own", "same", "so", "than",
        "too", "very", "s", "t", "can", "will", "just", "don", "should",
        "now",
    };
    return words;
}

} // namespace dcf

#endif // DCF_STOPWORDS_HPP
