#ifndef DCF_CORPUS_HPP
#define DCF_CORPUS_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <string>
#include <vector>

#include "dcf/error.hpp"
#include "dcf/porter.hpp"
#include "dcf/rng.hpp"
#include "dcf/stopwords.hpp"

namespace dcf {

// Labels: 0 = ham (legitimate), 1 = spam.
struct RawMessage {
    int label = 0;
    std::string text;
};

struct TokenizedMessage {
    int label = 0;
    std::vector<std::string> tokens;
};

struct PreprocessConfig {
    bool lowercase = true;
    bool strip_punctuation = true; // punctuation and digits become token boundaries
    bool remove_stopwords = true;
    bool stem = true;
};

struct DatasetSplit {
    std::vector<TokenizedMessage> train;
    std::vector<TokenizedMessage> validation;
    std::vector<TokenizedMessage> test;
    std::uint64_t seed = 0;
};

namespace corpus_detail {

inline std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return {};
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

constexpr std::uint64_t kSplitStream = 0x5714;

inline bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v';
}

} // namespace corpus_detail

// Reads a tab-separated `<label>\t<text>` file (the SMS corpus layout),
// one message per line, labels `ham` or `spam`. Line order is preserved.
inline std::vector<RawMessage> load_dataset(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open dataset file: " + path);

    std::vector<RawMessage> messages;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::size_t tab = line.find('\t');
        if (tab == std::string::npos)
            throw DataError(path + ": line " + std::to_string(line_no) + ": no tab separator");
        std::string label = line.substr(0, tab);
        std::string text = corpus_detail::trim(line.substr(tab + 1));
        int y;
        if (label == "ham") y = 0;
        else if (label == "spam") y = 1;
        else
            throw DataError(path + ": line " + std::to_string(line_no) +
                            ": unknown label '" + label + "'");
        if (text.empty())
            throw DataError(path + ": line " + std::to_string(line_no) + ": empty message text");
        messages.push_back({y, std::move(text)});
    }
    return messages;
}

// Normalizes one message into word tokens. With everything enabled:
// lowercase, keep only ASCII letter runs (digits, punctuation and non-ASCII
// bytes act as boundaries), drop stop words, Porter-stem the rest.
inline std::vector<std::string> preprocess(const std::string& text, const PreprocessConfig& cfg = {}) {
    std::string norm;
    norm.reserve(text.size());
    for (char ch : text) {
        unsigned char c = static_cast<unsigned char>(ch);
        if (cfg.lowercase && c >= 'A' && c <= 'Z') c = static_cast<unsigned char>(c - 'A' + 'a');
        bool is_letter = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
        if (cfg.strip_punctuation && !is_letter)
            norm.push_back(' ');
        else
            norm.push_back(static_cast<char>(c));
    }

    std::vector<std::string> tokens;
    std::size_t i = 0;
    while (i < norm.size()) {
        while (i < norm.size() && corpus_detail::is_space(norm[i])) ++i;
        std::size_t start = i;
        while (i < norm.size() && !corpus_detail::is_space(norm[i])) ++i;
        if (i > start) {
            std::string tok = norm.substr(start, i - start);
            if (cfg.remove_stopwords && english_stopwords().count(tok)) continue;
            if (cfg.stem) tok = porter_stem(std::move(tok));
            tokens.push_back(std::move(tok));
        }
    }
    return tokens;
}

inline std::vector<TokenizedMessage> tokenize_corpus(const std::vector<RawMessage>& messages,
                                                     const PreprocessConfig& cfg = {}) {
    std::vector<TokenizedMessage> out;
    out.reserve(messages.size());
    for (const auto& m : messages) out.push_back({m.label, preprocess(m.text, cfg)});
    return out;
}

// Deterministic shuffle, then contiguous partition. Sizes use floor rounding
// on train, then validation; test takes the remainder.
inline DatasetSplit split_dataset(const std::vector<TokenizedMessage>& messages,
                                  const std::array<double, 3>& ratios,
                                  std::uint64_t seed) {
    double sum = ratios[0] + ratios[1] + ratios[2];
    if (std::abs(sum - 1.0) > 1e-9)
        throw DataError("split ratios must sum to 1, got " + std::to_string(sum));
    if (messages.empty()) throw DataError("cannot split an empty dataset");

    std::vector<std::size_t> order(messages.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng rng(derive_seed(seed, corpus_detail::kSplitStream));
    for (std::size_t i = order.size() - 1; i > 0; --i) {
        std::size_t j = rng.uniform_index(i + 1);
        std::swap(order[i], order[j]);
    }

    std::size_t n = messages.size();
    std::size_t n_train = static_cast<std::size_t>(static_cast<double>(n) * ratios[0]);
    std::size_t n_val = static_cast<std::size_t>(static_cast<double>(n) * ratios[1]);

    DatasetSplit split;
    split.seed = seed;
    for (std::size_t i = 0; i < n; ++i) {
        const TokenizedMessage& m = messages[order[i]];
        if (i < n_train) split.train.push_back(m);
        else if (i < n_train + n_val) split.validation.push_back(m);
        else split.test.push_back(m);
    }
    return split;
}

} // namespace dcf

#endif // DCF_CORPUS_HPP
