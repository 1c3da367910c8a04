#ifndef DCF_EMBEDDING_HPP
#define DCF_EMBEDDING_HPP

#include <cstdlib>
#include <fstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "dcf/error.hpp"

namespace dcf {

// Immutable after load; lookups are thread-safe.
class EmbeddingTable {
public:
    explicit EmbeddingTable(std::size_t dim) : dim_(dim) {}

    std::size_t dim() const { return dim_; }
    std::size_t size() const { return entries_.size(); }

    void insert(std::string word, std::vector<double> vec) {
        entries_[std::move(word)] = std::move(vec); // later duplicates overwrite
    }

    // nullptr for out-of-vocabulary words (callers substitute the zero vector).
    const std::vector<double>* lookup(const std::string& word) const {
        auto it = entries_.find(word);
        return it == entries_.end() ? nullptr : &it->second;
    }

private:
    std::size_t dim_;
    std::unordered_map<std::string, std::vector<double>> entries_;
};

// Row-major n x d matrix of stacked word vectors for one message.
struct WordMatrix {
    std::size_t rows = 0;
    std::size_t dim = 0;
    std::vector<double> data; // rows * dim

    double at(std::size_t r, std::size_t c) const { return data[r * dim + c]; }
    double& at(std::size_t r, std::size_t c) { return data[r * dim + c]; }
};

// Plain-text embeddings: one `word v1 v2 ... v_dim` line per entry,
// space-separated (the standard pre-trained-vector layout).
inline EmbeddingTable load_embeddings(const std::string& path, std::size_t dim) {
    if (dim < 1) throw DataError("embedding dimension must be >= 1");
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open embeddings file: " + path);

    EmbeddingTable table(dim);
    std::string line;
    std::size_t line_no = 0;
    std::vector<double> vec;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;

        std::size_t sp = line.find(' ');
        if (sp == std::string::npos || sp == 0)
            throw DataError(path + ": line " + std::to_string(line_no) + ": expected word followed by " +
                            std::to_string(dim) + " components");
        std::string word = line.substr(0, sp);

        vec.clear();
        vec.reserve(dim);
        const char* p = line.c_str() + sp;
        char* end = nullptr;
        while (*p) {
            while (*p == ' ') ++p;
            if (!*p) break;
            double v = std::strtod(p, &end);
            if (end == p)
                throw DataError(path + ": line " + std::to_string(line_no) +
                                ": unparsable number near '" + std::string(p).substr(0, 12) + "'");
            vec.push_back(v);
            p = end;
        }
        if (vec.size() != dim)
            throw DataError(path + ": line " + std::to_string(line_no) + ": expected " +
                            std::to_string(dim) + " components, got " + std::to_string(vec.size()));
        table.insert(std::move(word), vec);
    }
    return table;
}

// Stacks per-token vectors into the word matrix. OOV tokens become zero
// rows; zero rows are appended until the matrix has at least min_len rows,
// so a following convolution with kernel k <= min_len is always defined.
inline WordMatrix build_word_matrix(const std::vector<std::string>& tokens,
                                    const EmbeddingTable& table,
                                    std::size_t min_len) {
    WordMatrix m;
    m.dim = table.dim();
    m.rows = tokens.size() < min_len ? min_len : tokens.size();
    m.data.assign(m.rows * m.dim, 0.0);
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        const std::vector<double>* vec = table.lookup(tokens[i]);
        if (vec)
            for (std::size_t c = 0; c < m.dim; ++c) m.at(i, c) = (*vec)[c];
    }
    return m;
}

} // namespace dcf

#endif // DCF_EMBEDDING_HPP
