#ifndef DCF_CONVNET_HPP
#define DCF_CONVNET_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "dcf/embedding.hpp"
#include "dcf/error.hpp"
#include "dcf/rng.hpp"

namespace dcf {

using FeatureMap = std::vector<double>;    // one filter's response, length n-k+1
using FeatureVector = std::vector<double>; // pooled responses, length L

enum class PoolMode : std::uint8_t { Max = 0, Min = 1, Avg = 2 };

// L fixed random filters of shape input_dim x k, never trained. The weights
// are drawn once from the seed and also stored verbatim in the model file.
struct FilterBank {
    std::uint64_t seed = 0;
    std::size_t num_filters = 0; // L
    std::size_t input_dim = 0;   // d (1 for the update banks of level >= 2)
    std::size_t kernel = 0;      // k
    std::vector<double> weights; // num_filters * kernel * input_dim

    // weight of filter j at window offset r, input dimension c
    double weight(std::size_t j, std::size_t r, std::size_t c) const {
        return weights[(j * kernel + r) * input_dim + c];
    }
};

// Weights i.i.d. uniform on [-a, a], a = sqrt(6 / (fan_in + fan_out)) with
// fan_in = input_dim * k and fan_out = L. Draw order: filter, offset, dim.
inline FilterBank init_filter_bank(std::uint64_t seed, std::size_t num_filters,
                                   std::size_t input_dim, std::size_t kernel) {
    if (num_filters < 1 || input_dim < 1 || kernel < 1)
        throw DataError("filter bank dimensions must be positive");
    FilterBank bank;
    bank.seed = seed;
    bank.num_filters = num_filters;
    bank.input_dim = input_dim;
    bank.kernel = kernel;
    double fan_in = static_cast<double>(input_dim * kernel);
    double fan_out = static_cast<double>(num_filters);
    double a = std::sqrt(6.0 / (fan_in + fan_out));
    Rng rng(seed);
    bank.weights.resize(num_filters * kernel * input_dim);
    for (double& w : bank.weights) w = rng.uniform(-a, a);
    return bank;
}

// O_i = sum_{r=0..k-1} sum_{c=0..d-1} M[i+r][c] * F[r][c], i = 0..n-k.
inline FeatureMap convolve(const WordMatrix& m, const FilterBank& bank, std::size_t filter) {
    if (m.dim != bank.input_dim)
        throw DataError("word matrix dim " + std::to_string(m.dim) +
                        " does not match filter input dim " + std::to_string(bank.input_dim));
    if (m.rows < bank.kernel)
        throw DataError("word matrix has fewer rows than the kernel size");

    std::size_t out_len = m.rows - bank.kernel + 1;
    FeatureMap out(out_len, 0.0);
    const double* w = &bank.weights[filter * bank.kernel * bank.input_dim];
    for (std::size_t i = 0; i < out_len; ++i) {
        double acc = 0.0;
        const double* row = &m.data[i * m.dim];
        for (std::size_t t = 0; t < bank.kernel * bank.input_dim; ++t) acc += row[t] * w[t];
        out[i] = acc;
    }
    return out;
}

inline FeatureMap relu(FeatureMap map) {
    for (double& v : map) v = std::max(0.0, v);
    return map;
}

inline double global_max_pool(const FeatureMap& map) {
    if (map.empty()) throw DataError("cannot pool an empty feature map");
    return *std::max_element(map.begin(), map.end());
}

// Min and average pooling exist only for the ablation switch; max is the default.
inline double global_pool(const FeatureMap& map, PoolMode mode) {
    if (map.empty()) throw DataError("cannot pool an empty feature map");
    switch (mode) {
        case PoolMode::Min: return *std::min_element(map.begin(), map.end());
        case PoolMode::Avg: {
            double s = 0.0;
            for (double v : map) s += v;
            return s / static_cast<double>(map.size());
        }
        default: return *std::max_element(map.begin(), map.end());
    }
}

// Feature j = pool(relu(M (*) F_j)); output length equals the filter count,
// independent of the message length.
inline FeatureVector extract_features(const WordMatrix& m, const FilterBank& bank,
                                      PoolMode mode = PoolMode::Max) {
    FeatureVector out(bank.num_filters, 0.0);
    for (std::size_t j = 0; j < bank.num_filters; ++j)
        out[j] = global_pool(relu(convolve(m, bank, j)), mode);
    return out;
}

// Level >= 2 feature transform: the previous level's L-vector is treated as a
// length-L sequence of 1-dimensional words and run through an input_dim = 1
// bank, preserving the feature width across levels.
inline FeatureVector update_features(const FeatureVector& prev, const FilterBank& bank,
                                     PoolMode mode = PoolMode::Max) {
    if (bank.input_dim != 1)
        throw DataError("update bank must have input_dim = 1");
    if (prev.size() < bank.kernel)
        throw DataError("feature vector shorter than the update kernel");
    WordMatrix m;
    m.rows = prev.size();
    m.dim = 1;
    m.data = prev;
    return extract_features(m, bank, mode);
}

} // namespace dcf

#endif // DCF_CONVNET_HPP
