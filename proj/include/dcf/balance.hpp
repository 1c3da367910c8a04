#ifndef DCF_BALANCE_HPP
#define DCF_BALANCE_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "dcf/error.hpp"
#include "dcf/forest.hpp"
#include "dcf/rng.hpp"

namespace dcf {

// Provenance of one synthetic row: x_base + delta * (x_neighbor - x_base).
// Indices refer to rows of the input matrix.
struct SmoteRecord {
    std::size_t base_index = 0;
    std::size_t neighbor_index = 0;
    double delta = 0.0;
};

struct BalancedSet {
    FeatureMatrix x; // originals (unmodified, original order) + synthetics appended
    std::vector<int> y;
    std::size_t synthetic_count = 0;
    std::vector<SmoteRecord> records; // one per synthetic row
};

namespace balance_detail {
constexpr std::uint64_t kSmoteStream = 0x5307E;
}

// SMOTE over-sampling: synthesize minority points on segments between a
// random minority point and one of its k nearest minority neighbors
// (Euclidean, distance ties broken by original row index) until both class
// counts are equal.
inline BalancedSet smote_balance(const FeatureMatrix& x, const std::vector<int>& y,
                                 std::size_t k_neighbors, std::uint64_t seed) {
    if (x.rows != y.size() || x.rows == 0)
        throw DataError("smote_balance: empty input or label count mismatch");

    std::vector<std::size_t> ham_rows, spam_rows;
    for (std::size_t r = 0; r < x.rows; ++r) (y[r] == 0 ? ham_rows : spam_rows).push_back(r);
    if (ham_rows.empty() || spam_rows.empty())
        throw DataError("smote_balance: both classes must be present");

    bool spam_minority = spam_rows.size() < ham_rows.size();
    const std::vector<std::size_t>& minority = spam_minority ? spam_rows : ham_rows;
    const std::vector<std::size_t>& majority = spam_minority ? ham_rows : spam_rows;
    int minority_label = spam_minority ? 1 : 0;

    BalancedSet out;
    out.x = x;
    out.y = y;
    if (minority.size() == majority.size()) return out;
    if (minority.size() < 2)
        throw DataError("smote_balance: minority class needs at least 2 samples");

    std::size_t m = minority.size();
    std::size_t k = std::min(k_neighbors, m - 1);
    if (k_neighbors == 0) throw DataError("smote_balance: k_neighbors must be >= 1");

    // k nearest minority neighbors of each minority row
    std::vector<std::vector<std::size_t>> neighbors(m);
    std::vector<std::pair<double, std::size_t>> dist(m - 1);
    for (std::size_t a = 0; a < m; ++a) {
        std::size_t idx = 0;
        for (std::size_t b = 0; b < m; ++b) {
            if (a == b) continue;
            double d2 = 0.0;
            const double* pa = x.row(minority[a]);
            const double* pb = x.row(minority[b]);
            for (std::size_t c = 0; c < x.cols; ++c) {
                double diff = pa[c] - pb[c];
                d2 += diff * diff;
            }
            dist[idx++] = {d2, minority[b]};
        }
        std::sort(dist.begin(), dist.end());
        neighbors[a].reserve(k);
        for (std::size_t i = 0; i < k; ++i) neighbors[a].push_back(dist[i].second);
    }

    std::size_t needed = majority.size() - m;
    Rng rng(derive_seed(seed, balance_detail::kSmoteStream));
    std::vector<double> synth(x.cols);
    for (std::size_t s = 0; s < needed; ++s) {
        std::size_t a = rng.uniform_index(m);
        std::size_t nb = neighbors[a][rng.uniform_index(k)];
        double delta = rng.uniform();
        const double* pa = x.row(minority[a]);
        const double* pz = x.row(nb);
        for (std::size_t c = 0; c < x.cols; ++c) synth[c] = pa[c] + delta * (pz[c] - pa[c]);
        out.x.push_row(synth);
        out.y.push_back(minority_label);
        out.records.push_back({minority[a], nb, delta});
    }
    out.synthetic_count = needed;
    return out;
}

} // namespace dcf

#endif // DCF_BALANCE_HPP
