#ifndef DCF_FOREST_HPP
#define DCF_FOREST_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <future>
#include <numeric>
#include <vector>

#include "dcf/error.hpp"
#include "dcf/rng.hpp"

namespace dcf {

enum class ForestKind : std::uint8_t { RandomForest = 0, ExtraTrees = 1 };

// Split rule for extremely randomized trees. SingleRandomFeature is one
// uniformly random feature plus one uniform random threshold per node;
// BestOfRandomK draws a random threshold for each of ceil(sqrt(F)) sampled
// features and keeps the best Gini among them.
enum class ExtraSplitRule : std::uint8_t { SingleRandomFeature = 0, BestOfRandomK = 1 };

struct ClassProbabilities {
    double p_ham = 0.0;
    double p_spam = 0.0;
};

// Row-major sample matrix.
struct FeatureMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    FeatureMatrix() = default;
    FeatureMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

    double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
    double& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    const double* row(std::size_t r) const { return &data[r * cols]; }

    void push_row(const std::vector<double>& v) {
        if (cols == 0) cols = v.size();
        if (v.size() != cols) throw DataError("inconsistent feature vector width");
        data.insert(data.end(), v.begin(), v.end());
        ++rows;
    }
};

// Flat tree storage; node 0 is the root. feature == -1 marks a leaf.
struct TreeNode {
    std::int32_t feature = -1;
    double threshold = 0.0;
    std::uint32_t left = 0;
    std::uint32_t right = 0;
    std::uint64_t count_ham = 0;
    std::uint64_t count_spam = 0;
    double dist_ham = 0.0;
    double dist_spam = 0.0;
};

struct Tree {
    std::vector<TreeNode> nodes;

    const TreeNode& leaf_for(const double* x) const {
        std::size_t i = 0;
        while (nodes[i].feature >= 0)
            i = x[nodes[i].feature] <= nodes[i].threshold ? nodes[i].left : nodes[i].right;
        return nodes[i];
    }
};

struct ForestConfig {
    std::size_t min_samples_split = 2;
    ExtraSplitRule ert_rule = ExtraSplitRule::SingleRandomFeature;
    std::size_t n_threads = 1;
};

inline double gini_impurity(std::uint64_t count_ham, std::uint64_t count_spam) {
    std::uint64_t total = count_ham + count_spam;
    if (total == 0) throw std::invalid_argument("gini_impurity: all-zero counts");
    double ph = static_cast<double>(count_ham) / static_cast<double>(total);
    double ps = static_cast<double>(count_spam) / static_cast<double>(total);
    return 1.0 - ph * ph - ps * ps;
}

namespace forest_detail {

struct SplitChoice {
    bool found = false;
    std::size_t feature = 0;
    double threshold = 0.0;
    double weighted_gini = 1.0;
};

// Exhaustive threshold scan over the given candidate features: thresholds are
// midpoints between consecutive sorted unique values, the winner minimizes
// the weighted child Gini. Ties break toward the lowest feature index, then
// the lowest threshold.
inline SplitChoice best_split(const FeatureMatrix& x, const std::vector<int>& y,
                              const std::vector<std::size_t>& node_rows,
                              const std::vector<std::size_t>& candidates) {
    std::size_t n = node_rows.size();
    SplitChoice best;
    double best_q = -1.0; // maximizing q is minimizing weighted gini = 1 - q/n
    std::uint64_t total_ham = 0, total_spam = 0;
    for (std::size_t r : node_rows) (y[r] == 0 ? total_ham : total_spam)++;

    std::vector<std::pair<double, int>> vals(n);
    for (std::size_t f : candidates) {
        for (std::size_t i = 0; i < n; ++i)
            vals[i] = {x.at(node_rows[i], f), y[node_rows[i]]};
        std::sort(vals.begin(), vals.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });

        double lh = 0.0, ls = 0.0;
        for (std::size_t i = 1; i < n; ++i) {
            (vals[i - 1].second == 0 ? lh : ls) += 1.0;
            if (vals[i - 1].first == vals[i].first) continue;
            double nl = static_cast<double>(i);
            double nr = static_cast<double>(n - i);
            double rh = static_cast<double>(total_ham) - lh;
            double rs = static_cast<double>(total_spam) - ls;
            double q = (lh * lh + ls * ls) / nl + (rh * rh + rs * rs) / nr;
            double threshold = vals[i - 1].first + 0.5 * (vals[i].first - vals[i - 1].first);
            if (q > best_q ||
                (q == best_q && best.found &&
                 (f < best.feature || (f == best.feature && threshold < best.threshold)))) {
                best_q = q;
                best.found = true;
                best.feature = f;
                best.threshold = threshold;
            }
        }
    }
    if (best.found) best.weighted_gini = 1.0 - best_q / static_cast<double>(n);
    return best;
}

// Sample `count` distinct feature indices (partial Fisher-Yates).
inline std::vector<std::size_t> sample_features(std::size_t n_features, std::size_t count, Rng& rng) {
    std::vector<std::size_t> all(n_features);
    std::iota(all.begin(), all.end(), std::size_t{0});
    for (std::size_t i = 0; i < count; ++i) {
        std::size_t j = i + rng.uniform_index(n_features - i);
        std::swap(all[i], all[j]);
    }
    all.resize(count);
    return all;
}

inline SplitChoice choose_split(const FeatureMatrix& x, const std::vector<int>& y,
                                const std::vector<std::size_t>& node_rows,
                                ForestKind kind, const ForestConfig& cfg, Rng& rng) {
    std::size_t n_features = x.cols;
    if (kind == ForestKind::RandomForest) {
        std::size_t mtry = static_cast<std::size_t>(
            std::ceil(std::sqrt(static_cast<double>(n_features))));
        return best_split(x, y, node_rows, sample_features(n_features, mtry, rng));
    }

    if (cfg.ert_rule == ExtraSplitRule::SingleRandomFeature) {
        std::size_t f = rng.uniform_index(n_features);
        double lo = x.at(node_rows[0], f), hi = lo;
        for (std::size_t r : node_rows) {
            double v = x.at(r, f);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        SplitChoice choice;
        if (lo == hi) return choice; // constant feature, cannot separate
        choice.found = true;
        choice.feature = f;
        choice.threshold = rng.uniform(lo, hi);
        return choice;
    }

    // BestOfRandomK: random threshold per sampled feature, best Gini wins.
    std::size_t mtry = static_cast<std::size_t>(
        std::ceil(std::sqrt(static_cast<double>(n_features))));
    std::vector<std::size_t> feats = sample_features(n_features, mtry, rng);
    std::uint64_t total_ham = 0, total_spam = 0;
    for (std::size_t r : node_rows) (y[r] == 0 ? total_ham : total_spam)++;
    std::size_t n = node_rows.size();

    SplitChoice best;
    double best_q = -1.0;
    for (std::size_t f : feats) {
        double lo = x.at(node_rows[0], f), hi = lo;
        for (std::size_t r : node_rows) {
            double v = x.at(r, f);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        if (lo == hi) continue;
        double t = rng.uniform(lo, hi);
        double lh = 0.0, ls = 0.0;
        std::size_t nl = 0;
        for (std::size_t r : node_rows) {
            if (x.at(r, f) <= t) {
                ++nl;
                (y[r] == 0 ? lh : ls) += 1.0;
            }
        }
        if (nl == 0 || nl == n) continue;
        double rh = static_cast<double>(total_ham) - lh;
        double rs = static_cast<double>(total_spam) - ls;
        double q = (lh * lh + ls * ls) / static_cast<double>(nl) +
                   (rh * rh + rs * rs) / static_cast<double>(n - nl);
        if (q > best_q || (q == best_q && best.found && f < best.feature)) {
            best_q = q;
            best.found = true;
            best.feature = f;
            best.threshold = t;
        }
    }
    if (best.found) best.weighted_gini = 1.0 - best_q / static_cast<double>(n);
    return best;
}

inline TreeNode make_leaf(std::uint64_t count_ham, std::uint64_t count_spam) {
    TreeNode leaf;
    double total = static_cast<double>(count_ham + count_spam);
    leaf.count_ham = count_ham;
    leaf.count_spam = count_spam;
    leaf.dist_ham = static_cast<double>(count_ham) / total;
    leaf.dist_spam = static_cast<double>(count_spam) / total;
    return leaf;
}

// Iterative growth with an explicit work stack (extremely randomized trees
// can chain thousands of levels deep on interpolated data).
inline Tree grow_tree(const FeatureMatrix& x, const std::vector<int>& y,
                      std::vector<std::size_t> root_rows, ForestKind kind,
                      const ForestConfig& cfg, Rng& rng) {
    Tree tree;
    struct WorkItem {
        std::uint32_t node;
        std::vector<std::size_t> rows;
    };
    std::vector<WorkItem> stack;
    tree.nodes.emplace_back();
    stack.push_back({0, std::move(root_rows)});

    while (!stack.empty()) {
        WorkItem item = std::move(stack.back());
        stack.pop_back();

        std::uint64_t count_ham = 0, count_spam = 0;
        for (std::size_t r : item.rows) (y[r] == 0 ? count_ham : count_spam)++;

        bool stop = item.rows.size() < cfg.min_samples_split ||
                    count_ham == 0 || count_spam == 0;
        SplitChoice split;
        if (!stop) {
            split = choose_split(x, y, item.rows, kind, cfg, rng);
            stop = !split.found;
        }
        std::vector<std::size_t> left_rows, right_rows;
        if (!stop) {
            for (std::size_t r : item.rows)
                (x.at(r, split.feature) <= split.threshold ? left_rows : right_rows).push_back(r);
            stop = left_rows.empty() || right_rows.empty(); // failed to separate
        }
        if (stop) {
            tree.nodes[item.node] = make_leaf(count_ham, count_spam);
            continue;
        }

        std::uint32_t li = static_cast<std::uint32_t>(tree.nodes.size());
        tree.nodes.emplace_back();
        std::uint32_t ri = static_cast<std::uint32_t>(tree.nodes.size());
        tree.nodes.emplace_back();
        TreeNode& node = tree.nodes[item.node];
        node.feature = static_cast<std::int32_t>(split.feature);
        node.threshold = split.threshold;
        node.left = li;
        node.right = ri;
        stack.push_back({ri, std::move(right_rows)});
        stack.push_back({li, std::move(left_rows)});
    }
    return tree;
}

constexpr std::uint64_t kFoldStream = 0xF01D;

} // namespace forest_detail

// Grows one tree on the full sample to purity (or to min_samples_split).
inline Tree fit_tree(const FeatureMatrix& x, const std::vector<int>& y,
                     ForestKind kind, Rng& rng, const ForestConfig& cfg = {}) {
    if (x.rows == 0 || x.rows != y.size())
        throw DataError("fit_tree: empty input or label count mismatch");
    std::vector<std::size_t> rows(x.rows);
    std::iota(rows.begin(), rows.end(), std::size_t{0});
    return forest_detail::grow_tree(x, y, std::move(rows), kind, cfg, rng);
}

struct Forest {
    ForestKind kind = ForestKind::RandomForest;
    std::uint64_t seed = 0;
    std::size_t feature_count = 0;
    std::vector<Tree> trees;

    // Soft voting: average of the reached leaf class distributions.
    ClassProbabilities predict_proba(const double* x, std::size_t width) const {
        if (width != feature_count)
            throw DataError("feature width " + std::to_string(width) + " does not match forest (" +
                            std::to_string(feature_count) + ")");
        double h = 0.0, s = 0.0;
        for (const Tree& t : trees) {
            const TreeNode& leaf = t.leaf_for(x);
            h += leaf.dist_ham;
            s += leaf.dist_spam;
        }
        double n = static_cast<double>(trees.size());
        return {h / n, s / n};
    }

    ClassProbabilities predict_proba(const std::vector<double>& x) const {
        return predict_proba(x.data(), x.size());
    }

    // Hard majority vote across trees; ties go to spam, matching the
    // cascade's final else-branch.
    int predict_majority(const std::vector<double>& x) const {
        if (x.size() != feature_count)
            throw DataError("feature width does not match forest");
        std::size_t spam_votes = 0;
        for (const Tree& t : trees) {
            const TreeNode& leaf = t.leaf_for(x.data());
            if (leaf.dist_spam >= leaf.dist_ham) ++spam_votes;
        }
        return 2 * spam_votes >= trees.size() ? 1 : 0;
    }
};

// RandomForest trees train on bootstrap resamples, ExtraTrees on the full
// sample. Tree t draws all of its randomness from derive_seed(seed, t), so
// parallel and serial training produce identical forests.
inline Forest fit_forest(const FeatureMatrix& x, const std::vector<int>& y, ForestKind kind,
                         std::size_t n_trees, std::uint64_t seed, const ForestConfig& cfg = {}) {
    if (x.rows == 0 || x.rows != y.size())
        throw DataError("fit_forest: empty input or label count mismatch");
    if (n_trees == 0) throw DataError("fit_forest: n_trees must be >= 1");

    Forest forest;
    forest.kind = kind;
    forest.seed = seed;
    forest.feature_count = x.cols;
    forest.trees.resize(n_trees);

    auto fit_range = [&](std::size_t begin, std::size_t end) {
        for (std::size_t t = begin; t < end; ++t) {
            Rng rng(derive_seed(seed, t));
            std::vector<std::size_t> rows(x.rows);
            if (kind == ForestKind::RandomForest) {
                for (auto& r : rows) r = rng.uniform_index(x.rows);
            } else {
                std::iota(rows.begin(), rows.end(), std::size_t{0});
            }
            forest.trees[t] = forest_detail::grow_tree(x, y, std::move(rows), kind, cfg, rng);
        }
    };

    if (cfg.n_threads <= 1 || n_trees < 2) {
        fit_range(0, n_trees);
    } else {
        std::size_t workers = std::min(cfg.n_threads, n_trees);
        std::vector<std::future<void>> futures;
        std::size_t chunk = (n_trees + workers - 1) / workers;
        for (std::size_t w = 0; w < workers; ++w) {
            std::size_t begin = w * chunk;
            std::size_t end = std::min(begin + chunk, n_trees);
            if (begin >= end) break;
            futures.push_back(std::async(std::launch::async, fit_range, begin, end));
        }
        for (auto& f : futures) f.get();
    }
    return forest;
}

struct CrossFitResult {
    std::vector<ClassProbabilities> out_of_fold; // one per training row
    Forest full_forest;                          // trained on all rows, for inference
};

// Out-of-fold probabilities: each row is scored by a forest that never saw
// it. Fold assignment is a seeded shuffle taken modulo `folds`. The returned
// full forest is bit-identical to a plain fit_forest with the same seed.
inline CrossFitResult cross_fit_proba(const FeatureMatrix& x, const std::vector<int>& y,
                                      ForestKind kind, std::size_t folds, std::size_t n_trees,
                                      std::uint64_t seed, const ForestConfig& cfg = {}) {
    if (folds < 2) throw DataError("cross_fit_proba: folds must be >= 2");
    if (x.rows < folds)
        throw DataError("cross_fit_proba: more folds (" + std::to_string(folds) +
                        ") than rows (" + std::to_string(x.rows) + ")");

    std::vector<std::size_t> order(x.rows);
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng rng(derive_seed(seed, forest_detail::kFoldStream));
    for (std::size_t i = order.size() - 1; i > 0; --i) {
        std::size_t j = rng.uniform_index(i + 1);
        std::swap(order[i], order[j]);
    }
    std::vector<std::size_t> fold_of(x.rows);
    for (std::size_t pos = 0; pos < order.size(); ++pos) fold_of[order[pos]] = pos % folds;

    CrossFitResult result;
    result.out_of_fold.resize(x.rows);
    for (std::size_t f = 0; f < folds; ++f) {
        FeatureMatrix sub;
        sub.cols = x.cols;
        std::vector<int> sub_y;
        for (std::size_t r = 0; r < x.rows; ++r) {
            if (fold_of[r] == f) continue;
            sub.data.insert(sub.data.end(), x.row(r), x.row(r) + x.cols);
            ++sub.rows;
            sub_y.push_back(y[r]);
        }
        Forest fold_forest =
            fit_forest(sub, sub_y, kind, n_trees, derive_seed(seed, forest_detail::kFoldStream, f), cfg);
        for (std::size_t r = 0; r < x.rows; ++r)
            if (fold_of[r] == f)
                result.out_of_fold[r] = fold_forest.predict_proba(x.row(r), x.cols);
    }
    result.full_forest = fit_forest(x, y, kind, n_trees, seed, cfg);
    return result;
}

} // namespace dcf

#endif // DCF_FOREST_HPP
