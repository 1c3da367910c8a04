#ifndef DCF_METRICS_HPP
#define DCF_METRICS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "dcf/error.hpp"

namespace dcf {

// Spam is the positive class unless the matrix has been swapped.
struct ConfusionMatrix {
    std::uint64_t tp = 0;
    std::uint64_t fp = 0;
    std::uint64_t tn = 0;
    std::uint64_t fn = 0;

    std::uint64_t total() const { return tp + fp + tn + fn; }
};

struct ClassMetrics {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    double accuracy = 0.0;
    bool degenerate = false; // some rate had a zero denominator and was reported as 0
};

inline ConfusionMatrix confusion_matrix(const std::vector<int>& y_true,
                                        const std::vector<int>& y_pred) {
    if (y_true.size() != y_pred.size() || y_true.empty())
        throw DataError("confusion_matrix: size mismatch or empty input");
    ConfusionMatrix cm;
    for (std::size_t i = 0; i < y_true.size(); ++i) {
        if (y_true[i] == 1)
            (y_pred[i] == 1 ? cm.tp : cm.fn)++;
        else
            (y_pred[i] == 1 ? cm.fp : cm.tn)++;
    }
    return cm;
}

// View with the other class as positive (for the two-row per-class report).
inline ConfusionMatrix swap_positive(const ConfusionMatrix& cm) {
    return {cm.tn, cm.fn, cm.tp, cm.fp};
}

inline ClassMetrics compute_metrics(const ConfusionMatrix& cm) {
    if (cm.total() == 0) throw DataError("compute_metrics: empty confusion matrix");
    ClassMetrics m;
    auto rate = [&m](std::uint64_t num, std::uint64_t den) {
        if (den == 0) {
            m.degenerate = true;
            return 0.0;
        }
        return static_cast<double>(num) / static_cast<double>(den);
    };
    m.precision = rate(cm.tp, cm.tp + cm.fp);
    m.recall = rate(cm.tp, cm.tp + cm.fn);
    if (m.precision + m.recall == 0.0) {
        m.f1 = 0.0;
        m.degenerate = true;
    } else {
        m.f1 = 2.0 * m.precision * m.recall / (m.precision + m.recall);
    }
    m.accuracy = static_cast<double>(cm.tp + cm.tn) / static_cast<double>(cm.total());
    return m;
}

struct RocPoint {
    double fpr = 0.0;
    double tpr = 0.0;
};

struct RocResult {
    double auc = 0.0;
    std::vector<RocPoint> curve;
};

// Thresholds sweep the distinct scores in descending order (equal scores are
// one step); AUC is the trapezoidal area under the (FPR, TPR) polyline.
inline RocResult roc_auc(const std::vector<std::pair<double, int>>& scored) {
    std::uint64_t pos = 0, neg = 0;
    for (const auto& [score, label] : scored) (label == 1 ? pos : neg)++;
    if (pos == 0 || neg == 0)
        throw DataError("roc_auc: both classes must be present");

    std::vector<std::pair<double, int>> sorted = scored;
    std::sort(sorted.begin(), sorted.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });

    RocResult result;
    result.curve.push_back({0.0, 0.0});
    std::uint64_t tp = 0, fp = 0;
    double auc = 0.0;
    std::size_t i = 0;
    while (i < sorted.size()) {
        double score = sorted[i].first;
        while (i < sorted.size() && sorted[i].first == score) {
            (sorted[i].second == 1 ? tp : fp)++;
            ++i;
        }
        RocPoint prev = result.curve.back();
        RocPoint cur{static_cast<double>(fp) / static_cast<double>(neg),
                     static_cast<double>(tp) / static_cast<double>(pos)};
        auc += (cur.fpr - prev.fpr) * (cur.tpr + prev.tpr) * 0.5;
        result.curve.push_back(cur);
    }
    result.auc = auc;
    return result;
}

// Mean of -(y log p + (1-y) log(1-p)) with p clamped to [1e-15, 1 - 1e-15].
inline double log_loss(const std::vector<std::pair<int, double>>& pairs) {
    if (pairs.empty()) throw DataError("log_loss: empty input");
    double sum = 0.0;
    for (const auto& [y, p] : pairs) {
        double pc = std::clamp(p, 1e-15, 1.0 - 1e-15);
        sum += y == 1 ? -std::log(pc) : -std::log(1.0 - pc);
    }
    return sum / static_cast<double>(pairs.size());
}

// The full evaluation bundle the CLI reports (Table-4 shape: one metrics row
// per class plus shared accuracy / AUC / loss).
struct EvalReport {
    ConfusionMatrix confusion; // spam positive
    ClassMetrics spam;
    ClassMetrics ham;
    double accuracy = 0.0;
    double auc = 0.0;
    double loss = 0.0;
};

inline EvalReport evaluate_predictions(const std::vector<int>& y_true,
                                       const std::vector<int>& y_pred,
                                       const std::vector<double>& p_spam) {
    if (y_true.size() != p_spam.size())
        throw DataError("evaluate_predictions: size mismatch");
    EvalReport report;
    report.confusion = confusion_matrix(y_true, y_pred);
    report.spam = compute_metrics(report.confusion);
    report.ham = compute_metrics(swap_positive(report.confusion));
    report.accuracy = report.spam.accuracy;

    std::vector<std::pair<double, int>> scored(y_true.size());
    std::vector<std::pair<int, double>> loss_pairs(y_true.size());
    for (std::size_t i = 0; i < y_true.size(); ++i) {
        scored[i] = {p_spam[i], y_true[i]};
        loss_pairs[i] = {y_true[i], p_spam[i]};
    }
    report.auc = roc_auc(scored).auc;
    report.loss = log_loss(loss_pairs);
    return report;
}

} // namespace dcf

#endif // DCF_METRICS_HPP
