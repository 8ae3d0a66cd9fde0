#include "sim/pseudo.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace sim {

namespace {
constexpr double THRESHOLD_CAP = 0.9;
}

ClassConfidences confidence_pass(const std::vector<Tensor>& logits_set) {
    if (logits_set.empty()) throw std::invalid_argument("confidence_pass: empty image set");

    int n = 0;
    for (const Tensor& logits : logits_set) {
        require_chw(logits, -1, "confidence_pass");
        if (n == 0)
            n = logits.shape[0];
        else if (logits.shape[0] != n)
            throw std::invalid_argument("confidence_pass: inconsistent class count");
    }

    ClassConfidences conf;
    conf.num_classes = n;
    conf.per_class.resize(n);
    for (const Tensor& logits : logits_set) {
        const Tensor probs = softmax_channel(logits);
        const int hw = probs.shape[1] * probs.shape[2];
        for (int p = 0; p < hw; ++p) {
            int best = 0;
            double best_v = probs.data[p];
            for (int k = 1; k < n; ++k) {
                const double v = probs.data[static_cast<std::size_t>(k) * hw + p];
                if (v > best_v) {
                    best_v = v;
                    best = k;
                }
            }
            conf.per_class[best].push_back(best_v);
        }
    }
    for (auto& v : conf.per_class) std::sort(v.begin(), v.end());
    return conf;
}

ThresholdTable select_thresholds(const ClassConfidences& conf) {
    ThresholdTable table;
    table.thresholds.resize(conf.num_classes, THRESHOLD_CAP);
    for (int k = 0; k < conf.num_classes; ++k) {
        const auto& v = conf.per_class[k];
        if (v.empty()) continue;
        const double median = v[(v.size() - 1) / 2];  // lower middle for even counts
        table.thresholds[k] = std::min(median, THRESHOLD_CAP);
    }
    return table;
}

LabelMap pseudo_labels(const Tensor& logits, const ThresholdTable& thresholds) {
    require_chw(logits, thresholds.num_classes(), "pseudo_labels");
    const int n = logits.shape[0];
    const Tensor probs = softmax_channel(logits);
    const int hw = probs.shape[1] * probs.shape[2];

    LabelMap out(logits.shape[1], logits.shape[2], DONT_CARE);
    for (int p = 0; p < hw; ++p) {
        int best = 0;
        double best_v = probs.data[p];
        for (int k = 1; k < n; ++k) {
            const double v = probs.data[static_cast<std::size_t>(k) * hw + p];
            if (v > best_v) {
                best_v = v;
                best = k;
            }
        }
        if (best_v > thresholds.at(best)) out.values[p] = static_cast<std::uint8_t>(best);
    }
    return out;
}

void write_threshold_csv(const std::string& path, const ThresholdTable& t) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << "class_id,threshold\n";
    char buf[64];
    for (int k = 0; k < t.num_classes(); ++k) {
        std::snprintf(buf, sizeof buf, "%d,%.17g\n", k, t.at(k));
        out << buf;
    }
}

ThresholdTable read_threshold_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    std::string line;
    if (!std::getline(in, line) || line.rfind("class_id,threshold", 0) != 0)
        throw std::runtime_error("bad threshold CSV header: " + path);
    ThresholdTable t;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        int k = 0;
        double v = 0.0;
        if (std::sscanf(line.c_str(), "%d,%lf", &k, &v) != 2)
            throw std::runtime_error("bad threshold CSV row: " + path);
        if (k != static_cast<int>(t.thresholds.size()))
            throw std::runtime_error("threshold CSV rows out of order: " + path);
        t.thresholds.push_back(v);
    }
    return t;
}

}  // namespace sim
