#ifndef SIM_PSEUDO_HPP
#define SIM_PSEUDO_HPP

#include <string>
#include <vector>

#include "sim/label_map.hpp"
#include "sim/tensor.hpp"

namespace sim {

// Per-class max-softmax confidences collected over a target training set,
// kept sorted so medians are exact.
struct ClassConfidences {
    int num_classes = 0;
    std::vector<std::vector<double>> per_class;  // sorted ascending
};

// Per-class confidence thresholds in [0, 0.9].
struct ThresholdTable {
    std::vector<double> thresholds;

    double at(int k) const { return thresholds[k]; }
    int num_classes() const { return static_cast<int>(thresholds.size()); }
};

// Records (argmax class, max softmax probability) for every pixel of every
// image and groups the probabilities by class.
ClassConfidences confidence_pass(const std::vector<Tensor>& logits_set);

// Threshold = median class confidence capped at 0.9; lower middle element
// for even counts; classes with no pixels get 0.9.
ThresholdTable select_thresholds(const ClassConfidences& conf);

// Argmax label where the max softmax probability strictly exceeds the class
// threshold, DONT_CARE elsewhere.
LabelMap pseudo_labels(const Tensor& logits, const ThresholdTable& thresholds);

// CSV persistence: header "class_id,threshold", one row per class.
void write_threshold_csv(const std::string& path, const ThresholdTable& t);
ThresholdTable read_threshold_csv(const std::string& path);

}  // namespace sim

#endif
