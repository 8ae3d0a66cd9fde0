#ifndef SIM_TENSOR_HPP
#define SIM_TENSOR_HPP

#include <cstddef>
#include <vector>

#include "sim/label_map.hpp"

namespace sim {

// Dense row-major tensor of doubles. Rank-3 tensors are channels-first:
// shape = {channels, height, width}.
struct Tensor {
    std::vector<int> shape;
    std::vector<double> data;

    Tensor() = default;
    explicit Tensor(std::vector<int> extents);

    static Tensor zeros(std::vector<int> extents) { return Tensor(std::move(extents)); }

    std::size_t numel() const { return data.size(); }
    int rank() const { return static_cast<int>(shape.size()); }

    // Rank-3 accessors (channel, row, col).
    double& at(int c, int h, int w) {
        return data[(static_cast<std::size_t>(c) * shape[1] + h) * shape[2] + w];
    }
    double at(int c, int h, int w) const {
        return data[(static_cast<std::size_t>(c) * shape[1] + h) * shape[2] + w];
    }

    bool same_shape(const Tensor& other) const { return shape == other.shape; }
    bool all_finite() const;
};

using FeatureVec = std::vector<double>;

// Throws std::invalid_argument if the tensor is not rank 3 with the given
// channel count (pass -1 to accept any channel count).
void require_chw(const Tensor& t, int channels, const char* what);

// Per-pixel softmax across the channel dimension, computed with
// max-subtraction. Input must be rank 3 with >= 2 channels and finite.
Tensor softmax_channel(const Tensor& logits);

// Per-pixel argmax across channels; ties break to the lowest class index.
LabelMap argmax_channel(const Tensor& logits);

double l1_distance(const FeatureVec& a, const FeatureVec& b);

}  // namespace sim

#endif
