#include "sim/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sim {

Tensor::Tensor(std::vector<int> extents) : shape(std::move(extents)) {
    std::size_t n = 1;
    for (int e : shape) {
        if (e <= 0) throw std::invalid_argument("Tensor: extents must be positive");
        n *= static_cast<std::size_t>(e);
    }
    data.assign(n, 0.0);
}

bool Tensor::all_finite() const {
    return std::all_of(data.begin(), data.end(), [](double v) { return std::isfinite(v); });
}

void require_chw(const Tensor& t, int channels, const char* what) {
    if (t.rank() != 3)
        throw std::invalid_argument(std::string(what) + ": expected rank-3 tensor");
    if (channels >= 0 && t.shape[0] != channels)
        throw std::invalid_argument(std::string(what) + ": unexpected channel count");
}

Tensor softmax_channel(const Tensor& logits) {
    require_chw(logits, -1, "softmax_channel");
    const int n = logits.shape[0];
    if (n < 2) throw std::invalid_argument("softmax_channel: need at least 2 channels");
    if (!logits.all_finite()) throw std::invalid_argument("softmax_channel: non-finite input");

    const int hw = logits.shape[1] * logits.shape[2];
    Tensor out(logits.shape);
    for (int p = 0; p < hw; ++p) {
        double m = logits.data[p];
        for (int k = 1; k < n; ++k) m = std::max(m, logits.data[static_cast<std::size_t>(k) * hw + p]);
        double denom = 0.0;
        for (int k = 0; k < n; ++k) {
            double e = std::exp(logits.data[static_cast<std::size_t>(k) * hw + p] - m);
            out.data[static_cast<std::size_t>(k) * hw + p] = e;
            denom += e;
        }
        for (int k = 0; k < n; ++k) out.data[static_cast<std::size_t>(k) * hw + p] /= denom;
    }
    return out;
}

LabelMap argmax_channel(const Tensor& logits) {
    require_chw(logits, -1, "argmax_channel");
    const int n = logits.shape[0];
    if (n < 1) throw std::invalid_argument("argmax_channel: need at least 1 channel");

    const int hw = logits.shape[1] * logits.shape[2];
    LabelMap out(logits.shape[1], logits.shape[2]);
    for (int p = 0; p < hw; ++p) {
        int best = 0;
        double best_v = logits.data[p];
        for (int k = 1; k < n; ++k) {
            double v = logits.data[static_cast<std::size_t>(k) * hw + p];
            if (v > best_v) {
                best_v = v;
                best = k;
            }
        }
        out.values[p] = static_cast<std::uint8_t>(best);
    }
    return out;
}

double l1_distance(const FeatureVec& a, const FeatureVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("l1_distance: length mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
    return s;
}

}  // namespace sim
