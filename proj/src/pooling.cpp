#include "sim/pooling.hpp"

#include <algorithm>
#include <stdexcept>

namespace sim {

namespace {

void require_spatial_match(int fh, int fw, int lh, int lw, const char* what) {
    if (fh != lh || fw != lw) throw std::invalid_argument(std::string(what) + ": spatial mismatch");
}

}  // namespace

std::optional<PooledFeature> stuff_repr(const LabelMap& labels, const Tensor& features, int b) {
    require_chw(features, -1, "stuff_repr");
    require_spatial_match(features.shape[1], features.shape[2], labels.height, labels.width,
                          "stuff_repr");

    const int c = features.shape[0];
    const int hw = features.shape[1] * features.shape[2];
    FeatureVec sum(c, 0.0);
    int count = 0;
    for (int p = 0; p < hw; ++p) {
        if (labels.values[p] != b) continue;
        ++count;
        for (int ch = 0; ch < c; ++ch) sum[ch] += features.data[static_cast<std::size_t>(ch) * hw + p];
    }
    if (count == 0) return std::nullopt;

    const double denom = std::max(POOL_EPS, static_cast<double>(count));
    for (int ch = 0; ch < c; ++ch) sum[ch] /= denom;
    return PooledFeature{b, std::move(sum), PooledFeature::Kind::Stuff, count};
}

PooledFeature instance_repr(const RegionMask& region, const Tensor& features, int class_id) {
    require_chw(features, -1, "instance_repr");
    require_spatial_match(features.shape[1], features.shape[2], region.height, region.width,
                          "instance_repr");
    if (region.area < 1) throw std::invalid_argument("instance_repr: empty region");

    const int c = features.shape[0];
    const int hw = features.shape[1] * features.shape[2];
    FeatureVec sum(c, 0.0);
    for (int p = 0; p < hw; ++p) {
        if (!region.mask[p]) continue;
        for (int ch = 0; ch < c; ++ch) sum[ch] += features.data[static_cast<std::size_t>(ch) * hw + p];
    }
    const double denom = std::max(POOL_EPS, static_cast<double>(region.area));
    for (int ch = 0; ch < c; ++ch) sum[ch] /= denom;
    return PooledFeature{class_id, std::move(sum), PooledFeature::Kind::Instance, region.area};
}

}  // namespace sim
