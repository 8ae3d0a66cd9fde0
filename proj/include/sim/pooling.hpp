#ifndef SIM_POOLING_HPP
#define SIM_POOLING_HPP

#include <optional>

#include "sim/label_map.hpp"
#include "sim/tensor.hpp"

namespace sim {

// Denominator guard for masked means. Counts are integers >= 1 whenever a
// vector is emitted, so any value << 1 behaves identically.
constexpr double POOL_EPS = 1e-5;

struct PooledFeature {
    enum class Kind { Stuff, Instance };
    int class_id = 0;
    FeatureVec vector;
    Kind kind = Kind::Stuff;
    int area = 0;  // pixels that contributed
};

// Mean feature over pixels labeled b. Returns nothing when the class is
// absent from the map.
std::optional<PooledFeature> stuff_repr(const LabelMap& labels, const Tensor& features, int b);

// Mean feature over the region's set pixels.
PooledFeature instance_repr(const RegionMask& region, const Tensor& features, int class_id = 0);

}  // namespace sim

#endif
