#ifndef SIM_LABEL_MAP_HPP
#define SIM_LABEL_MAP_HPP

#include <cstdint>
#include <vector>

namespace sim {

// Sentinel for pixels excluded from every loss and metric.
constexpr std::uint8_t DONT_CARE = 255;

// Dense H x W map of class ids (0..N-1) or DONT_CARE.
struct LabelMap {
    int height = 0;
    int width = 0;
    std::vector<std::uint8_t> values;

    LabelMap() = default;
    LabelMap(int h, int w, std::uint8_t fill = 0)
        : height(h), width(w), values(static_cast<std::size_t>(h) * w, fill) {}

    std::uint8_t& at(int h, int w) { return values[static_cast<std::size_t>(h) * width + w]; }
    std::uint8_t at(int h, int w) const { return values[static_cast<std::size_t>(h) * width + w]; }

    std::size_t pixels() const { return values.size(); }
    bool same_shape(const LabelMap& o) const { return height == o.height && width == o.width; }
    bool operator==(const LabelMap& o) const = default;
};

// One 4-connected region of a single class; mask is 1 inside, 0 outside.
struct RegionMask {
    int height = 0;
    int width = 0;
    std::vector<std::uint8_t> mask;
    int area = 0;          // number of set pixels
    int first_pixel = 0;   // smallest row-major index of a set pixel

    RegionMask() = default;
    RegionMask(int h, int w)
        : height(h), width(w), mask(static_cast<std::size_t>(h) * w, 0) {}

    bool set(int h, int w) const { return mask[static_cast<std::size_t>(h) * width + w] != 0; }
};

// Keeps ground-truth labels where the prediction agrees, DONT_CARE elsewhere.
LabelMap correct_label_map(const LabelMap& gt, const LabelMap& pred);

// Splits the pixels labeled k into 4-connected regions, ordered by area
// descending, ties by smallest row-major first pixel. Absent class -> empty.
std::vector<RegionMask> connected_regions(const LabelMap& labels, int k);

// Overwrites predicted labels with pseudo labels where they disagree;
// DONT_CARE pseudo pixels leave the prediction untouched.
LabelMap augment_label_map(const LabelMap& pred, const LabelMap& pseudo);

}  // namespace sim

#endif
