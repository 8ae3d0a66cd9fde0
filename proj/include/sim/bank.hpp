#ifndef SIM_BANK_HPP
#define SIM_BANK_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "sim/label_map.hpp"
#include "sim/tensor.hpp"

namespace sim {

// Per-class ring buffer of pooled source features. Slot j of a class holds
// the most recent sample whose insert counter satisfied j = counter mod
// capacity, so the valid slots are always the last min(counter, capacity)
// inserts.
class SampleBank {
  public:
    SampleBank() = default;
    SampleBank(std::vector<int> class_ids, int capacity, int channels);

    void insert(int class_id, FeatureVec v);

    // Valid slot minimizing the L1 distance to the query, lowest index on
    // ties; nothing if the class has no valid slots yet.
    std::optional<std::pair<int, double>> nearest(int class_id, const FeatureVec& query) const;

    bool has_class(int class_id) const;
    int valid_count(int class_id) const;
    std::uint64_t counter(int class_id) const;
    const FeatureVec& slot(int class_id, int j) const;

    const std::vector<int>& class_ids() const { return ids_; }
    int capacity() const { return capacity_; }
    int channels() const { return channels_; }

    void clear();

    // Serialization support: overwrite one class's ring wholesale. Slot
    // count must equal min(counter, capacity).
    void restore_class(int class_id, std::vector<FeatureVec> slots, std::uint64_t counter);

  private:
    struct Ring {
        std::vector<FeatureVec> slots;  // grows up to capacity, then wraps
        std::uint64_t counter = 0;
    };

    int index_of(int class_id, const char* what) const;

    std::vector<int> ids_;
    std::vector<Ring> rings_;
    int capacity_ = 0;
    int channels_ = 0;
};

// Stuff bank: one ring of w slots per stuff class.
class StuffBank : public SampleBank {
  public:
    StuffBank() = default;
    StuffBank(std::vector<int> stuff_class_ids, int w, int channels)
        : SampleBank(std::move(stuff_class_ids), w, channels) {}
};

// Instance bank: one ring of z*w slots per thing class, filled by harvesting
// the largest connected regions of correctly classified source pixels.
class InstanceBank : public SampleBank {
  public:
    InstanceBank() = default;
    InstanceBank(std::vector<int> thing_class_ids, int z, int w, int channels)
        : SampleBank(std::move(thing_class_ids), z * w, channels), z_(z) {}

    // For each thing class, pools the min(z, region count) largest regions
    // of the correct-label map and writes them in area-descending order.
    void harvest(const LabelMap& correct_labels, const Tensor& features);

    int max_instances_per_image() const { return z_; }

  private:
    int z_ = 10;
};

}  // namespace sim

#endif
