#include "sim/bank.hpp"

#include <algorithm>
#include <stdexcept>

#include "sim/pooling.hpp"

namespace sim {

SampleBank::SampleBank(std::vector<int> class_ids, int capacity, int channels)
    : ids_(std::move(class_ids)), capacity_(capacity), channels_(channels) {
    if (capacity_ < 1) throw std::invalid_argument("SampleBank: capacity must be >= 1");
    std::sort(ids_.begin(), ids_.end());
    rings_.resize(ids_.size());
}

int SampleBank::index_of(int class_id, const char* what) const {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), class_id);
    if (it == ids_.end() || *it != class_id)
        throw std::invalid_argument(std::string(what) + ": class not managed by this bank");
    return static_cast<int>(it - ids_.begin());
}

bool SampleBank::has_class(int class_id) const {
    return std::binary_search(ids_.begin(), ids_.end(), class_id);
}

void SampleBank::insert(int class_id, FeatureVec v) {
    Ring& ring = rings_[index_of(class_id, "SampleBank::insert")];
    if (channels_ > 0 && static_cast<int>(v.size()) != channels_)
        throw std::invalid_argument("SampleBank::insert: wrong feature length");
    const int j = static_cast<int>(ring.counter % static_cast<std::uint64_t>(capacity_));
    if (j < static_cast<int>(ring.slots.size()))
        ring.slots[j] = std::move(v);
    else
        ring.slots.push_back(std::move(v));
    ring.counter += 1;
}

std::optional<std::pair<int, double>> SampleBank::nearest(int class_id,
                                                          const FeatureVec& query) const {
    const Ring& ring = rings_[index_of(class_id, "SampleBank::nearest")];
    if (ring.slots.empty()) return std::nullopt;

    int best = 0;
    double best_d = l1_distance(query, ring.slots[0]);
    for (int j = 1; j < static_cast<int>(ring.slots.size()); ++j) {
        double d = l1_distance(query, ring.slots[j]);
        if (d < best_d) {
            best_d = d;
            best = j;
        }
    }
    return std::make_pair(best, best_d);
}

int SampleBank::valid_count(int class_id) const {
    return static_cast<int>(rings_[index_of(class_id, "SampleBank::valid_count")].slots.size());
}

std::uint64_t SampleBank::counter(int class_id) const {
    return rings_[index_of(class_id, "SampleBank::counter")].counter;
}

const FeatureVec& SampleBank::slot(int class_id, int j) const {
    const Ring& ring = rings_[index_of(class_id, "SampleBank::slot")];
    if (j < 0 || j >= static_cast<int>(ring.slots.size()))
        throw std::invalid_argument("SampleBank::slot: invalid slot index");
    return ring.slots[j];
}

void SampleBank::clear() {
    for (Ring& r : rings_) {
        r.slots.clear();
        r.counter = 0;
    }
}

void SampleBank::restore_class(int class_id, std::vector<FeatureVec> slots, std::uint64_t counter) {
    Ring& ring = rings_[index_of(class_id, "SampleBank::restore_class")];
    const std::uint64_t expected =
        std::min<std::uint64_t>(counter, static_cast<std::uint64_t>(capacity_));
    if (slots.size() != expected)
        throw std::invalid_argument("SampleBank::restore_class: slot count / counter mismatch");
    for (const FeatureVec& v : slots)
        if (channels_ > 0 && static_cast<int>(v.size()) != channels_)
            throw std::invalid_argument("SampleBank::restore_class: wrong feature length");
    ring.slots = std::move(slots);
    ring.counter = counter;
}

void InstanceBank::harvest(const LabelMap& correct_labels, const Tensor& features) {
    for (int k : class_ids()) {
        const std::vector<RegionMask> regions = connected_regions(correct_labels, k);
        if (regions.empty()) continue;
        const int take = std::min(z_, static_cast<int>(regions.size()));
        for (int l = 0; l < take; ++l)
            insert(k, instance_repr(regions[l], features, k).vector);
    }
}

}  // namespace sim
