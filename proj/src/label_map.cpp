#include "sim/label_map.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace sim {

LabelMap correct_label_map(const LabelMap& gt, const LabelMap& pred) {
    if (!gt.same_shape(pred)) throw std::invalid_argument("correct_label_map: shape mismatch");
    LabelMap out(gt.height, gt.width);
    for (std::size_t i = 0; i < gt.pixels(); ++i)
        out.values[i] = (gt.values[i] == pred.values[i]) ? gt.values[i] : DONT_CARE;
    return out;
}

namespace {

int uf_find(std::vector<int>& parent, int x) {
    while (parent[x] != x) {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    return x;
}

void uf_union(std::vector<int>& parent, int a, int b) {
    a = uf_find(parent, a);
    b = uf_find(parent, b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
}

}  // namespace

std::vector<RegionMask> connected_regions(const LabelMap& labels, int k) {
    const int H = labels.height;
    const int W = labels.width;

    // Two-pass labeling with union-find, 4-connectivity.
    std::vector<int> comp(labels.pixels(), -1);
    std::vector<int> parent;
    for (int h = 0; h < H; ++h) {
        for (int w = 0; w < W; ++w) {
            const std::size_t i = static_cast<std::size_t>(h) * W + w;
            if (labels.values[i] != k) continue;
            int left = (w > 0 && comp[i - 1] >= 0) ? comp[i - 1] : -1;
            int top = (h > 0 && comp[i - W] >= 0) ? comp[i - W] : -1;
            if (left < 0 && top < 0) {
                comp[i] = static_cast<int>(parent.size());
                parent.push_back(comp[i]);
            } else if (left >= 0 && top >= 0) {
                comp[i] = std::min(uf_find(parent, left), uf_find(parent, top));
                uf_union(parent, left, top);
            } else {
                comp[i] = uf_find(parent, left >= 0 ? left : top);
            }
        }
    }
    if (parent.empty()) return {};

    std::vector<int> root_to_region(parent.size(), -1);
    std::vector<RegionMask> regions;
    for (std::size_t i = 0; i < comp.size(); ++i) {
        if (comp[i] < 0) continue;
        int root = uf_find(parent, comp[i]);
        if (root_to_region[root] < 0) {
            root_to_region[root] = static_cast<int>(regions.size());
            regions.emplace_back(H, W);
            regions.back().first_pixel = static_cast<int>(i);
        }
        RegionMask& r = regions[root_to_region[root]];
        r.mask[i] = 1;
        r.area += 1;
    }

    std::sort(regions.begin(), regions.end(), [](const RegionMask& a, const RegionMask& b) {
        if (a.area != b.area) return a.area > b.area;
        return a.first_pixel < b.first_pixel;
    });
    return regions;
}

LabelMap augment_label_map(const LabelMap& pred, const LabelMap& pseudo) {
    if (!pred.same_shape(pseudo)) throw std::invalid_argument("augment_label_map: shape mismatch");
    LabelMap out = pred;
    for (std::size_t i = 0; i < pred.pixels(); ++i) {
        if (pseudo.values[i] != DONT_CARE && pred.values[i] != pseudo.values[i])
            out.values[i] = pseudo.values[i];
    }
    return out;
}

}  // namespace sim
