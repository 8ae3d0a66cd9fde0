#ifndef SIM_SYNTH_HPP
#define SIM_SYNTH_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "sim/label_map.hpp"
#include "sim/tensor.hpp"

namespace sim {

// Scene recipe: three horizontal stuff bands (sky/ground/road) tiled fully,
// with circle/square/triangle instances overlaid. The target domain applies
// an affine color shift (brightness plus an opposing R/B hue term) and extra
// noise on top of the shared geometry distribution.
struct SceneSpec {
    int height = 32;
    int width = 32;
    int num_classes = 6;
    std::vector<int> stuff_classes = {0, 1, 2};
    std::vector<int> thing_classes = {3, 4, 5};

    std::vector<std::array<double, 3>> base_color = {
        {0.55, 0.75, 0.95},  // sky band
        {0.35, 0.60, 0.30},  // ground band
        {0.45, 0.45, 0.48},  // road band
        {0.85, 0.30, 0.25},  // circle
        {0.30, 0.40, 0.85},  // square
        {0.90, 0.80, 0.30},  // triangle
    };

    double source_noise = 0.05;

    // Appearance shift, applied to target-domain images only.
    double brightness_shift = 0.22;
    double hue_shift = 0.10;
    double extra_noise = 0.03;

    int min_instances = 1;
    int max_instances = 2;
    int min_radius = 2;
    int max_radius = 4;
};

enum class Domain { Source, Target };

struct Dataset {
    std::vector<Tensor> images;
    std::vector<LabelMap> labels;  // empty when loaded images-only
    // Per image: instances actually placed, indexed by thing-class position.
    std::vector<std::vector<int>> instance_counts;

    std::size_t size() const { return images.size(); }
};

// Deterministic in (spec, domain, seed, count); every pixel labeled, every
// thing instance a single 4-connected region separated from all others.
Dataset generate_domain(const SceneSpec& spec, Domain domain, std::uint64_t seed, int count);

// Directory layout: manifest.txt plus img_#####.simt / lbl_#####.simt. The
// manifest carries FNV-1a content hashes and the per-image instance counts.
void save_dataset(const std::string& dir, const Dataset& ds);
Dataset load_dataset(const std::string& dir);
// Training-side loader for the unlabeled target stream; never opens label
// files.
Dataset load_images_only(const std::string& dir);

// Re-hashes the files referenced by the manifest; throws on any mismatch.
void verify_manifest(const std::string& dir);

}  // namespace sim

#endif
