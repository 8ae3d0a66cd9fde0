#include "sim/synth.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "sim/io.hpp"
#include "sim/rng.hpp"

namespace fs = std::filesystem;

namespace sim {

namespace {

struct Box {
    int top, left, bottom, right;  // inclusive
};

bool boxes_touch(const Box& a, const Box& b) {
    // One pixel of slack so distinct instances never become 4-adjacent.
    return !(a.right + 1 < b.left || b.right + 1 < a.left || a.bottom + 1 < b.top ||
             b.bottom + 1 < a.top);
}

void draw_shape(LabelMap& labels, int shape_idx, int cy, int cx, int r, std::uint8_t cls) {
    switch (shape_idx) {
        case 0:  // disk
            for (int h = cy - r; h <= cy + r; ++h)
                for (int w = cx - r; w <= cx + r; ++w)
                    if ((h - cy) * (h - cy) + (w - cx) * (w - cx) <= r * r) labels.at(h, w) = cls;
            break;
        case 1:  // square
            for (int h = cy - r; h <= cy + r; ++h)
                for (int w = cx - r; w <= cx + r; ++w) labels.at(h, w) = cls;
            break;
        default:  // triangle, apex up; row spans nest so the fill is 4-connected
            for (int d = 0; d <= 2 * r; ++d) {
                const int half = d / 2;
                for (int w = cx - half; w <= cx + half; ++w) labels.at(cy - r + d, w) = cls;
            }
            break;
    }
}

}  // namespace

Dataset generate_domain(const SceneSpec& spec, Domain domain, std::uint64_t seed, int count) {
    if (count < 1) throw std::invalid_argument("generate_domain: count must be >= 1");
    if (spec.thing_classes.empty())
        throw std::invalid_argument("generate_domain: thing class set must be nonempty");
    if (static_cast<int>(spec.base_color.size()) != spec.num_classes)
        throw std::invalid_argument("generate_domain: base_color size mismatch");

    const int H = spec.height, W = spec.width;
    const std::uint64_t domain_tag = domain == Domain::Source ? 1 : 2;
    const double hue_pattern[3] = {1.0, 0.0, -1.0};

    const bool shifted = domain == Domain::Target;
    const double noise = shifted
                             ? std::sqrt(spec.source_noise * spec.source_noise +
                                         spec.extra_noise * spec.extra_noise)
                             : spec.source_noise;

    Dataset ds;
    ds.images.reserve(count);
    ds.labels.reserve(count);
    ds.instance_counts.reserve(count);

    for (int idx = 0; idx < count; ++idx) {
        Rng rng(mix_seed(mix_seed(seed, domain_tag), static_cast<std::uint64_t>(idx)));

        LabelMap labels(H, W);
        const int b1 = rng.uniform_int(H / 4, H / 2 - 1);
        const int b2 = rng.uniform_int(H / 2, 3 * H / 4);
        for (int h = 0; h < H; ++h) {
            const std::uint8_t cls = h < b1 ? spec.stuff_classes[0]
                                   : h < b2 ? spec.stuff_classes[1]
                                            : spec.stuff_classes[2];
            for (int w = 0; w < W; ++w) labels.at(h, w) = cls;
        }

        std::vector<Box> placed;
        std::vector<int> counts(spec.thing_classes.size(), 0);
        for (std::size_t ti = 0; ti < spec.thing_classes.size(); ++ti) {
            const int want = rng.uniform_int(spec.min_instances, spec.max_instances);
            for (int inst = 0; inst < want; ++inst) {
                for (int attempt = 0; attempt < 50; ++attempt) {
                    const int r = rng.uniform_int(spec.min_radius, spec.max_radius);
                    const int cy = rng.uniform_int(r, H - 1 - r);
                    const int cx = rng.uniform_int(r, W - 1 - r);
                    const Box box{cy - r, cx - r, cy + r, cx + r};
                    bool clear = true;
                    for (const Box& other : placed)
                        if (boxes_touch(box, other)) {
                            clear = false;
                            break;
                        }
                    if (!clear) continue;
                    draw_shape(labels, static_cast<int>(ti), cy, cx, r,
                               static_cast<std::uint8_t>(spec.thing_classes[ti]));
                    placed.push_back(box);
                    counts[ti] += 1;
                    break;
                }
            }
        }

        Tensor image({3, H, W});
        for (int h = 0; h < H; ++h) {
            for (int w = 0; w < W; ++w) {
                const auto& base = spec.base_color[labels.at(h, w)];
                for (int c = 0; c < 3; ++c) {
                    double v = base[c] + rng.normal(0.0, noise);
                    if (shifted) v += spec.brightness_shift + hue_pattern[c] * spec.hue_shift;
                    image.at(c, h, w) = v;
                }
            }
        }

        ds.images.push_back(std::move(image));
        ds.labels.push_back(std::move(labels));
        ds.instance_counts.push_back(std::move(counts));
    }
    return ds;
}

void save_dataset(const std::string& dir, const Dataset& ds) {
    fs::create_directories(dir);
    std::ofstream manifest(fs::path(dir) / "manifest.txt");
    if (!manifest) throw std::runtime_error("cannot write manifest in " + dir);

    char img_name[32], lbl_name[32];
    for (std::size_t i = 0; i < ds.size(); ++i) {
        std::snprintf(img_name, sizeof img_name, "img_%05zu.simt", i);
        std::snprintf(lbl_name, sizeof lbl_name, "lbl_%05zu.simt", i);
        const std::string img_path = (fs::path(dir) / img_name).string();
        const std::string lbl_path = (fs::path(dir) / lbl_name).string();
        write_tensor(img_path, ds.images[i]);
        write_label_map(lbl_path, ds.labels[i]);

        manifest << i << " " << img_name << " " << lbl_name;
        char hex[32];
        std::snprintf(hex, sizeof hex, " %016llx",
                      static_cast<unsigned long long>(hash_file(img_path)));
        manifest << hex;
        std::snprintf(hex, sizeof hex, " %016llx",
                      static_cast<unsigned long long>(hash_file(lbl_path)));
        manifest << hex;
        manifest << " ";
        const auto& counts = ds.instance_counts.size() > i ? ds.instance_counts[i] : std::vector<int>{};
        if (counts.empty()) manifest << "-";
        for (std::size_t t = 0; t < counts.size(); ++t)
            manifest << (t ? "," : "") << counts[t];
        manifest << "\n";
    }
}

namespace {

struct ManifestRow {
    std::string img;
    std::string lbl;
    std::uint64_t img_hash = 0;
    std::uint64_t lbl_hash = 0;
    std::vector<int> counts;
};

std::vector<ManifestRow> read_manifest(const std::string& dir) {
    std::ifstream in(fs::path(dir) / "manifest.txt");
    if (!in) throw std::runtime_error("missing manifest in " + dir);
    std::vector<ManifestRow> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::size_t idx;
        ManifestRow row;
        std::string img_hex, lbl_hex, counts_field;
        if (!(ss >> idx >> row.img >> row.lbl >> img_hex >> lbl_hex >> counts_field))
            throw std::runtime_error("bad manifest row in " + dir);
        if (idx != rows.size()) throw std::runtime_error("manifest rows out of order in " + dir);
        row.img_hash = std::stoull(img_hex, nullptr, 16);
        row.lbl_hash = std::stoull(lbl_hex, nullptr, 16);
        if (counts_field != "-") {
            std::istringstream cs(counts_field);
            std::string tok;
            while (std::getline(cs, tok, ',')) row.counts.push_back(std::stoi(tok));
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw std::runtime_error("empty manifest in " + dir);
    return rows;
}

}  // namespace

Dataset load_dataset(const std::string& dir) {
    Dataset ds;
    for (const ManifestRow& row : read_manifest(dir)) {
        ds.images.push_back(read_tensor((fs::path(dir) / row.img).string()));
        ds.labels.push_back(read_label_map((fs::path(dir) / row.lbl).string()));
        ds.instance_counts.push_back(row.counts);
    }
    return ds;
}

Dataset load_images_only(const std::string& dir) {
    Dataset ds;
    for (const ManifestRow& row : read_manifest(dir)) {
        ds.images.push_back(read_tensor((fs::path(dir) / row.img).string()));
        ds.instance_counts.push_back(row.counts);
    }
    return ds;
}

void verify_manifest(const std::string& dir) {
    for (const ManifestRow& row : read_manifest(dir)) {
        if (hash_file((fs::path(dir) / row.img).string()) != row.img_hash)
            throw std::runtime_error("image hash mismatch for " + row.img);
        if (hash_file((fs::path(dir) / row.lbl).string()) != row.lbl_hash)
            throw std::runtime_error("label hash mismatch for " + row.lbl);
    }
}

}  // namespace sim
