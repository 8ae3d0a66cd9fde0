#ifndef SIM_IO_HPP
#define SIM_IO_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "sim/bank.hpp"
#include "sim/label_map.hpp"
#include "sim/tensor.hpp"

namespace sim {

// "SIMT" container. All integers little-endian. The version byte selects the
// payload variant:
//   1  f64 tensor:     u8 rank, u32 extents..., f64 data row-major
//   2  u8 label map:   u8 rank (=2), u32 {H, W}, u8 data row-major
//   3  sample bank:    u32 class_count, u32 capacity, u32 channels, then per
//                      class (ascending id): u32 class_id, u32 valid_count,
//                      u64 counter, f64 vectors in slot order
//   4  blob sequence:  u64 iteration, u32 blob_count, then each blob as a
//                      rank/extents/f64 record (model + optimizer state)
constexpr char SIMT_MAGIC[4] = {'S', 'I', 'M', 'T'};

void write_tensor(const std::string& path, const Tensor& t);
Tensor read_tensor(const std::string& path);

void write_label_map(const std::string& path, const LabelMap& m);
LabelMap read_label_map(const std::string& path);

void write_bank(const std::string& path, const SampleBank& bank);
// `into` must already be configured with the matching class set/capacity.
void read_bank(const std::string& path, SampleBank& into);

// Checkpoint payload: iteration counter plus an ordered list of f64 blobs
// (parameter tensors followed by optimizer buffers, in a fixed order chosen
// by the caller).
struct BlobFile {
    std::uint64_t iteration = 0;
    std::vector<std::vector<double>> blobs;
};
void write_blobs(const std::string& path, const BlobFile& f);
BlobFile read_blobs(const std::string& path);

// PGM export for eyeballing label maps (class ids scaled into 0..255).
void write_label_pgm(const std::string& path, const LabelMap& m, int num_classes);

// FNV-1a 64-bit hash of a file's bytes; used by dataset manifests.
std::uint64_t hash_file(const std::string& path);
std::uint64_t hash_bytes(const void* data, std::size_t n);

}  // namespace sim

#endif
