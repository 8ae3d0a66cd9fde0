#include "sim/io.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace sim {

namespace {

class Writer {
  public:
    explicit Writer(const std::string& path) : out_(path, std::ios::binary) {
        if (!out_) throw std::runtime_error("cannot open for writing: " + path);
        path_ = path;
    }
    void bytes(const void* p, std::size_t n) { out_.write(static_cast<const char*>(p), n); }
    void u8(std::uint8_t v) { bytes(&v, 1); }
    void u32(std::uint32_t v) {
        std::uint8_t b[4] = {static_cast<std::uint8_t>(v), static_cast<std::uint8_t>(v >> 8),
                             static_cast<std::uint8_t>(v >> 16), static_cast<std::uint8_t>(v >> 24)};
        bytes(b, 4);
    }
    void u64(std::uint64_t v) {
        u32(static_cast<std::uint32_t>(v));
        u32(static_cast<std::uint32_t>(v >> 32));
    }
    void f64(double v) {
        std::uint64_t bits;
        std::memcpy(&bits, &v, 8);
        u64(bits);
    }
    void close() {
        out_.close();
        if (!out_) throw std::runtime_error("write failed: " + path_);
    }

  private:
    std::ofstream out_;
    std::string path_;
};

class Reader {
  public:
    explicit Reader(const std::string& path) : in_(path, std::ios::binary), path_(path) {
        if (!in_) throw std::runtime_error("cannot open for reading: " + path);
    }
    void bytes(void* p, std::size_t n) {
        in_.read(static_cast<char*>(p), n);
        if (static_cast<std::size_t>(in_.gcount()) != n)
            throw std::runtime_error("truncated file: " + path_);
    }
    std::uint8_t u8() {
        std::uint8_t v;
        bytes(&v, 1);
        return v;
    }
    std::uint32_t u32() {
        std::uint8_t b[4];
        bytes(b, 4);
        return std::uint32_t(b[0]) | (std::uint32_t(b[1]) << 8) | (std::uint32_t(b[2]) << 16) |
               (std::uint32_t(b[3]) << 24);
    }
    std::uint64_t u64() {
        std::uint64_t lo = u32();
        std::uint64_t hi = u32();
        return lo | (hi << 32);
    }
    double f64() {
        std::uint64_t bits = u64();
        double v;
        std::memcpy(&v, &bits, 8);
        return v;
    }
    const std::string& path() const { return path_; }

  private:
    std::ifstream in_;
    std::string path_;
};

void write_magic(Writer& w, std::uint8_t version) {
    w.bytes(SIMT_MAGIC, 4);
    w.u8(version);
}

void check_magic(Reader& r, std::uint8_t expected_version) {
    char m[4];
    r.bytes(m, 4);
    if (std::memcmp(m, SIMT_MAGIC, 4) != 0)
        throw std::runtime_error("bad magic: " + r.path());
    std::uint8_t v = r.u8();
    if (v != expected_version)
        throw std::runtime_error("unexpected container version in " + r.path());
}

}  // namespace

void write_tensor(const std::string& path, const Tensor& t) {
    Writer w(path);
    write_magic(w, 1);
    w.u8(static_cast<std::uint8_t>(t.rank()));
    for (int e : t.shape) w.u32(static_cast<std::uint32_t>(e));
    for (double v : t.data) w.f64(v);
    w.close();
}

Tensor read_tensor(const std::string& path) {
    Reader r(path);
    check_magic(r, 1);
    int rank = r.u8();
    if (rank < 1 || rank > 4) throw std::runtime_error("bad tensor rank in " + path);
    std::vector<int> shape(rank);
    for (int& e : shape) {
        std::uint32_t v = r.u32();
        if (v == 0 || v > (1u << 24)) throw std::runtime_error("bad tensor extent in " + path);
        e = static_cast<int>(v);
    }
    Tensor t(shape);
    for (double& v : t.data) v = r.f64();
    return t;
}

void write_label_map(const std::string& path, const LabelMap& m) {
    Writer w(path);
    write_magic(w, 2);
    w.u8(2);
    w.u32(static_cast<std::uint32_t>(m.height));
    w.u32(static_cast<std::uint32_t>(m.width));
    w.bytes(m.values.data(), m.values.size());
    w.close();
}

LabelMap read_label_map(const std::string& path) {
    Reader r(path);
    check_magic(r, 2);
    if (r.u8() != 2) throw std::runtime_error("label map must be rank 2: " + path);
    std::uint32_t h = r.u32();
    std::uint32_t wdt = r.u32();
    if (h == 0 || wdt == 0 || h > (1u << 20) || wdt > (1u << 20))
        throw std::runtime_error("bad label map extent in " + path);
    LabelMap m(static_cast<int>(h), static_cast<int>(wdt));
    r.bytes(m.values.data(), m.values.size());
    return m;
}

void write_bank(const std::string& path, const SampleBank& bank) {
    Writer w(path);
    write_magic(w, 3);
    w.u32(static_cast<std::uint32_t>(bank.class_ids().size()));
    w.u32(static_cast<std::uint32_t>(bank.capacity()));
    w.u32(static_cast<std::uint32_t>(bank.channels()));
    for (int k : bank.class_ids()) {
        const int valid = bank.valid_count(k);
        w.u32(static_cast<std::uint32_t>(k));
        w.u32(static_cast<std::uint32_t>(valid));
        w.u64(bank.counter(k));
        for (int j = 0; j < valid; ++j)
            for (double v : bank.slot(k, j)) w.f64(v);
    }
    w.close();
}

void read_bank(const std::string& path, SampleBank& into) {
    Reader r(path);
    check_magic(r, 3);
    std::uint32_t classes = r.u32();
    std::uint32_t capacity = r.u32();
    std::uint32_t channels = r.u32();
    if (classes != into.class_ids().size() || capacity != static_cast<std::uint32_t>(into.capacity()) ||
        channels != static_cast<std::uint32_t>(into.channels()))
        throw std::runtime_error("bank layout mismatch: " + path);

    into.clear();
    for (int k : into.class_ids()) {
        std::uint32_t id = r.u32();
        std::uint32_t valid = r.u32();
        std::uint64_t counter = r.u64();
        if (id != static_cast<std::uint32_t>(k) || valid > capacity)
            throw std::runtime_error("bank record mismatch: " + path);
        std::vector<FeatureVec> slots(valid);
        for (std::uint32_t j = 0; j < valid; ++j) {
            FeatureVec v(channels);
            for (double& x : v) x = r.f64();
            slots[j] = std::move(v);
        }
        into.restore_class(k, std::move(slots), counter);
    }
}

void write_blobs(const std::string& path, const BlobFile& f) {
    Writer w(path);
    write_magic(w, 4);
    w.u64(f.iteration);
    w.u32(static_cast<std::uint32_t>(f.blobs.size()));
    for (const auto& blob : f.blobs) {
        w.u32(static_cast<std::uint32_t>(blob.size()));
        for (double v : blob) w.f64(v);
    }
    w.close();
}

BlobFile read_blobs(const std::string& path) {
    Reader r(path);
    check_magic(r, 4);
    BlobFile f;
    f.iteration = r.u64();
    std::uint32_t count = r.u32();
    if (count > (1u << 16)) throw std::runtime_error("bad blob count in " + path);
    f.blobs.resize(count);
    for (auto& blob : f.blobs) {
        std::uint32_t n = r.u32();
        if (n > (1u << 26)) throw std::runtime_error("bad blob size in " + path);
        blob.resize(n);
        for (double& v : blob) v = r.f64();
    }
    return f;
}

void write_label_pgm(const std::string& path, const LabelMap& m, int num_classes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << "P5\n" << m.width << " " << m.height << "\n255\n";
    const int scale = num_classes > 1 ? 255 / (num_classes - 1) : 255;
    for (std::uint8_t v : m.values) {
        std::uint8_t g = (v == DONT_CARE) ? 255 : static_cast<std::uint8_t>(v * scale);
        out.put(static_cast<char>(g));
    }
}

std::uint64_t hash_bytes(const void* data, std::size_t n) {
    const std::uint8_t* p = static_cast<const std::uint8_t*>(data);
    std::uint64_t h = 1469598103934665603ull;
    for (std::size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 1099511628211ull;
    }
    return h;
}

std::uint64_t hash_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for hashing: " + path);
    std::uint64_t h = 1469598103934665603ull;
    char buf[4096];
    while (in.read(buf, sizeof buf) || in.gcount() > 0) {
        for (std::streamsize i = 0; i < in.gcount(); ++i) {
            h ^= static_cast<std::uint8_t>(buf[i]);
            h *= 1099511628211ull;
        }
        if (!in) break;
    }
    return h;
}

}  // namespace sim
