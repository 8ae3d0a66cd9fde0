#include "sim/models.hpp"

#include <cmath>
#include <stdexcept>

#include "sim/rng.hpp"

namespace sim {

Conv2d::Conv2d(int in_ch, int out_ch, int ksize, int stride, int pad)
    : weight(Tensor({out_ch, in_ch, ksize, ksize})),
      bias(Tensor({out_ch})),
      gweight(Tensor({out_ch, in_ch, ksize, ksize})),
      gbias(Tensor({out_ch})),
      in_ch_(in_ch),
      out_ch_(out_ch),
      k_(ksize),
      stride_(stride),
      pad_(pad) {}

Tensor Conv2d::forward(const Tensor& x, Tensor& cache) const {
    require_chw(x, in_ch_, "Conv2d");
    const int H = x.shape[1], W = x.shape[2];
    const int OH = (H + 2 * pad_ - k_) / stride_ + 1;
    const int OW = (W + 2 * pad_ - k_) / stride_ + 1;
    if (OH < 1 || OW < 1) throw std::invalid_argument("Conv2d: input too small");

    Tensor y({out_ch_, OH, OW});
    for (int o = 0; o < out_ch_; ++o) {
        for (int oh = 0; oh < OH; ++oh) {
            for (int ow = 0; ow < OW; ++ow) {
                double acc = bias.data[o];
                for (int i = 0; i < in_ch_; ++i) {
                    for (int kh = 0; kh < k_; ++kh) {
                        const int ih = oh * stride_ - pad_ + kh;
                        if (ih < 0 || ih >= H) continue;
                        for (int kw = 0; kw < k_; ++kw) {
                            const int iw = ow * stride_ - pad_ + kw;
                            if (iw < 0 || iw >= W) continue;
                            acc += weight.data[((static_cast<std::size_t>(o) * in_ch_ + i) * k_ + kh) * k_ + kw] *
                                   x.at(i, ih, iw);
                        }
                    }
                }
                y.at(o, oh, ow) = acc;
            }
        }
    }
    cache = x;
    return y;
}

Tensor Conv2d::backward(const Tensor& cache, const Tensor& gy, bool accumulate_params) {
    const Tensor& x = cache;
    const int H = x.shape[1], W = x.shape[2];
    const int OH = gy.shape[1], OW = gy.shape[2];

    Tensor gx(x.shape);
    for (int o = 0; o < out_ch_; ++o) {
        for (int oh = 0; oh < OH; ++oh) {
            for (int ow = 0; ow < OW; ++ow) {
                const double g = gy.at(o, oh, ow);
                if (accumulate_params) gbias.data[o] += g;
                for (int i = 0; i < in_ch_; ++i) {
                    for (int kh = 0; kh < k_; ++kh) {
                        const int ih = oh * stride_ - pad_ + kh;
                        if (ih < 0 || ih >= H) continue;
                        for (int kw = 0; kw < k_; ++kw) {
                            const int iw = ow * stride_ - pad_ + kw;
                            if (iw < 0 || iw >= W) continue;
                            const std::size_t wi =
                                ((static_cast<std::size_t>(o) * in_ch_ + i) * k_ + kh) * k_ + kw;
                            gx.at(i, ih, iw) += weight.data[wi] * g;
                            if (accumulate_params) gweight.data[wi] += x.at(i, ih, iw) * g;
                        }
                    }
                }
            }
        }
    }
    return gx;
}

void Conv2d::collect_params(std::vector<ParamRef>& out) {
    out.push_back({weight.data.data(), gweight.data.data(), weight.numel()});
    out.push_back({bias.data.data(), gbias.data.data(), bias.numel()});
}

void Conv2d::zero_grad() {
    std::fill(gweight.data.begin(), gweight.data.end(), 0.0);
    std::fill(gbias.data.begin(), gbias.data.end(), 0.0);
}

Tensor Relu::forward(const Tensor& x, Tensor& cache) const {
    Tensor y = x;
    for (double& v : y.data) v = v > 0.0 ? v : 0.0;
    cache = x;
    return y;
}

Tensor Relu::backward(const Tensor& cache, const Tensor& gy, bool) {
    Tensor gx = gy;
    for (std::size_t i = 0; i < gx.numel(); ++i)
        if (cache.data[i] <= 0.0) gx.data[i] = 0.0;
    return gx;
}

Tensor LeakyRelu::forward(const Tensor& x, Tensor& cache) const {
    Tensor y = x;
    for (double& v : y.data) v = v > 0.0 ? v : slope_ * v;
    cache = x;
    return y;
}

Tensor LeakyRelu::backward(const Tensor& cache, const Tensor& gy, bool) {
    Tensor gx = gy;
    for (std::size_t i = 0; i < gx.numel(); ++i)
        if (cache.data[i] <= 0.0) gx.data[i] *= slope_;
    return gx;
}

Tensor Sigmoid::forward(const Tensor& x, Tensor& cache) const {
    Tensor y = x;
    for (double& v : y.data) v = 1.0 / (1.0 + std::exp(-v));
    cache = y;  // output is what backward needs
    return y;
}

Tensor Sigmoid::backward(const Tensor& cache, const Tensor& gy, bool) {
    Tensor gx = gy;
    for (std::size_t i = 0; i < gx.numel(); ++i)
        gx.data[i] *= cache.data[i] * (1.0 - cache.data[i]);
    return gx;
}

Tensor Net::forward(const Tensor& x, NetCache& cache) const {
    cache.layers.assign(layers_.size(), Tensor{});
    Tensor cur = x;
    for (std::size_t i = 0; i < layers_.size(); ++i) cur = layers_[i]->forward(cur, cache.layers[i]);
    cache.valid = true;
    return cur;
}

Tensor Net::backward(const NetCache& cache, const Tensor& gy, bool accumulate_params) {
    if (!cache.valid || cache.layers.size() != layers_.size())
        throw std::invalid_argument("Net::backward: no cached forward pass");
    Tensor cur = gy;
    for (std::size_t i = layers_.size(); i-- > 0;)
        cur = layers_[i]->backward(cache.layers[i], cur, accumulate_params);
    return cur;
}

std::vector<ParamRef> Net::params() {
    std::vector<ParamRef> out;
    for (auto& l : layers_) l->collect_params(out);
    return out;
}

void Net::zero_grad() {
    for (auto& l : layers_) l->zero_grad();
}

std::size_t Net::param_count() {
    std::size_t n = 0;
    for (const ParamRef& p : params()) n += p.size;
    return n;
}

namespace {

// Kaiming-style fan-in scaling, fixed stream per layer.
void init_conv(Conv2d& conv, Rng& rng) {
    const int fan_in = conv.weight.shape[1] * conv.weight.shape[2] * conv.weight.shape[3];
    const double stddev = std::sqrt(2.0 / fan_in);
    for (double& v : conv.weight.data) v = rng.normal(0.0, stddev);
    std::fill(conv.bias.data.begin(), conv.bias.data.end(), 0.0);
}

std::unique_ptr<Conv2d> conv_layer(int in_ch, int out_ch, int k, int stride, int pad, Rng& rng) {
    auto c = std::make_unique<Conv2d>(in_ch, out_ch, k, stride, pad);
    init_conv(*c, rng);
    return c;
}

}  // namespace

Net make_extractor(int in_channels, int channels, std::uint64_t seed) {
    Rng rng(mix_seed(seed, 0x0f));
    Net net;
    net.add(conv_layer(in_channels, channels, 3, 1, 1, rng));
    net.add(std::make_unique<Relu>());
    net.add(conv_layer(channels, channels, 3, 1, 1, rng));
    net.add(std::make_unique<Relu>());
    return net;
}

Net make_head(int channels, int num_classes, std::uint64_t seed) {
    Rng rng(mix_seed(seed, 0x0c));
    Net net;
    net.add(conv_layer(channels, num_classes, 1, 1, 0, rng));
    return net;
}

Net make_discriminator(int num_classes, std::uint64_t seed) {
    Rng rng(mix_seed(seed, 0x0d));
    Net net;
    net.add(conv_layer(num_classes, 16, 4, 2, 1, rng));
    net.add(std::make_unique<LeakyRelu>(0.2));
    net.add(conv_layer(16, 32, 4, 2, 1, rng));
    net.add(std::make_unique<LeakyRelu>(0.2));
    net.add(conv_layer(32, 1, 4, 2, 1, rng));
    net.add(std::make_unique<Sigmoid>());
    return net;
}

Tensor extractor_forward(const Net& extractor, const Tensor& image, NetCache& cache) {
    require_chw(image, -1, "extractor_forward");
    if (image.shape[1] < 8 || image.shape[2] < 8)
        throw std::invalid_argument("extractor_forward: spatial extent must be >= 8");
    if (!image.all_finite()) throw std::invalid_argument("extractor_forward: non-finite input");
    return extractor.forward(image, cache);
}

Tensor head_forward(const Net& head, const Tensor& features, NetCache& cache) {
    require_chw(features, -1, "head_forward");
    return head.forward(features, cache);
}

Tensor discriminator_forward(const Net& disc, const Tensor& softmax_map, NetCache& cache) {
    require_chw(softmax_map, -1, "discriminator_forward");
    const int n = softmax_map.shape[0];
    const int hw = softmax_map.shape[1] * softmax_map.shape[2];
    for (int p = 0; p < hw; ++p) {
        double sum = 0.0;
        for (int k = 0; k < n; ++k) {
            const double v = softmax_map.data[static_cast<std::size_t>(k) * hw + p];
            if (v < 0.0 || v > 1.0)
                throw std::invalid_argument("discriminator_forward: input not a softmax map");
            sum += v;
        }
        if (std::abs(sum - 1.0) > 1e-6)
            throw std::invalid_argument("discriminator_forward: input not normalized per pixel");
    }
    return disc.forward(softmax_map, cache);
}

Tensor softmax_channel_backward(const Tensor& softmax_out, const Tensor& gy) {
    if (!softmax_out.same_shape(gy))
        throw std::invalid_argument("softmax_channel_backward: shape mismatch");
    const int n = softmax_out.shape[0];
    const int hw = softmax_out.shape[1] * softmax_out.shape[2];
    Tensor gx(softmax_out.shape);
    for (int p = 0; p < hw; ++p) {
        double dot = 0.0;
        for (int k = 0; k < n; ++k) {
            const std::size_t i = static_cast<std::size_t>(k) * hw + p;
            dot += gy.data[i] * softmax_out.data[i];
        }
        for (int k = 0; k < n; ++k) {
            const std::size_t i = static_cast<std::size_t>(k) * hw + p;
            gx.data[i] = softmax_out.data[i] * (gy.data[i] - dot);
        }
    }
    return gx;
}

Models Models::init(const ModelDims& dims, std::uint64_t seed) {
    Models m;
    m.extractor = make_extractor(dims.image_channels, dims.feature_channels, seed);
    m.head = make_head(dims.feature_channels, dims.num_classes, seed);
    m.discriminator = make_discriminator(dims.num_classes, seed);
    return m;
}

std::vector<ParamRef> Models::generator_params() {
    std::vector<ParamRef> out = extractor.params();
    for (ParamRef p : head.params()) out.push_back(p);
    return out;
}

std::vector<ParamRef> Models::discriminator_params() { return discriminator.params(); }

void Models::zero_grad() {
    extractor.zero_grad();
    head.zero_grad();
    discriminator.zero_grad();
}

}  // namespace sim
