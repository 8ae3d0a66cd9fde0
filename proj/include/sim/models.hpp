#ifndef SIM_MODELS_HPP
#define SIM_MODELS_HPP

#include <cstdint>
#include <memory>
#include <vector>

#include "sim/tensor.hpp"

namespace sim {

// Flat view of one parameter array and its gradient accumulator.
struct ParamRef {
    double* value = nullptr;
    double* grad = nullptr;
    std::size_t size = 0;
};

class Layer {
  public:
    virtual ~Layer() = default;
    // `cache` receives whatever backward needs (typically the input).
    virtual Tensor forward(const Tensor& x, Tensor& cache) const = 0;
    // Returns the input gradient; accumulates parameter gradients when asked.
    virtual Tensor backward(const Tensor& cache, const Tensor& gy, bool accumulate_params) = 0;
    virtual void collect_params(std::vector<ParamRef>&) {}
    virtual void zero_grad() {}
};

class Conv2d : public Layer {
  public:
    Conv2d(int in_ch, int out_ch, int ksize, int stride, int pad);

    Tensor forward(const Tensor& x, Tensor& cache) const override;
    Tensor backward(const Tensor& cache, const Tensor& gy, bool accumulate_params) override;
    void collect_params(std::vector<ParamRef>& out) override;
    void zero_grad() override;

    Tensor weight;  // [out, in, k, k]
    Tensor bias;    // [out]
    Tensor gweight;
    Tensor gbias;

  private:
    int in_ch_, out_ch_, k_, stride_, pad_;
};

class Relu : public Layer {
  public:
    Tensor forward(const Tensor& x, Tensor& cache) const override;
    Tensor backward(const Tensor& cache, const Tensor& gy, bool) override;
};

class LeakyRelu : public Layer {
  public:
    explicit LeakyRelu(double slope) : slope_(slope) {}
    Tensor forward(const Tensor& x, Tensor& cache) const override;
    Tensor backward(const Tensor& cache, const Tensor& gy, bool) override;

  private:
    double slope_;
};

class Sigmoid : public Layer {
  public:
    Tensor forward(const Tensor& x, Tensor& cache) const override;
    Tensor backward(const Tensor& cache, const Tensor& gy, bool) override;
};

// Per-layer activation caches from one forward pass. Caches are explicit so
// several passes (source batch, target batch) can coexist.
struct NetCache {
    std::vector<Tensor> layers;
    bool valid = false;
};

// An ordered layer stack with reverse-mode backward.
class Net {
  public:
    Net() = default;
    Net(Net&&) = default;
    Net& operator=(Net&&) = default;

    void add(std::unique_ptr<Layer> layer) { layers_.push_back(std::move(layer)); }

    Tensor forward(const Tensor& x, NetCache& cache) const;
    // Exact reverse-mode gradient through the stack. Throws if `cache` does
    // not hold a forward pass.
    Tensor backward(const NetCache& cache, const Tensor& gy, bool accumulate_params = true);

    std::vector<ParamRef> params();
    void zero_grad();
    std::size_t param_count();

  private:
    std::vector<std::unique_ptr<Layer>> layers_;
};

// Feature extractor F: two 3x3 same-padding convs with ReLU, spatial extent
// preserved. Input [3,H,W] with H,W >= 8; output [channels,H,W].
Net make_extractor(int in_channels, int channels, std::uint64_t seed);

// Classifier head C: 1x1 conv from feature channels to class logits.
Net make_head(int channels, int num_classes, std::uint64_t seed);

// Discriminator D on softmax maps: three 4x4 stride-2 convs with channels
// {16, 32, 1}, leaky ReLU slope 0.2 between, sigmoid output in (0,1).
Net make_discriminator(int num_classes, std::uint64_t seed);

// Contract-checking forwards for the three roles.
Tensor extractor_forward(const Net& extractor, const Tensor& image, NetCache& cache);
Tensor head_forward(const Net& head, const Tensor& features, NetCache& cache);
Tensor discriminator_forward(const Net& disc, const Tensor& softmax_map, NetCache& cache);

// Gradient of softmax_channel: given s = softmax(x) and an upstream grad on
// s, returns the grad on x.
Tensor softmax_channel_backward(const Tensor& softmax_out, const Tensor& gy);

struct ModelDims {
    int image_channels = 3;
    int feature_channels = 16;
    int num_classes = 6;
};

// The full toy stack: generator G = head(extractor(.)) plus discriminator.
struct Models {
    Net extractor;
    Net head;
    Net discriminator;

    static Models init(const ModelDims& dims, std::uint64_t seed);

    std::vector<ParamRef> generator_params();
    std::vector<ParamRef> discriminator_params();
    void zero_grad();
};

}  // namespace sim

#endif
