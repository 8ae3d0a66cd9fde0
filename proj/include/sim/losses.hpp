#ifndef SIM_LOSSES_HPP
#define SIM_LOSSES_HPP

#include "sim/bank.hpp"
#include "sim/label_map.hpp"
#include "sim/tensor.hpp"

namespace sim {

struct LossResult {
    double value = 0.0;
    Tensor grad;         // w.r.t. the differentiable input
    bool empty = false;  // no pixel contributed (e.g. labels all DONT_CARE)
};

// Discriminator objective differentiates w.r.t. both score maps.
struct DiscLossResult {
    double value = 0.0;
    Tensor grad_src;
    Tensor grad_tgt;
};

struct LossWeights {
    double seg = 1.0;
    double adv = 0.001;
    double ci = 0.01;
    double disc = 1.0;
};

// Pixel-mean cross entropy over non-DONT_CARE pixels; gradient w.r.t.
// logits is (softmax - onehot) / count at contributing pixels.
LossResult seg_loss(const Tensor& logits, const LabelMap& labels);

// Generator-side adversarial term on target-domain discriminator scores:
// mean of -log(1 - d). Scores must lie strictly in (0,1).
LossResult adv_loss(const Tensor& d_out);

// Discriminator term: mean of -log(d_tgt) plus mean of -log(1 - d_src),
// i.e. the discriminator learns to score target maps 1 and source maps 0.
DiscLossResult disc_loss(const Tensor& d_src, const Tensor& d_tgt);

// Sum over stuff classes present in the label map of the L1 distance from
// the pooled class feature to its nearest bank sample. Gradients treat the
// pooling weights as constants: sign(pooled - nearest) spread uniformly
// over the contributing pixels. Classes with empty banks contribute zero.
LossResult stuff_loss(const LabelMap& pred_labels, const Tensor& features, const StuffBank& bank);

// Per thing class: extract connected regions of the label map, keep the
// `cap` largest, and average the nearest-bank-sample L1 distance over the
// kept regions; summed over classes.
LossResult instance_loss(const LabelMap& pred_labels, const Tensor& features,
                         const InstanceBank& bank, int cap = 10);

struct LossParts {
    double seg_src = 0.0;
    double seg_tgt = 0.0;
    double adv = 0.0;
    double disc = 0.0;
    double stuff = 0.0;
    double instance = 0.0;
};

// Generator total for the two training steps; the discriminator term is
// optimized by its own optimizer and reported separately.
struct TotalLoss {
    double generator = 0.0;
    double discriminator = 0.0;
};

TotalLoss step1_total(const LossParts& parts, const LossWeights& w);
TotalLoss step2_total(const LossParts& parts, const LossWeights& w);

}  // namespace sim

#endif
