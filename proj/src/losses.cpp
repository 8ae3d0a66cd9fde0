#include "sim/losses.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sim/pooling.hpp"

namespace sim {

namespace {

double sign_of(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

void require_score_map(const Tensor& d, const char* what) {
    require_chw(d, 1, what);
    for (double v : d.data)
        if (!(v > 0.0 && v < 1.0))
            throw std::invalid_argument(std::string(what) + ": scores must lie in (0,1)");
}

}  // namespace

LossResult seg_loss(const Tensor& logits, const LabelMap& labels) {
    require_chw(logits, -1, "seg_loss");
    if (logits.shape[1] != labels.height || logits.shape[2] != labels.width)
        throw std::invalid_argument("seg_loss: shape mismatch");
    const int n = logits.shape[0];
    const int hw = logits.shape[1] * logits.shape[2];

    int count = 0;
    for (int p = 0; p < hw; ++p)
        if (labels.values[p] != DONT_CARE) {
            if (labels.values[p] >= n) throw std::invalid_argument("seg_loss: label out of range");
            ++count;
        }

    LossResult res;
    res.grad = Tensor::zeros(logits.shape);
    if (count == 0) {
        res.empty = true;
        return res;
    }

    double total = 0.0;
    for (int p = 0; p < hw; ++p) {
        if (labels.values[p] == DONT_CARE) continue;
        const int y = labels.values[p];
        // log-softmax with max subtraction
        double m = logits.data[p];
        for (int k = 1; k < n; ++k)
            m = std::max(m, logits.data[static_cast<std::size_t>(k) * hw + p]);
        double denom = 0.0;
        for (int k = 0; k < n; ++k)
            denom += std::exp(logits.data[static_cast<std::size_t>(k) * hw + p] - m);
        const double log_denom = std::log(denom);
        total -= logits.data[static_cast<std::size_t>(y) * hw + p] - m - log_denom;
        for (int k = 0; k < n; ++k) {
            const double s =
                std::exp(logits.data[static_cast<std::size_t>(k) * hw + p] - m) / denom;
            res.grad.data[static_cast<std::size_t>(k) * hw + p] =
                (s - (k == y ? 1.0 : 0.0)) / count;
        }
    }
    res.value = total / count;
    return res;
}

LossResult adv_loss(const Tensor& d_out) {
    require_score_map(d_out, "adv_loss");
    const double n = static_cast<double>(d_out.numel());
    LossResult res;
    res.grad = Tensor::zeros(d_out.shape);
    for (std::size_t i = 0; i < d_out.numel(); ++i) {
        res.value -= std::log(1.0 - d_out.data[i]);
        res.grad.data[i] = 1.0 / ((1.0 - d_out.data[i]) * n);
    }
    res.value /= n;
    return res;
}

DiscLossResult disc_loss(const Tensor& d_src, const Tensor& d_tgt) {
    require_score_map(d_src, "disc_loss");
    require_score_map(d_tgt, "disc_loss");
    DiscLossResult res;
    res.grad_src = Tensor::zeros(d_src.shape);
    res.grad_tgt = Tensor::zeros(d_tgt.shape);
    const double ns = static_cast<double>(d_src.numel());
    const double nt = static_cast<double>(d_tgt.numel());
    for (std::size_t i = 0; i < d_tgt.numel(); ++i) {
        res.value -= std::log(d_tgt.data[i]) / nt;
        res.grad_tgt.data[i] = -1.0 / (d_tgt.data[i] * nt);
    }
    for (std::size_t i = 0; i < d_src.numel(); ++i) {
        res.value -= std::log(1.0 - d_src.data[i]) / ns;
        res.grad_src.data[i] = 1.0 / ((1.0 - d_src.data[i]) * ns);
    }
    return res;
}

LossResult stuff_loss(const LabelMap& pred_labels, const Tensor& features, const StuffBank& bank) {
    require_chw(features, -1, "stuff_loss");
    const int c = features.shape[0];
    const int hw = features.shape[1] * features.shape[2];

    LossResult res;
    res.grad = Tensor::zeros(features.shape);
    for (int b : bank.class_ids()) {
        auto pooled = stuff_repr(pred_labels, features, b);
        if (!pooled) continue;
        auto near = bank.nearest(b, pooled->vector);
        if (!near) continue;
        const FeatureVec& s = bank.slot(b, near->first);
        res.value += near->second;

        const double inv = 1.0 / std::max(POOL_EPS, static_cast<double>(pooled->area));
        for (int ch = 0; ch < c; ++ch) {
            const double g = sign_of(pooled->vector[ch] - s[ch]) * inv;
            if (g == 0.0) continue;
            for (int p = 0; p < hw; ++p)
                if (pred_labels.values[p] == b)
                    res.grad.data[static_cast<std::size_t>(ch) * hw + p] += g;
        }
    }
    return res;
}

LossResult instance_loss(const LabelMap& pred_labels, const Tensor& features,
                         const InstanceBank& bank, int cap) {
    require_chw(features, -1, "instance_loss");
    if (cap < 1) throw std::invalid_argument("instance_loss: cap must be >= 1");
    const int c = features.shape[0];
    const int hw = features.shape[1] * features.shape[2];

    LossResult res;
    res.grad = Tensor::zeros(features.shape);
    for (int k : bank.class_ids()) {
        if (bank.valid_count(k) == 0) continue;
        const std::vector<RegionMask> regions = connected_regions(pred_labels, k);
        if (regions.empty()) continue;
        const int kept = std::min(cap, static_cast<int>(regions.size()));

        double class_sum = 0.0;
        for (int i = 0; i < kept; ++i) {
            const RegionMask& r = regions[i];
            PooledFeature pooled = instance_repr(r, features, k);
            auto near = bank.nearest(k, pooled.vector);
            const FeatureVec& s = bank.slot(k, near->first);
            class_sum += near->second;

            const double inv = 1.0 / (std::max(POOL_EPS, static_cast<double>(r.area)) * kept);
            for (int ch = 0; ch < c; ++ch) {
                const double g = sign_of(pooled.vector[ch] - s[ch]) * inv;
                if (g == 0.0) continue;
                for (int p = 0; p < hw; ++p)
                    if (r.mask[p])
                        res.grad.data[static_cast<std::size_t>(ch) * hw + p] += g;
            }
        }
        res.value += class_sum / kept;
    }
    return res;
}

TotalLoss step1_total(const LossParts& parts, const LossWeights& w) {
    TotalLoss t;
    t.generator = w.seg * parts.seg_src + w.adv * parts.adv + w.ci * (parts.stuff + parts.instance);
    t.discriminator = w.disc * parts.disc;
    return t;
}

TotalLoss step2_total(const LossParts& parts, const LossWeights& w) {
    TotalLoss t;
    t.generator = w.seg * (parts.seg_src + parts.seg_tgt) + w.adv * parts.adv +
                  w.ci * (parts.stuff + parts.instance);
    t.discriminator = w.disc * parts.disc;
    return t;
}

}  // namespace sim
