#include "sim/optim.hpp"

#include <cmath>
#include <stdexcept>

namespace sim {

double poly_lr(double base, long t, long total, double power) {
    if (total <= 0) throw std::invalid_argument("poly_lr: total iterations must be positive");
    const double frac = 1.0 - static_cast<double>(t) / static_cast<double>(total);
    if (frac <= 0.0) return 0.0;
    return base * std::pow(frac, power);
}

void SgdPoly::step(const std::vector<ParamRef>& params, long t, long total) {
    if (t >= total) throw std::invalid_argument("SgdPoly::step: t must be < total");
    if (velocity_.empty()) {
        velocity_.reserve(params.size());
        for (const ParamRef& p : params) velocity_.emplace_back(p.size, 0.0);
    }
    if (velocity_.size() != params.size())
        throw std::invalid_argument("SgdPoly::step: parameter set changed");

    const double lr = poly_lr(base_lr_, t, total, power_);
    for (std::size_t i = 0; i < params.size(); ++i) {
        const ParamRef& p = params[i];
        std::vector<double>& vel = velocity_[i];
        for (std::size_t j = 0; j < p.size; ++j) {
            const double g = p.grad[j] + weight_decay_ * p.value[j];
            vel[j] = momentum_ * vel[j] + g;
            p.value[j] -= lr * (g + momentum_ * vel[j]);
        }
    }
}

void AdamPoly::step(const std::vector<ParamRef>& params, long t, long total) {
    if (m_.empty()) {
        m_.reserve(params.size());
        v_.reserve(params.size());
        for (const ParamRef& p : params) {
            m_.emplace_back(p.size, 0.0);
            v_.emplace_back(p.size, 0.0);
        }
    }
    if (m_.size() != params.size())
        throw std::invalid_argument("AdamPoly::step: parameter set changed");

    steps_ += 1;
    const double lr = poly_lr(base_lr_, std::min(t, total), total, power_);
    const double bc1 = 1.0 - std::pow(beta1_, static_cast<double>(steps_));
    const double bc2 = 1.0 - std::pow(beta2_, static_cast<double>(steps_));
    for (std::size_t i = 0; i < params.size(); ++i) {
        const ParamRef& p = params[i];
        std::vector<double>& m = m_[i];
        std::vector<double>& v = v_[i];
        for (std::size_t j = 0; j < p.size; ++j) {
            const double g = p.grad[j];
            m[j] = beta1_ * m[j] + (1.0 - beta1_) * g;
            v[j] = beta2_ * v[j] + (1.0 - beta2_) * g * g;
            const double mhat = m[j] / bc1;
            const double vhat = v[j] / bc2;
            p.value[j] -= lr * mhat / (std::sqrt(vhat) + eps_);
        }
    }
}

}  // namespace sim
