#ifndef SIM_OPTIM_HPP
#define SIM_OPTIM_HPP

#include <cstdint>
#include <vector>

#include "sim/models.hpp"

namespace sim {

// base * (1 - t/T)^power; nonincreasing in t, 0 at t = T.
double poly_lr(double base, long t, long total, double power);

// Nesterov-momentum SGD with weight decay and polynomial learning rate
// decay. `step` requires t < total.
class SgdPoly {
  public:
    SgdPoly() = default;
    SgdPoly(double base_lr, double momentum, double weight_decay, double power)
        : base_lr_(base_lr), momentum_(momentum), weight_decay_(weight_decay), power_(power) {}

    void step(const std::vector<ParamRef>& params, long t, long total);

    double base_lr() const { return base_lr_; }
    std::vector<std::vector<double>>& velocity() { return velocity_; }

  private:
    double base_lr_ = 2.5e-4;
    double momentum_ = 0.9;
    double weight_decay_ = 5e-4;
    double power_ = 0.9;
    std::vector<std::vector<double>> velocity_;
};

// Bias-corrected Adam with the same polynomial decay applied to the base
// learning rate. The schedule is clamped at zero past t = total.
class AdamPoly {
  public:
    AdamPoly() = default;
    AdamPoly(double base_lr, double beta1, double beta2, double eps, double power)
        : base_lr_(base_lr), beta1_(beta1), beta2_(beta2), eps_(eps), power_(power) {}

    void step(const std::vector<ParamRef>& params, long t, long total);

    double base_lr() const { return base_lr_; }
    std::vector<std::vector<double>>& first_moment() { return m_; }
    std::vector<std::vector<double>>& second_moment() { return v_; }
    std::int64_t& steps_taken() { return steps_; }

  private:
    double base_lr_ = 1e-4;
    double beta1_ = 0.9;
    double beta2_ = 0.99;
    double eps_ = 1e-8;
    double power_ = 0.9;
    std::int64_t steps_ = 0;
    std::vector<std::vector<double>> m_;
    std::vector<std::vector<double>> v_;
};

}  // namespace sim

#endif
