// Copyright (c) 2026 miap contributors
// SPDX-License-Identifier: Apache-2.0

#ifndef MIAP_OPTIMIZER_HPP
#define MIAP_OPTIMIZER_HPP

#include <cmath>
#include <cstdint>
#include <vector>

#include "miap/error.hpp"
#include "miap/network.hpp"
#include "miap/tensor.hpp"

namespace miap {

enum class OptimizerKind { SGD, Adam };

struct OptimizerState {
  OptimizerKind kind = OptimizerKind::SGD;
  double learning_rate = 0.01;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  std::uint64_t step_count = 0;
  std::vector<Tensor> first_moment;
  std::vector<Tensor> second_moment;

  static OptimizerState sgd(double lr) {
    OptimizerState s;
    s.kind = OptimizerKind::SGD;
    s.learning_rate = lr;
    return s;
  }

  static OptimizerState adam(double lr, double b1 = 0.9, double b2 = 0.999,
                             double eps = 1e-8) {
    OptimizerState s;
    s.kind = OptimizerKind::Adam;
    s.learning_rate = lr;
    s.beta1 = b1;
    s.beta2 = b2;
    s.epsilon = eps;
    return s;
  }
};

// Flat parameter list of a network: [W0, b0, W1, b1, ...] over Dense layers.
inline std::vector<Tensor*> collect_params(Network& net) {
  std::vector<Tensor*> out;
  for (Layer& l : net.layers) {
    if (l.kind != LayerKind::Dense) continue;
    out.push_back(&l.weights);
    out.push_back(&l.bias);
  }
  return out;
}

// Gradient list in the same order as collect_params.
inline std::vector<const Tensor*> collect_grads(const Network& net,
                                                const Grads& grads) {
  std::vector<const Tensor*> out;
  for (std::size_t li = 0; li < net.layers.size(); ++li) {
    if (net.layers[li].kind != LayerKind::Dense) continue;
    out.push_back(&grads.weight_grads[li]);
    out.push_back(&grads.bias_grads[li]);
  }
  return out;
}

// One optimizer step over a parameter list. SGD: p ← p − lr·g. Adam follows
// the standard bias-corrected update. Non-finite gradients are rejected
// before any parameter is touched.
inline void optimizer_step(OptimizerState& opt,
                           const std::vector<Tensor*>& params,
                           const std::vector<const Tensor*>& grads) {
  if (opt.learning_rate <= 0.0) {
    throw ConfigError("learning rate must be positive");
  }
  if (params.size() != grads.size()) {
    throw DimensionError("parameter and gradient lists differ in length");
  }
  for (std::size_t i = 0; i < params.size(); ++i) {
    check_same_shape(*params[i], *grads[i], "optimizer step");
    if (!grads[i]->all_finite()) {
      throw NumericError("non-finite gradient in optimizer step");
    }
  }

  if (opt.kind == OptimizerKind::SGD) {
    ++opt.step_count;
    for (std::size_t i = 0; i < params.size(); ++i) {
      axpy(*params[i], -opt.learning_rate, *grads[i]);
    }
    return;
  }

  if (opt.first_moment.empty()) {
    opt.first_moment.reserve(params.size());
    opt.second_moment.reserve(params.size());
    for (const Tensor* p : params) {
      opt.first_moment.emplace_back(p->shape());
      opt.second_moment.emplace_back(p->shape());
    }
  }
  if (opt.first_moment.size() != params.size()) {
    throw StateError("optimizer state does not match parameter list");
  }

  ++opt.step_count;
  const double t = static_cast<double>(opt.step_count);
  const double bc1 = 1.0 - std::pow(opt.beta1, t);
  const double bc2 = 1.0 - std::pow(opt.beta2, t);
  for (std::size_t i = 0; i < params.size(); ++i) {
    Tensor& p = *params[i];
    const Tensor& g = *grads[i];
    Tensor& m = opt.first_moment[i];
    Tensor& v = opt.second_moment[i];
    check_same_shape(p, m, "optimizer moment");
    for (std::size_t j = 0; j < p.size(); ++j) {
      m[j] = opt.beta1 * m[j] + (1.0 - opt.beta1) * g[j];
      v[j] = opt.beta2 * v[j] + (1.0 - opt.beta2) * g[j] * g[j];
      const double mhat = m[j] / bc1;
      const double vhat = v[j] / bc2;
      p[j] -= opt.learning_rate * mhat / (std::sqrt(vhat) + opt.epsilon);
    }
  }
}

}  // namespace miap

#endif  // MIAP_OPTIMIZER_HPP
