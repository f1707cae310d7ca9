// Copyright (c) 2026 miap contributors
// SPDX-License-Identifier: Apache-2.0
//
// Central-difference gradient oracle used by the gradient tests. Kept
// independent of the analytic backward path: it only calls forward-mode
// evaluation through the supplied loss functor.

#ifndef MIAP_TESTS_FINITE_DIFFERENCE_HPP
#define MIAP_TESTS_FINITE_DIFFERENCE_HPP

#include <functional>
#include <vector>

#include "miap/network.hpp"
#include "miap/optimizer.hpp"

namespace miap::testing {

struct FdGrads {
  std::vector<Tensor> grads;  // aligned with collect_params order
};

// loss(net) must be a deterministic pure function of the parameters.
inline FdGrads finite_difference_grads(
    Network& net, const std::function<double(const Network&)>& loss,
    double h = 1e-6) {
  FdGrads out;
  auto params = collect_params(net);
  for (Tensor* p : params) {
    Tensor g(p->shape());
    for (std::size_t i = 0; i < p->size(); ++i) {
      const double saved = (*p)[i];
      (*p)[i] = saved + h;
      const double up = loss(net);
      (*p)[i] = saved - h;
      const double down = loss(net);
      (*p)[i] = saved;
      g[i] = (up - down) / (2.0 * h);
    }
    out.grads.push_back(std::move(g));
  }
  return out;
}

// Relative error with a floor: entries where both gradients are ~0 compare
// equal.
inline double grad_rel_error(const Tensor& a, const Tensor& b,
                             double floor = 1e-8) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double denom = std::max({std::abs(a[i]), std::abs(b[i]), floor});
    if (std::abs(a[i]) < floor && std::abs(b[i]) < floor) continue;
    worst = std::max(worst, std::abs(a[i] - b[i]) / denom);
  }
  return worst;
}

}  // namespace miap::testing

#endif  // MIAP_TESTS_FINITE_DIFFERENCE_HPP
