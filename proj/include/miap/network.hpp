// Copyright (c) 2026 miap contributors
// SPDX-License-Identifier: Apache-2.0

#ifndef MIAP_NETWORK_HPP
#define MIAP_NETWORK_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "miap/error.hpp"
#include "miap/rng.hpp"
#include "miap/tensor.hpp"

namespace miap {

enum class LayerKind { Dense, Relu, Softmax };

// A Dense layer's effective weight is always W ⊙ mask. Masks start at all
// ones and are rewritten by hard pruning; pruned entries must stay exactly
// zero through any later update.
struct Layer {
  LayerKind kind = LayerKind::Relu;
  Tensor weights;  // out × in (Dense only)
  Tensor bias;     // out (Dense only)
  Tensor mask;     // out × in, entries in {0,1} (Dense only)

  std::size_t fan_in() const { return weights.cols(); }
  std::size_t fan_out() const { return weights.rows(); }
};

inline Layer make_dense(std::size_t in, std::size_t out) {
  Layer l;
  l.kind = LayerKind::Dense;
  l.weights = Tensor({out, in});
  l.bias = Tensor({out});
  l.mask = Tensor::full({out, in}, 1.0);
  return l;
}

inline Layer make_relu() {
  Layer l;
  l.kind = LayerKind::Relu;
  return l;
}

inline Layer make_softmax() {
  Layer l;
  l.kind = LayerKind::Softmax;
  return l;
}

struct Network {
  std::vector<Layer> layers;
  std::size_t input_dim = 0;
  std::size_t output_dim = 0;

  std::size_t dense_layer_count() const {
    std::size_t n = 0;
    for (const auto& l : layers) n += (l.kind == LayerKind::Dense);
    return n;
  }

  std::vector<std::size_t> dense_layer_indices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < layers.size(); ++i) {
      if (layers[i].kind == LayerKind::Dense) out.push_back(i);
    }
    return out;
  }
};

enum class WeightInit { HeUniform, Normal };

enum class FinalActivation { Softmax, Relu, None };

// Builds a dense multilayer perceptron: Dense layers over `dims` with ReLU
// between them and the requested final activation. Weight init is either
// fan-in-scaled uniform or N(0, sigma).
inline Network make_mlp(const std::vector<std::size_t>& dims,
                        FinalActivation final_act, Rng& rng,
                        WeightInit init = WeightInit::HeUniform,
                        double init_sigma = 0.01) {
  if (dims.size() < 2) throw ConfigError("mlp needs at least two dims");
  Network net;
  net.input_dim = dims.front();
  net.output_dim = dims.back();
  for (std::size_t i = 0; i + 1 < dims.size(); ++i) {
    Layer l = make_dense(dims[i], dims[i + 1]);
    if (init == WeightInit::HeUniform) {
      const double limit = std::sqrt(6.0 / static_cast<double>(dims[i]));
      for (std::size_t j = 0; j < l.weights.size(); ++j) {
        l.weights[j] = rng.uniform(-limit, limit);
      }
    } else {
      for (std::size_t j = 0; j < l.weights.size(); ++j) {
        l.weights[j] = rng.normal(0.0, init_sigma);
      }
    }
    net.layers.push_back(std::move(l));
    const bool last = (i + 2 == dims.size());
    if (!last) {
      net.layers.push_back(make_relu());
    }
  }
  switch (final_act) {
    case FinalActivation::Softmax:
      net.layers.push_back(make_softmax());
      break;
    case FinalActivation::Relu:
      net.layers.push_back(make_relu());
      break;
    case FinalActivation::None:
      break;
  }
  return net;
}

namespace detail {

inline void dense_forward(const Layer& l, const Tensor& x, Tensor& y) {
  const std::size_t n = x.rows(), in = x.cols(), out = l.fan_out();
  if (in != l.fan_in()) {
    throw DimensionError("dense layer expects input dim " +
                         std::to_string(l.fan_in()) + ", got " +
                         std::to_string(in));
  }
  y = Tensor({n, out});
  for (std::size_t r = 0; r < n; ++r) {
    const double* xr = x.data() + r * in;
    double* yr = y.data() + r * out;
    for (std::size_t o = 0; o < out; ++o) {
      const double* w = l.weights.data() + o * in;
      const double* m = l.mask.data() + o * in;
      double acc = l.bias[o];
      for (std::size_t i = 0; i < in; ++i) acc += xr[i] * (w[i] * m[i]);
      yr[o] = acc;
    }
  }
}

inline void relu_forward(const Tensor& x, Tensor& y) {
  y = x;
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = std::max(0.0, y[i]);
}

inline void softmax_forward(const Tensor& x, Tensor& y) {
  const std::size_t n = x.rows(), k = x.cols();
  y = Tensor({n, k});
  for (std::size_t r = 0; r < n; ++r) {
    const double* xr = x.data() + r * k;
    double* yr = y.data() + r * k;
    double mx = xr[0];
    for (std::size_t j = 1; j < k; ++j) mx = std::max(mx, xr[j]);
    double sum = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      yr[j] = std::exp(xr[j] - mx);
      sum += yr[j];
    }
    for (std::size_t j = 0; j < k; ++j) yr[j] /= sum;
  }
}

}  // namespace detail

// Per-layer activations from one forward pass. acts[0] is the input batch,
// acts[i+1] the output of layer i.
struct ForwardCache {
  std::vector<Tensor> acts;

  const Tensor& output() const {
    if (acts.empty()) throw StateError("forward cache is empty");
    return acts.back();
  }
};

inline void check_batch_input(const Network& net, const Tensor& x) {
  if (x.size() == 0) throw DataError("empty batch");
  if (x.rank() != 2) throw DimensionError("batch must be rank 2");
  if (x.cols() != net.input_dim) {
    throw DimensionError("batch has " + std::to_string(x.cols()) +
                         " columns, network expects " +
                         std::to_string(net.input_dim));
  }
}

inline ForwardCache forward_cached(const Network& net, const Tensor& x) {
  check_batch_input(net, x);
  ForwardCache cache;
  cache.acts.reserve(net.layers.size() + 1);
  cache.acts.push_back(x);
  for (const Layer& l : net.layers) {
    Tensor y;
    switch (l.kind) {
      case LayerKind::Dense:
        detail::dense_forward(l, cache.acts.back(), y);
        break;
      case LayerKind::Relu:
        detail::relu_forward(cache.acts.back(), y);
        break;
      case LayerKind::Softmax:
        detail::softmax_forward(cache.acts.back(), y);
        break;
    }
    cache.acts.push_back(std::move(y));
  }
  return cache;
}

inline Tensor forward(const Network& net, const Tensor& x) {
  return forward_cached(net, x).output();
}

// Parameter gradients; entries align with net.layers (empty tensors for
// parameterless layers).
struct Grads {
  std::vector<Tensor> weight_grads;
  std::vector<Tensor> bias_grads;
  Tensor input_grad;
};

namespace detail {

inline void dense_backward(const Layer& l, const Tensor& x, const Tensor& gy,
                           Tensor& gw, Tensor& gb, Tensor& gx) {
  const std::size_t n = x.rows(), in = x.cols(), out = l.fan_out();
  gw = Tensor({out, in});
  gb = Tensor({out});
  gx = Tensor({n, in});
  for (std::size_t o = 0; o < out; ++o) {
    double* gwo = gw.data() + o * in;
    double acc_b = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      const double g = gy[r * out + o];
      acc_b += g;
      const double* xr = x.data() + r * in;
      for (std::size_t i = 0; i < in; ++i) gwo[i] += g * xr[i];
    }
    gb[o] = acc_b;
  }
  for (std::size_t r = 0; r < n; ++r) {
    double* gxr = gx.data() + r * in;
    const double* gyr = gy.data() + r * out;
    for (std::size_t o = 0; o < out; ++o) {
      const double g = gyr[o];
      const double* w = l.weights.data() + o * in;
      const double* m = l.mask.data() + o * in;
      for (std::size_t i = 0; i < in; ++i) gxr[i] += g * (w[i] * m[i]);
    }
  }
}

inline void relu_backward(const Tensor& x, const Tensor& gy, Tensor& gx) {
  gx = gy;
  for (std::size_t i = 0; i < gx.size(); ++i) {
    if (x[i] <= 0.0) gx[i] = 0.0;
  }
}

// VJP through softmax: gx_j = p_j (g_j − Σ_k g_k p_k), rowwise.
inline void softmax_backward(const Tensor& probs, const Tensor& gy,
                             Tensor& gx) {
  const std::size_t n = probs.rows(), k = probs.cols();
  gx = Tensor({n, k});
  for (std::size_t r = 0; r < n; ++r) {
    const double* p = probs.data() + r * k;
    const double* g = gy.data() + r * k;
    double dot = 0.0;
    for (std::size_t j = 0; j < k; ++j) dot += g[j] * p[j];
    double* gr = gx.data() + r * k;
    for (std::size_t j = 0; j < k; ++j) gr[j] = p[j] * (g[j] - dot);
  }
}

}  // namespace detail

inline void check_cache(const Network& net, const ForwardCache& cache) {
  if (cache.acts.size() != net.layers.size() + 1) {
    throw StateError("forward cache does not match network");
  }
}

// Backpropagates an arbitrary gradient on the network output down to every
// parameter and to the input batch.
inline Grads backward(const Network& net, const ForwardCache& cache,
                      const Tensor& output_grad) {
  check_cache(net, cache);
  check_same_shape(output_grad, cache.acts.back(), "backward output grad");
  Grads grads;
  grads.weight_grads.resize(net.layers.size());
  grads.bias_grads.resize(net.layers.size());
  Tensor g = output_grad;
  for (std::size_t li = net.layers.size(); li-- > 0;) {
    const Layer& l = net.layers[li];
    const Tensor& x = cache.acts[li];
    Tensor gx;
    switch (l.kind) {
      case LayerKind::Dense:
        detail::dense_backward(l, x, g, grads.weight_grads[li],
                               grads.bias_grads[li], gx);
        break;
      case LayerKind::Relu:
        detail::relu_backward(x, g, gx);
        break;
      case LayerKind::Softmax:
        detail::softmax_backward(cache.acts[li + 1], g, gx);
        break;
    }
    g = std::move(gx);
  }
  grads.input_grad = std::move(g);
  return grads;
}

constexpr double kProbClamp = 1e-12;

// Mean negative log-likelihood of the true class. Probabilities are clamped
// at 1e-12 before the log.
inline double cross_entropy(const Tensor& probs,
                            const std::vector<int>& labels) {
  if (probs.size() == 0) throw DataError("empty batch");
  const std::size_t n = probs.rows(), k = probs.cols();
  if (labels.size() != n) {
    throw DimensionError("labels length does not match batch");
  }
  double loss = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    const int y = labels[r];
    if (y < 0 || static_cast<std::size_t>(y) >= k) {
      throw IndexError("label " + std::to_string(y) + " out of range [0," +
                       std::to_string(k) + ")");
    }
    loss -= std::log(std::max(probs.at(r, static_cast<std::size_t>(y)),
                              kProbClamp));
  }
  return loss / static_cast<double>(n);
}

// Gradients of mean cross-entropy (plus an optional extra gradient on the
// output probabilities) for a softmax-topped classifier. The CE path is
// fused at the logits as (p − y)/n; the extra term goes through the softmax
// Jacobian.
inline Grads classifier_backward(const Network& net, const ForwardCache& cache,
                                 const std::vector<int>& labels,
                                 const Tensor* extra_output_grad = nullptr) {
  check_cache(net, cache);
  if (net.layers.empty() || net.layers.back().kind != LayerKind::Softmax) {
    throw StateError("classifier backward requires a softmax output layer");
  }
  const Tensor& probs = cache.acts.back();
  const std::size_t n = probs.rows(), k = probs.cols();
  if (labels.size() != n) {
    throw DimensionError("labels length does not match batch");
  }
  Tensor dlogits({n, k});
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t r = 0; r < n; ++r) {
    const int y = labels[r];
    if (y < 0 || static_cast<std::size_t>(y) >= k) {
      throw IndexError("label " + std::to_string(y) + " out of range [0," +
                       std::to_string(k) + ")");
    }
    for (std::size_t j = 0; j < k; ++j) {
      dlogits.at(r, j) = (probs.at(r, j) - (static_cast<std::size_t>(y) == j
                                                ? 1.0
                                                : 0.0)) *
                         inv_n;
    }
  }
  if (extra_output_grad != nullptr) {
    check_same_shape(*extra_output_grad, probs, "extra output grad");
    Tensor extra_dlogits;
    detail::softmax_backward(probs, *extra_output_grad, extra_dlogits);
    axpy(dlogits, 1.0, extra_dlogits);
  }

  Grads grads;
  grads.weight_grads.resize(net.layers.size());
  grads.bias_grads.resize(net.layers.size());
  Tensor g = std::move(dlogits);
  for (std::size_t li = net.layers.size() - 1; li-- > 0;) {
    const Layer& l = net.layers[li];
    const Tensor& x = cache.acts[li];
    Tensor gx;
    switch (l.kind) {
      case LayerKind::Dense:
        detail::dense_backward(l, x, g, grads.weight_grads[li],
                               grads.bias_grads[li], gx);
        break;
      case LayerKind::Relu:
        detail::relu_backward(x, g, gx);
        break;
      case LayerKind::Softmax:
        detail::softmax_backward(cache.acts[li + 1], g, gx);
        break;
    }
    g = std::move(gx);
  }
  grads.input_grad = std::move(g);
  return grads;
}

// Fraction of rows whose argmax matches the label. Ties resolve to the
// lowest class index.
inline double accuracy(const Tensor& probs, const std::vector<int>& labels) {
  if (probs.size() == 0) throw DataError("empty batch");
  const std::size_t n = probs.rows(), k = probs.cols();
  if (labels.size() != n) {
    throw DimensionError("labels length does not match batch");
  }
  std::size_t correct = 0;
  for (std::size_t r = 0; r < n; ++r) {
    std::size_t best = 0;
    for (std::size_t j = 1; j < k; ++j) {
      if (probs.at(r, j) > probs.at(r, best)) best = j;
    }
    correct += (static_cast<int>(best) == labels[r]);
  }
  return static_cast<double>(correct) / static_cast<double>(n);
}

// Re-applies every Dense mask to its weights so pruned entries are exactly
// zero (bitwise +0.0, not -0.0). Called after each optimizer step.
inline void apply_masks(Network& net) {
  for (Layer& l : net.layers) {
    if (l.kind != LayerKind::Dense) continue;
    for (std::size_t i = 0; i < l.weights.size(); ++i) {
      if (l.mask[i] == 0.0) l.weights[i] = 0.0;
    }
  }
}

}  // namespace miap

#endif  // MIAP_NETWORK_HPP
