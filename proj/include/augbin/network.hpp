#pragma once

// Feed-forward network with a categorical first-layer encoder, plain
// per-instance SGD on mean squared error, and a central-difference gradient
// oracle.
//
// Layer 0 is the encoder: z = encoder.forward(c, x), O = F(z), width K.
// Layers 1.. are dense: z_j = sum_i W[i][j] * in_i + b_j, O = F(z).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include "augbin/activation.hpp"
#include "augbin/bitcode.hpp"
#include "augbin/encoding_layers.hpp"
#include "augbin/errors.hpp"
#include "augbin/matrix.hpp"
#include "augbin/op_counters.hpp"
#include "augbin/splitmix64.hpp"

namespace augbin {

struct DenseLayer {
  Matrix weights;  // in x out
  std::vector<double> bias;
  Activation activation = Activation::identity;

  std::size_t input_width() const { return weights.rows(); }
  std::size_t output_width() const { return weights.cols(); }
};

struct SgdConfig {
  double learning_rate = 0.1;
  std::size_t steps = 0;
  std::uint64_t seed = 0;

  void validate() const {
    if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
      throw std::invalid_argument("learning rate must be positive and finite");
    }
  }
};

template <FirstLayerEncoder E>
struct Network {
  E encoder;
  Activation encoder_activation = Activation::sigmoid;
  std::vector<DenseLayer> layers;

  /// Width K of the first post-encoding layer.
  std::size_t width() const { return encoder.output_width(); }
  std::size_t numeric_width() const { return encoder.numeric_width(); }
  std::size_t category_count() const { return encoder.category_count(); }
  std::size_t output_width() const {
    return layers.empty() ? width() : layers.back().output_width();
  }

  void validate() const {
    std::size_t in = width();
    for (std::size_t l = 0; l < layers.size(); ++l) {
      const auto& layer = layers[l];
      if (layer.input_width() != in || layer.bias.size() != layer.output_width()) {
        throw std::invalid_argument("layer " + std::to_string(l + 1) +
                                    " does not chain with its input");
      }
      in = layer.output_width();
    }
  }
};

/// Pre-activations and activations of every layer for one instance, plus the
/// instance itself so backward() can update the encoder.
struct ForwardCache {
  CategoryId category;
  std::vector<double> numeric;
  std::vector<std::vector<double>> pre;   // z per layer, [0] is the encoder
  std::vector<std::vector<double>> post;  // F(z) per layer

  const std::vector<double>& output() const { return post.back(); }
};

/// Layer shape for make_network.
struct NetworkShape {
  std::size_t categories = 1;
  std::size_t numeric = 0;
  std::size_t width = 1;          // K
  std::size_t hidden_layers = 0;  // dense sigmoid layers of width K
  std::size_t outputs = 1;
  Activation encoder_activation = Activation::sigmoid;
  Activation hidden_activation = Activation::sigmoid;
  Activation output_activation = Activation::identity;
};

/// rows x cols matrix, entries uniform(-r, r) with r = 1/sqrt(fan_in), drawn
/// in row-major order from `rng`.
inline Matrix init_params(std::size_t rows, std::size_t cols, std::size_t fan_in,
                          SplitMix64& rng) {
  Matrix m(rows, cols);
  const double r = 1.0 / std::sqrt(static_cast<double>(fan_in == 0 ? 1 : fan_in));
  for (double& v : m.data()) v = rng.next_uniform(-r, r);
  return m;
}

/// Fresh stream per call; fan_in is the row count (in x out weights).
inline Matrix init_params(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  SplitMix64 rng(seed);
  return init_params(rows, cols, rows, rng);
}

/// Deterministic initialization. One SplitMix64(seed) stream fills, in order:
/// the encoder's stacked [category-or-bit rows; numeric rows] matrix with
/// fan_in equal to its row count, then each dense layer's weights. Biases and
/// memorization matrices start at zero.
template <FirstLayerEncoder E>
Network<E> make_network(const NetworkShape& shape, std::uint64_t seed) {
  if (shape.width == 0) throw std::invalid_argument("network width must be positive");
  if (shape.outputs == 0) throw std::invalid_argument("network needs an output");
  Network<E> net;
  net.encoder = E(shape.categories, shape.numeric, shape.width);
  net.encoder_activation = shape.encoder_activation;

  SplitMix64 rng(seed);
  Matrix* cat_rows = nullptr;
  if constexpr (std::is_same_v<E, OneHotLayer>) {
    cat_rows = &net.encoder.category_weights;
  } else {
    cat_rows = &net.encoder.bit_weights;
  }
  const std::size_t stacked = cat_rows->rows() + shape.numeric;
  Matrix first = init_params(stacked, shape.width, stacked, rng);
  for (std::size_t i = 0; i < stacked; ++i) {
    for (std::size_t k = 0; k < shape.width; ++k) {
      if (i < cat_rows->rows()) {
        (*cat_rows)(i, k) = first(i, k);
      } else {
        net.encoder.numeric_weights(i - cat_rows->rows(), k) = first(i, k);
      }
    }
  }

  std::size_t in = shape.width;
  for (std::size_t h = 0; h <= shape.hidden_layers; ++h) {
    const bool last = h == shape.hidden_layers;
    const std::size_t out = last ? shape.outputs : shape.width;
    DenseLayer layer;
    layer.weights = init_params(in, out, in, rng);
    layer.bias.assign(out, 0.0);
    layer.activation = last ? shape.output_activation : shape.hidden_activation;
    net.layers.push_back(std::move(layer));
    in = out;
  }
  return net;
}

namespace detail {

inline void require_finite(std::span<const double> values, const char* what) {
  for (double v : values) {
    if (!std::isfinite(v)) throw NumericError(std::string("non-finite ") + what);
  }
}

}  // namespace detail

/// Mean of squared differences.
inline double mse_loss(std::span<const double> output, std::span<const double> target) {
  if (output.size() != target.size() || output.empty()) {
    throw std::invalid_argument("mse_loss: output and target lengths differ");
  }
  double sum = 0.0;
  for (std::size_t j = 0; j < output.size(); ++j) {
    const double diff = output[j] - target[j];
    sum += diff * diff;
  }
  return sum / static_cast<double>(output.size());
}

/// dL/dO_j = 2 (O_j - t_j) / len.
inline std::vector<double> mse_gradient(std::span<const double> output,
                                        std::span<const double> target) {
  if (output.size() != target.size() || output.empty()) {
    throw std::invalid_argument("mse_gradient: output and target lengths differ");
  }
  std::vector<double> g(output.size());
  const double scale = 2.0 / static_cast<double>(output.size());
  for (std::size_t j = 0; j < g.size(); ++j) g[j] = scale * (output[j] - target[j]);
  return g;
}

/// Forward pass. Mutates nothing.
template <FirstLayerEncoder E>
ForwardCache forward(const Network<E>& net, CategoryId c, std::span<const double> x,
                     OpCounters* ops = nullptr) {
  ForwardCache cache;
  cache.category = c;
  cache.numeric.assign(x.begin(), x.end());

  std::vector<double> z = net.encoder.forward(c, x, ops);
  detail::require_finite(z, "encoder pre-activation");
  std::vector<double> o(z.size());
  for (std::size_t k = 0; k < z.size(); ++k) o[k] = activate(net.encoder_activation, z[k]);
  detail::require_finite(o, "encoder activation");
  cache.pre.push_back(std::move(z));
  cache.post.push_back(std::move(o));

  for (const auto& layer : net.layers) {
    const auto& in = cache.post.back();
    if (in.size() != layer.input_width()) {
      throw std::invalid_argument("forward: layer input width mismatch");
    }
    std::vector<double> lz(layer.output_width());
    std::vector<double> lo(layer.output_width());
    for (std::size_t j = 0; j < lz.size(); ++j) {
      double sum = 0.0;
      for (std::size_t i = 0; i < in.size(); ++i) sum += layer.weights(i, j) * in[i];
      lz[j] = sum + layer.bias[j];
      lo[j] = activate(layer.activation, lz[j]);
    }
    if (ops) ops->downstream_multiply_adds += layer.input_width() * layer.output_width();
    detail::require_finite(lz, "pre-activation");
    detail::require_finite(lo, "activation");
    cache.pre.push_back(std::move(lz));
    cache.post.push_back(std::move(lo));
  }
  return cache;
}

/// dLoss with respect to every pre-activation and dense parameter.
struct Gradients {
  std::vector<double> encoder_pre;           // dL/dz_k of the encoder layer
  std::vector<Matrix> dense_weights;         // dL/dW per dense layer
  std::vector<std::vector<double>> dense_bias;
};

template <FirstLayerEncoder E>
Gradients compute_gradients(const Network<E>& net, const ForwardCache& cache,
                            std::span<const double> target) {
  if (cache.pre.size() != net.layers.size() + 1) {
    throw std::invalid_argument("cache does not match network depth");
  }
  Gradients grads;
  grads.dense_weights.resize(net.layers.size());
  grads.dense_bias.resize(net.layers.size());

  std::vector<double> upstream = mse_gradient(cache.output(), target);
  for (std::size_t l = net.layers.size(); l-- > 0;) {
    const auto& layer = net.layers[l];
    const auto& z = cache.pre[l + 1];
    const auto& o = cache.post[l + 1];
    const auto& in = cache.post[l];
    std::vector<double> dz(z.size());
    for (std::size_t j = 0; j < dz.size(); ++j) {
      dz[j] = upstream[j] * derivative(layer.activation, z[j], o[j]);
    }
    Matrix dw(layer.input_width(), layer.output_width());
    for (std::size_t i = 0; i < in.size(); ++i) {
      for (std::size_t j = 0; j < dz.size(); ++j) dw(i, j) = in[i] * dz[j];
    }
    std::vector<double> next(in.size());
    for (std::size_t i = 0; i < in.size(); ++i) {
      double sum = 0.0;
      for (std::size_t j = 0; j < dz.size(); ++j) sum += layer.weights(i, j) * dz[j];
      next[i] = sum;
    }
    grads.dense_weights[l] = std::move(dw);
    grads.dense_bias[l] = dz;
    upstream = std::move(next);
  }

  const auto& z = cache.pre[0];
  const auto& o = cache.post[0];
  grads.encoder_pre.resize(z.size());
  for (std::size_t k = 0; k < z.size(); ++k) {
    grads.encoder_pre[k] = upstream[k] * derivative(net.encoder_activation, z[k], o[k]);
  }
  detail::require_finite(grads.encoder_pre, "gradient");
  for (const auto& db : grads.dense_bias) detail::require_finite(db, "gradient");
  return grads;
}

/// The SGD step applied by one backward pass.
struct StepDeltas {
  /// delta_k = lr * dL/dO_k * F'(z_k), shared by every encoder parameter family.
  std::vector<double> encoder;
  std::vector<Matrix> dense_weights;
  std::vector<std::vector<double>> dense_bias;
};

/// Backpropagates the MSE gradient and applies one SGD step. The encoder
/// receives the per-neuron deltas and applies its own update rule.
template <FirstLayerEncoder E>
StepDeltas backward(Network<E>& net, const ForwardCache& cache,
                    std::span<const double> target, const SgdConfig& cfg,
                    OpCounters* ops = nullptr) {
  cfg.validate();
  const Gradients grads = compute_gradients(net, cache, target);
  const double lr = cfg.learning_rate;

  StepDeltas step;
  step.encoder.resize(grads.encoder_pre.size());
  for (std::size_t k = 0; k < step.encoder.size(); ++k) {
    step.encoder[k] = lr * grads.encoder_pre[k];
  }
  step.dense_weights.resize(net.layers.size());
  step.dense_bias.resize(net.layers.size());
  for (std::size_t l = 0; l < net.layers.size(); ++l) {
    auto& layer = net.layers[l];
    Matrix dw = grads.dense_weights[l];
    for (double& v : dw.data()) v *= lr;
    for (std::size_t i = 0; i < dw.size(); ++i) layer.weights.data()[i] -= dw.data()[i];
    std::vector<double> db = grads.dense_bias[l];
    for (std::size_t j = 0; j < db.size(); ++j) {
      db[j] *= lr;
      layer.bias[j] -= db[j];
    }
    step.dense_weights[l] = std::move(dw);
    step.dense_bias[l] = std::move(db);
  }
  net.encoder.backward(cache.category, cache.numeric, step.encoder, ops);
  return step;
}

/// Forward, loss, backward. Returns the loss measured before the update.
template <FirstLayerEncoder E>
double train_step(Network<E>& net, CategoryId c, std::span<const double> x,
                  std::span<const double> target, const SgdConfig& cfg,
                  OpCounters* ops = nullptr, StepDeltas* deltas = nullptr) {
  const ForwardCache cache = forward(net, c, x, ops);
  const double loss = mse_loss(cache.output(), target);
  StepDeltas step = backward(net, cache, target, cfg, ops);
  if (deltas) *deltas = std::move(step);
  return loss;
}

template <FirstLayerEncoder E>
double instance_loss(const Network<E>& net, CategoryId c, std::span<const double> x,
                     std::span<const double> target) {
  return mse_loss(forward(net, c, x).output(), target);
}

// ---------------------------------------------------------------------------
// Parameter addressing for gradient checks.

enum class ParamKind {
  category_weight,  // one-hot W_cat[row][col]
  bit_weight,       // W_bits[row][col]
  memo_a,           // A[row][col]
  memo_b,           // B[row][col]
  numeric_weight,   // V_other[row][col]
  encoder_bias,     // bias[col]
  dense_weight,     // layers[layer].weights[row][col]
  dense_bias,       // layers[layer].bias[col]
};

struct ParamHandle {
  ParamKind kind = ParamKind::encoder_bias;
  std::size_t layer = 0;
  std::size_t row = 0;
  std::size_t col = 0;
};

template <FirstLayerEncoder E>
double& param_ref(Network<E>& net, const ParamHandle& p) {
  auto& enc = net.encoder;
  switch (p.kind) {
    case ParamKind::category_weight:
      if constexpr (requires { enc.category_weights; }) return enc.category_weights(p.row, p.col);
      break;
    case ParamKind::bit_weight:
      if constexpr (requires { enc.bit_weights; }) return enc.bit_weights(p.row, p.col);
      break;
    case ParamKind::memo_a:
      if constexpr (requires { enc.memo_a; }) return enc.memo_a(p.row, p.col);
      break;
    case ParamKind::memo_b:
      if constexpr (requires { enc.memo_b; }) return enc.memo_b(p.row, p.col);
      break;
    case ParamKind::numeric_weight: return enc.numeric_weights(p.row, p.col);
    case ParamKind::encoder_bias: return enc.bias.at(p.col);
    case ParamKind::dense_weight: return net.layers.at(p.layer).weights(p.row, p.col);
    case ParamKind::dense_bias: return net.layers.at(p.layer).bias.at(p.col);
  }
  throw std::invalid_argument("parameter kind not present in this encoder");
}

/// Every scalar parameter of the network, encoder first.
template <FirstLayerEncoder E>
std::vector<ParamHandle> all_params(const Network<E>& net) {
  std::vector<ParamHandle> out;
  auto add_matrix = [&](ParamKind kind, std::size_t layer, const Matrix& m) {
    for (std::size_t r = 0; r < m.rows(); ++r) {
      for (std::size_t c = 0; c < m.cols(); ++c) out.push_back({kind, layer, r, c});
    }
  };
  const auto& enc = net.encoder;
  if constexpr (requires { enc.category_weights; }) {
    add_matrix(ParamKind::category_weight, 0, enc.category_weights);
  }
  if constexpr (requires { enc.bit_weights; }) {
    add_matrix(ParamKind::bit_weight, 0, enc.bit_weights);
  }
  if constexpr (requires { enc.memo_a; }) add_matrix(ParamKind::memo_a, 0, enc.memo_a);
  if constexpr (requires { enc.memo_b; }) add_matrix(ParamKind::memo_b, 0, enc.memo_b);
  add_matrix(ParamKind::numeric_weight, 0, enc.numeric_weights);
  for (std::size_t k = 0; k < enc.bias.size(); ++k) {
    out.push_back({ParamKind::encoder_bias, 0, 0, k});
  }
  for (std::size_t l = 0; l < net.layers.size(); ++l) {
    add_matrix(ParamKind::dense_weight, l, net.layers[l].weights);
    for (std::size_t j = 0; j < net.layers[l].bias.size(); ++j) {
      out.push_back({ParamKind::dense_bias, l, 0, j});
    }
  }
  return out;
}

/// Analytic dLoss/dp read off precomputed gradients. Encoder entries follow
/// from g_k = dL/dz_k: the selected one-hot row, the one-bit rows and A[c]
/// get g_k, the selected B entries get -g_k (B enters z with a minus sign),
/// numeric weights get g_k * x_j.
template <FirstLayerEncoder E>
double analytic_gradient(const Network<E>& net, const ForwardCache& cache,
                         const Gradients& grads, const ParamHandle& p) {
  const auto& g = grads.encoder_pre;
  const CategoryId c = cache.category;
  auto has_bit = [&](std::size_t bit_row) {
    if constexpr (requires { net.encoder.code(c); }) {
      return net.encoder.code(c).vector().at(bit_row) == 1;
    } else {
      return false;
    }
  };
  switch (p.kind) {
    case ParamKind::category_weight:
    case ParamKind::memo_a: return p.row == c.index() ? g.at(p.col) : 0.0;
    case ParamKind::bit_weight: return has_bit(p.row) ? g.at(p.col) : 0.0;
    case ParamKind::memo_b: return has_bit(p.col) ? -g.at(p.row) : 0.0;
    case ParamKind::numeric_weight: return g.at(p.col) * cache.numeric.at(p.row);
    case ParamKind::encoder_bias: return g.at(p.col);
    case ParamKind::dense_weight: return grads.dense_weights.at(p.layer)(p.row, p.col);
    case ParamKind::dense_bias: return grads.dense_bias.at(p.layer).at(p.col);
  }
  return 0.0;
}

/// Central difference (L(p + h) - L(p - h)) / 2h on a single instance.
template <FirstLayerEncoder E>
double finite_diff_grad(const Network<E>& net, CategoryId c, std::span<const double> x,
                        std::span<const double> target, const ParamHandle& p,
                        double h = 1e-6) {
  if (!(h > 0.0)) throw std::invalid_argument("finite_diff_grad: step must be positive");
  Network<E> plus = net;
  Network<E> minus = net;
  param_ref(plus, p) += h;
  param_ref(minus, p) -= h;
  const double lp = instance_loss(plus, c, x, target);
  const double lm = instance_loss(minus, c, x, target);
  return (lp - lm) / (2.0 * h);
}

/// |analytic - numeric| <= max(abs_floor, rel * max(|analytic|, |numeric|)).
inline bool gradients_agree(double analytic, double numeric, double rel = 1e-5,
                            double abs_floor = 1e-8) {
  const double scale = std::max(std::abs(analytic), std::abs(numeric));
  return std::abs(analytic - numeric) <= std::max(abs_floor, rel * scale);
}

}  // namespace augbin
