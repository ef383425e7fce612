#pragma once

// First-layer encoders for one categorical feature plus d numeric features,
// feeding K neurons.
//
//   OneHotLayer           - N weight rows, one per category.
//   BinaryLayer           - n weight rows, one per bit; categories sharing a
//                           bit interfere with each other during training.
//   AugmentedBinaryLayer  - binary rows plus memorization matrices A (N x K)
//                           and B (K x n) that cancel the interference, so a
//                           training step on one category leaves the
//                           pre-activations of every other category unchanged.
//
// All three produce the pre-activation vector z of length K and accept the
// per-neuron deltas delta_k = lr * dLoss/dO_k * F'(z_k) from the engine.
// Sums run in ascending index order.

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "augbin/bitcode.hpp"
#include "augbin/matrix.hpp"
#include "augbin/op_counters.hpp"

namespace augbin {

namespace detail {

inline void check_category(CategoryId c, std::size_t category_count) {
  if (c.value == 0 || c.value > category_count) {
    throw std::out_of_range("category " + std::to_string(c.value) +
                            " outside 1.." + std::to_string(category_count));
  }
}

inline void check_numeric(std::span<const double> x, std::size_t d) {
  if (x.size() != d) {
    throw std::invalid_argument("expected " + std::to_string(d) +
                                " numeric features, got " + std::to_string(x.size()));
  }
}

inline void check_deltas(std::span<const double> delta, std::size_t k) {
  if (delta.size() != k) {
    throw std::invalid_argument("expected " + std::to_string(k) + " deltas, got " +
                                std::to_string(delta.size()));
  }
}

inline std::vector<BitCode> all_codes(std::size_t category_count, std::size_t width) {
  std::vector<BitCode> codes;
  codes.reserve(category_count);
  for (std::size_t c = 1; c <= category_count; ++c) {
    codes.push_back(encode(CategoryId{static_cast<std::uint32_t>(c)}, width));
  }
  return codes;
}

// acc_k += sum_j V[j][k] * x_j, then acc_k += bias_k.
inline void add_numeric_and_bias(std::vector<double>& acc, const Matrix& numeric_weights,
                                 std::span<const double> x,
                                 const std::vector<double>& bias) {
  for (std::size_t k = 0; k < acc.size(); ++k) {
    double sum = acc[k];
    for (std::size_t j = 0; j < x.size(); ++j) sum += numeric_weights(j, k) * x[j];
    acc[k] = sum + bias[k];
  }
}

inline void update_numeric_and_bias(Matrix& numeric_weights, std::vector<double>& bias,
                                    std::span<const double> x,
                                    std::span<const double> delta) {
  for (std::size_t j = 0; j < x.size(); ++j) {
    for (std::size_t k = 0; k < delta.size(); ++k) {
      numeric_weights(j, k) -= delta[k] * x[j];
    }
  }
  for (std::size_t k = 0; k < delta.size(); ++k) bias[k] -= delta[k];
}

}  // namespace detail

/// One weight row per category.
struct OneHotLayer {
  Matrix category_weights;  // N x K
  Matrix numeric_weights;   // d x K
  std::vector<double> bias; // K

  OneHotLayer() = default;
  OneHotLayer(std::size_t categories, std::size_t numeric, std::size_t width)
      : category_weights(categories, width),
        numeric_weights(numeric, width),
        bias(width, 0.0) {}

  std::size_t category_count() const { return category_weights.rows(); }
  std::size_t numeric_width() const { return numeric_weights.rows(); }
  std::size_t output_width() const { return bias.size(); }
  std::size_t parameter_count() const {
    return category_weights.size() + bias.size();
  }

  /// z_k = W_cat[c][k] + sum_j V[j][k] x_j + b_k.
  std::vector<double> forward(CategoryId c, std::span<const double> x,
                              OpCounters* ops = nullptr) const {
    detail::check_category(c, category_count());
    detail::check_numeric(x, numeric_width());
    const auto row = category_weights.row(c.index());
    std::vector<double> z(row.begin(), row.end());
    if (ops) ops->encoding_fwd_sparse += output_width();
    detail::add_numeric_and_bias(z, numeric_weights, x, bias);
    return z;
  }

  /// Same value as forward(), computed as a full matvec over the explicit
  /// one-hot vector.
  std::vector<double> forward_dense(CategoryId c, std::span<const double> x,
                                    OpCounters* ops = nullptr) const {
    detail::check_category(c, category_count());
    detail::check_numeric(x, numeric_width());
    std::vector<double> one_hot(category_count(), 0.0);
    one_hot[c.index()] = 1.0;
    std::vector<double> z(output_width(), 0.0);
    for (std::size_t k = 0; k < z.size(); ++k) {
      for (std::size_t i = 0; i < one_hot.size(); ++i) {
        z[k] += category_weights(i, k) * one_hot[i];
      }
    }
    if (ops) ops->encoding_fwd_dense += category_count() * output_width();
    detail::add_numeric_and_bias(z, numeric_weights, x, bias);
    return z;
  }

  /// W_cat[c][k] -= delta_k; no other category row is touched.
  void backward(CategoryId c, std::span<const double> x, std::span<const double> delta,
                OpCounters* ops = nullptr) {
    detail::check_category(c, category_count());
    detail::check_numeric(x, numeric_width());
    detail::check_deltas(delta, output_width());
    auto row = category_weights.row(c.index());
    for (std::size_t k = 0; k < row.size(); ++k) row[k] -= delta[k];
    if (ops) ops->encoding_param_updates += output_width();
    detail::update_numeric_and_bias(numeric_weights, bias, x, delta);
  }

  /// The category-dependent part of z: the weight row of c.
  std::vector<double> category_part(CategoryId c) const {
    detail::check_category(c, category_count());
    const auto row = category_weights.row(c.index());
    return {row.begin(), row.end()};
  }
};

/// One weight row per bit of the category code.
struct BinaryLayer {
  Matrix bit_weights;       // n x K
  Matrix numeric_weights;   // d x K
  std::vector<double> bias; // K

  BinaryLayer() = default;
  BinaryLayer(std::size_t categories, std::size_t numeric, std::size_t width)
      : bit_weights(augbin::bit_width(categories), width),
        numeric_weights(numeric, width),
        bias(width, 0.0),
        codes_(detail::all_codes(categories, augbin::bit_width(categories))) {}

  std::size_t category_count() const { return codes_.size(); }
  std::size_t bit_count() const { return bit_weights.rows(); }
  std::size_t numeric_width() const { return numeric_weights.rows(); }
  std::size_t output_width() const { return bias.size(); }
  std::size_t parameter_count() const { return bit_weights.size() + bias.size(); }

  const BitCode& code(CategoryId c) const {
    detail::check_category(c, category_count());
    return codes_[c.index()];
  }

  /// sum over one-bits of W_bits[i][k].
  std::vector<double> category_part(CategoryId c) const {
    const auto& bits = code(c);
    std::vector<double> part(output_width(), 0.0);
    for (std::size_t k = 0; k < part.size(); ++k) {
      double sum = 0.0;
      for (std::size_t pos : bits.positions()) sum += bit_weights(pos - 1, k);
      part[k] = sum;
    }
    return part;
  }

  /// z_k = sum_{i in BR(c)} W_bits[i][k] + sum_j V[j][k] x_j + b_k.
  std::vector<double> forward(CategoryId c, std::span<const double> x,
                              OpCounters* ops = nullptr) const {
    detail::check_numeric(x, numeric_width());
    std::vector<double> z = category_part(c);
    if (ops) ops->encoding_fwd_sparse += code(c).ones() * output_width();
    detail::add_numeric_and_bias(z, numeric_weights, x, bias);
    return z;
  }

  std::vector<double> forward_dense(CategoryId c, std::span<const double> x,
                                    OpCounters* ops = nullptr) const {
    detail::check_numeric(x, numeric_width());
    const auto& bits = code(c).vector();
    std::vector<double> z(output_width(), 0.0);
    for (std::size_t k = 0; k < z.size(); ++k) {
      for (std::size_t i = 0; i < bits.size(); ++i) {
        z[k] += bit_weights(i, k) * static_cast<double>(bits[i]);
      }
    }
    if (ops) ops->encoding_fwd_dense += bit_count() * output_width();
    detail::add_numeric_and_bias(z, numeric_weights, x, bias);
    return z;
  }

  /// W_bits[i][k] -= delta_k for every one-bit i. Categories sharing any of
  /// those bits see their pre-activation move as well.
  void backward(CategoryId c, std::span<const double> x, std::span<const double> delta,
                OpCounters* ops = nullptr) {
    const auto& bits = code(c);
    detail::check_numeric(x, numeric_width());
    detail::check_deltas(delta, output_width());
    for (std::size_t pos : bits.positions()) {
      auto row = bit_weights.row(pos - 1);
      for (std::size_t k = 0; k < row.size(); ++k) row[k] -= delta[k];
    }
    if (ops) ops->encoding_param_updates += bits.ones() * output_width();
    detail::update_numeric_and_bias(numeric_weights, bias, x, delta);
  }

 private:
  std::vector<BitCode> codes_;
};

/// How the augmented layer assembles its pre-activation.
enum class AugmentedForward {
  /// z = W^T BRV + V^T x + b + A[c] - B BRV, term by term.
  per_term,
  /// b' = b + A[c] - B BRV first, then the ordinary z = W^T BRV + V^T x + b'.
  folded_bias,
};

/// Binary encoding with memorization matrices.
///
/// A starts at zero and accumulates, per category, every delta applied while
/// training on that category. B starts at zero and accumulates, per bit, every
/// delta applied to that bit's weight row regardless of category. Adding A[c]
/// and subtracting B BRV(c) in the forward pass removes the cross-category
/// part of the bit-weight updates, leaving
///
///   W0^T BRV(c) - sum of deltas from steps on c
///
/// as the category contribution, which is exactly how a one-hot row evolves.
struct AugmentedBinaryLayer {
  Matrix bit_weights;       // n x K
  Matrix numeric_weights;   // d x K
  std::vector<double> bias; // K
  Matrix memo_a;            // N x K, row per category
  Matrix memo_b;            // K x n, column per bit
  AugmentedForward forward_rule = AugmentedForward::per_term;

  AugmentedBinaryLayer() = default;
  AugmentedBinaryLayer(std::size_t categories, std::size_t numeric, std::size_t width)
      : bit_weights(augbin::bit_width(categories), width),
        numeric_weights(numeric, width),
        bias(width, 0.0),
        memo_a(categories, width, 0.0),
        memo_b(width, augbin::bit_width(categories), 0.0),
        codes_(detail::all_codes(categories, augbin::bit_width(categories))) {}

  std::size_t category_count() const { return codes_.size(); }
  std::size_t bit_count() const { return bit_weights.rows(); }
  std::size_t numeric_width() const { return numeric_weights.rows(); }
  std::size_t output_width() const { return bias.size(); }
  std::size_t parameter_count() const {
    return bit_weights.size() + memo_a.size() + memo_b.size() + bias.size();
  }

  const BitCode& code(CategoryId c) const {
    detail::check_category(c, category_count());
    return codes_[c.index()];
  }

  /// sum_{i in BR(c)} W_bits[i][k] + A[c][k] - sum_{i in BR(c)} B[k][i].
  std::vector<double> effective_contribution(CategoryId c) const {
    const auto& bits = code(c);
    std::vector<double> out(output_width(), 0.0);
    for (std::size_t k = 0; k < out.size(); ++k) {
      double sum = 0.0;
      for (std::size_t pos : bits.positions()) sum += bit_weights(pos - 1, k);
      sum += memo_a(c.index(), k);
      for (std::size_t pos : bits.positions()) sum -= memo_b(k, pos - 1);
      out[k] = sum;
    }
    return out;
  }

  std::vector<double> category_part(CategoryId c) const {
    return effective_contribution(c);
  }

  std::vector<double> forward(CategoryId c, std::span<const double> x,
                              OpCounters* ops = nullptr) const {
    return forward_rule == AugmentedForward::folded_bias ? forward_folded(c, x, ops)
                                                         : forward_per_term(c, x, ops);
  }

  /// z_k = sum_{i in BR(c)} W_bits[i][k] + sum_j V[j][k] x_j + b_k + A[c][k]
  ///       - sum_{i in BR(c)} B[k][i]
  std::vector<double> forward_per_term(CategoryId c, std::span<const double> x,
                                       OpCounters* ops = nullptr) const {
    const auto& bits = code(c);
    detail::check_numeric(x, numeric_width());
    std::vector<double> z(output_width(), 0.0);
    for (std::size_t k = 0; k < z.size(); ++k) {
      double sum = 0.0;
      for (std::size_t pos : bits.positions()) sum += bit_weights(pos - 1, k);
      z[k] = sum;
    }
    detail::add_numeric_and_bias(z, numeric_weights, x, bias);
    for (std::size_t k = 0; k < z.size(); ++k) {
      double sum = z[k] + memo_a(c.index(), k);
      for (std::size_t pos : bits.positions()) sum -= memo_b(k, pos - 1);
      z[k] = sum;
    }
    if (ops) ops->encoding_fwd_sparse += (2 * bits.ones() + 1) * output_width();
    return z;
  }

  /// Bias-folded evaluation: b'_k = b_k + A[c][k] - sum_{i in BR(c)} B[k][i],
  /// then z_k = sum_{i in BR(c)} W_bits[i][k] + sum_j V[j][k] x_j + b'_k.
  std::vector<double> forward_folded(CategoryId c, std::span<const double> x,
                                     OpCounters* ops = nullptr) const {
    const auto& bits = code(c);
    detail::check_numeric(x, numeric_width());
    std::vector<double> folded(output_width(), 0.0);
    for (std::size_t k = 0; k < folded.size(); ++k) {
      double sum = bias[k] + memo_a(c.index(), k);
      for (std::size_t pos : bits.positions()) sum -= memo_b(k, pos - 1);
      folded[k] = sum;
    }
    std::vector<double> z(output_width(), 0.0);
    for (std::size_t k = 0; k < z.size(); ++k) {
      double sum = 0.0;
      for (std::size_t pos : bits.positions()) sum += bit_weights(pos - 1, k);
      z[k] = sum;
    }
    detail::add_numeric_and_bias(z, numeric_weights, x, folded);
    if (ops) ops->encoding_fwd_sparse += (2 * bits.ones() + 1) * output_width();
    return z;
  }

  /// Dense formulation: W^T BRV and B BRV as full matvecs over all n bits.
  std::vector<double> forward_dense(CategoryId c, std::span<const double> x,
                                    OpCounters* ops = nullptr) const {
    const auto& bits = code(c).vector();
    detail::check_numeric(x, numeric_width());
    std::vector<double> z(output_width(), 0.0);
    for (std::size_t k = 0; k < z.size(); ++k) {
      for (std::size_t i = 0; i < bits.size(); ++i) {
        z[k] += bit_weights(i, k) * static_cast<double>(bits[i]);
      }
    }
    detail::add_numeric_and_bias(z, numeric_weights, x, bias);
    for (std::size_t k = 0; k < z.size(); ++k) {
      double sum = z[k] + memo_a(c.index(), k);
      for (std::size_t i = 0; i < bits.size(); ++i) {
        sum -= memo_b(k, i) * static_cast<double>(bits[i]);
      }
      z[k] = sum;
    }
    if (ops) ops->encoding_fwd_dense += (2 * bit_count() + 1) * output_width();
    return z;
  }

  /// Bit rows and B entries for every one-bit of c, and row A[c], all
  /// decrease by delta_k. The W and B changes cancel in the forward pass of
  /// every category; only the A[c] change survives, and only for c.
  void backward(CategoryId c, std::span<const double> x, std::span<const double> delta,
                OpCounters* ops = nullptr) {
    const auto& bits = code(c);
    detail::check_numeric(x, numeric_width());
    detail::check_deltas(delta, output_width());
    for (std::size_t pos : bits.positions()) {
      auto row = bit_weights.row(pos - 1);
      for (std::size_t k = 0; k < row.size(); ++k) row[k] -= delta[k];
    }
#if !defined(AUGBIN_FAULT_SKIP_A_UPDATE)
    auto a_row = memo_a.row(c.index());
    for (std::size_t k = 0; k < a_row.size(); ++k) a_row[k] -= delta[k];
#endif
    for (std::size_t k = 0; k < delta.size(); ++k) {
      for (std::size_t pos : bits.positions()) memo_b(k, pos - 1) -= delta[k];
    }
    if (ops) ops->encoding_param_updates += (2 * bits.ones() + 1) * output_width();
    detail::update_numeric_and_bias(numeric_weights, bias, x, delta);
  }

 private:
  std::vector<BitCode> codes_;
};

// Free-function spellings of the per-encoder rules.

inline std::vector<double> forward_onehot(const OneHotLayer& layer, CategoryId c,
                                          std::span<const double> x) {
  return layer.forward(c, x);
}
inline void backward_onehot(OneHotLayer& layer, CategoryId c, std::span<const double> x,
                            std::span<const double> delta) {
  layer.backward(c, x, delta);
}
inline std::vector<double> forward_binary(const BinaryLayer& layer, CategoryId c,
                                          std::span<const double> x) {
  return layer.forward(c, x);
}
inline void backward_binary(BinaryLayer& layer, CategoryId c, std::span<const double> x,
                            std::span<const double> delta) {
  layer.backward(c, x, delta);
}
inline std::vector<double> forward_augmented(const AugmentedBinaryLayer& layer,
                                             CategoryId c, std::span<const double> x) {
  return layer.forward_per_term(c, x);
}
inline std::vector<double> forward_augmented_folded(const AugmentedBinaryLayer& layer,
                                                    CategoryId c,
                                                    std::span<const double> x) {
  return layer.forward_folded(c, x);
}
inline void backward_augmented(AugmentedBinaryLayer& layer, CategoryId c,
                               std::span<const double> x, std::span<const double> delta) {
  layer.backward(c, x, delta);
}
inline std::vector<double> effective_contribution(const AugmentedBinaryLayer& layer,
                                                  CategoryId c) {
  return layer.effective_contribution(c);
}

/// What a first-layer encoder must provide to sit under a Network.
template <class E>
concept FirstLayerEncoder =
    requires(const E& cl, E& ml, CategoryId c, std::span<const double> x,
             std::span<const double> delta, OpCounters* ops) {
      { cl.category_count() } -> std::convertible_to<std::size_t>;
      { cl.numeric_width() } -> std::convertible_to<std::size_t>;
      { cl.output_width() } -> std::convertible_to<std::size_t>;
      { cl.parameter_count() } -> std::convertible_to<std::size_t>;
      { cl.forward(c, x, ops) } -> std::same_as<std::vector<double>>;
      { cl.forward_dense(c, x, ops) } -> std::same_as<std::vector<double>>;
      { cl.category_part(c) } -> std::same_as<std::vector<double>>;
      ml.backward(c, x, delta, ops);
    };

static_assert(FirstLayerEncoder<OneHotLayer>);
static_assert(FirstLayerEncoder<BinaryLayer>);
static_assert(FirstLayerEncoder<AugmentedBinaryLayer>);

enum class EncoderKind { onehot, binary, augmented };

inline std::string_view to_string(EncoderKind kind) {
  switch (kind) {
    case EncoderKind::onehot: return "onehot";
    case EncoderKind::binary: return "binary";
    case EncoderKind::augmented: return "augmented";
  }
  return "onehot";
}

template <class E>
constexpr EncoderKind encoder_kind_of();
template <>
constexpr EncoderKind encoder_kind_of<OneHotLayer>() { return EncoderKind::onehot; }
template <>
constexpr EncoderKind encoder_kind_of<BinaryLayer>() { return EncoderKind::binary; }
template <>
constexpr EncoderKind encoder_kind_of<AugmentedBinaryLayer>() {
  return EncoderKind::augmented;
}

}  // namespace augbin
