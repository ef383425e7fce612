#pragma once

// Equivalence checks between the augmented binary encoder and one-hot
// encoding.
//
// The one-hot twin of an augmented network copies everything except the
// encoder's category part, and sets its weight row for category c to the
// augmented layer's effective contribution for c. In exact arithmetic both
// networks then compute the same function and stay identical under SGD.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "augbin/data_io.hpp"
#include "augbin/encoding_layers.hpp"
#include "augbin/network.hpp"

namespace augbin {

using AugmentedNetwork = Network<AugmentedBinaryLayer>;
using OneHotNetwork = Network<OneHotLayer>;
using BinaryNetwork = Network<BinaryLayer>;
using AnyNetwork = std::variant<OneHotNetwork, BinaryNetwork, AugmentedNetwork>;

struct TwinPair {
  AugmentedNetwork augmented;
  OneHotNetwork onehot;
};

inline TwinPair build_onehot_twin(const AugmentedNetwork& net) {
  TwinPair pair{net, {}};
  const auto& enc = net.encoder;
  auto& twin = pair.onehot;
  twin.encoder = OneHotLayer(enc.category_count(), enc.numeric_width(), enc.output_width());
  for (std::uint32_t c = 1; c <= enc.category_count(); ++c) {
    const auto eff = enc.effective_contribution(CategoryId{c});
    std::copy(eff.begin(), eff.end(), twin.encoder.category_weights.row(c - 1).begin());
  }
  twin.encoder.numeric_weights = enc.numeric_weights;
  twin.encoder.bias = enc.bias;
  twin.encoder_activation = net.encoder_activation;
  twin.layers = net.layers;
  return pair;
}

/// Runtime-dispatched form; only augmented networks have a twin.
inline TwinPair build_onehot_twin(const AnyNetwork& net) {
  if (const auto* aug = std::get_if<AugmentedNetwork>(&net)) return build_onehot_twin(*aug);
  throw std::invalid_argument("build_onehot_twin: network does not use the augmented encoder");
}

inline double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("max_abs_diff: length mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

/// max over categories and neurons of |W_cat[c][k] - effective_contribution(c)[k]|.
inline double twin_parameter_distance(const TwinPair& pair) {
  double m = 0.0;
  const auto& enc = pair.augmented.encoder;
  for (std::uint32_t c = 1; c <= enc.category_count(); ++c) {
    const auto eff = enc.effective_contribution(CategoryId{c});
    m = std::max(m, max_abs_diff(pair.onehot.encoder.category_weights.row(c - 1), eff));
  }
  return m;
}

struct DivergenceTrace {
  std::vector<double> max_output_diff;  // per step, measured before the update
  std::vector<double> loss_augmented;
  std::vector<double> loss_onehot;
  double final_parameter_distance = 0.0;
};

/// Trains both networks on the same stream, one instance per step.
inline DivergenceTrace lockstep_train(TwinPair& pair, std::span<const Example> stream,
                                      const SgdConfig& cfg) {
  cfg.validate();
  DivergenceTrace trace;
  trace.max_output_diff.reserve(stream.size());
  for (std::size_t s = 0; s < stream.size(); ++s) {
    const auto& ex = stream[s];
    try {
      const ForwardCache ca = forward(pair.augmented, ex.category, ex.numeric);
      const ForwardCache co = forward(pair.onehot, ex.category, ex.numeric);
      trace.max_output_diff.push_back(max_abs_diff(ca.output(), co.output()));
      trace.loss_augmented.push_back(mse_loss(ca.output(), ex.target));
      trace.loss_onehot.push_back(mse_loss(co.output(), ex.target));
      backward(pair.augmented, ca, ex.target, cfg);
      backward(pair.onehot, co, ex.target, cfg);
    } catch (const NumericError& e) {
      throw NumericError("step " + std::to_string(s) + ": " + e.what());
    }
  }
  trace.final_parameter_distance = twin_parameter_distance(pair);
  return trace;
}

/// Change of every category's encoder contribution caused by one training
/// step on `stepped`.
struct ProbeResult {
  CategoryId stepped;
  std::vector<double> deltas;                // per-neuron delta_k of the step
  std::vector<std::vector<double>> change;   // [c - 1][k]: after - before
};

/// One SGD step on (stepped, x, target) applied to a copy of `net`; records
/// the category part of the pre-activation for every category before and
/// after. For the augmented encoder that is the effective contribution.
template <FirstLayerEncoder E>
ProbeResult isolation_probe(const Network<E>& net, CategoryId stepped,
                            std::span<const double> x, std::span<const double> target,
                            const SgdConfig& cfg) {
  Network<E> work = net;
  const std::size_t n = work.category_count();
  std::vector<std::vector<double>> before(n);
  for (std::uint32_t c = 1; c <= n; ++c) before[c - 1] = work.encoder.category_part(CategoryId{c});

  StepDeltas step;
  train_step(work, stepped, x, target, cfg, nullptr, &step);

  ProbeResult result{stepped, step.encoder, {}};
  result.change.resize(n);
  for (std::uint32_t c = 1; c <= n; ++c) {
    const auto after = work.encoder.category_part(CategoryId{c});
    auto& d = result.change[c - 1];
    d.resize(after.size());
    for (std::size_t k = 0; k < after.size(); ++k) d[k] = after[k] - before[c - 1][k];
  }
  return result;
}

/// Worst deviations of a probe from a predicted change.
struct ProbeErrors {
  double off_category = 0.0;  // max |change - predicted| over c != stepped
  double on_category = 0.0;   // same for c == stepped
  bool any_nonzero_prediction_off_category = false;
};

/// Isolation: predicted change is -delta for the stepped category and 0 for
/// every other one.
inline ProbeErrors isolation_errors(const ProbeResult& probe) {
  ProbeErrors err;
  for (std::size_t i = 0; i < probe.change.size(); ++i) {
    const bool on = i == probe.stepped.index();
    for (std::size_t k = 0; k < probe.change[i].size(); ++k) {
      const double predicted = on ? -probe.deltas[k] : 0.0;
      const double e = std::abs(probe.change[i][k] - predicted);
      double& worst = on ? err.on_category : err.off_category;
      worst = std::max(worst, e);
    }
  }
  return err;
}

/// Bit-overlap interference of plain binary encoding: predicted change of
/// category c is -delta_k * |BR(c) & BR(stepped)|.
inline ProbeErrors interference_errors(const ProbeResult& probe, std::size_t width) {
  ProbeErrors err;
  const BitCode stepped = encode(probe.stepped, width);
  for (std::size_t i = 0; i < probe.change.size(); ++i) {
    const bool on = i == probe.stepped.index();
    const BitCode code = encode(CategoryId{static_cast<std::uint32_t>(i + 1)}, width);
    const auto shared = static_cast<double>(overlap(code, stepped));
    for (std::size_t k = 0; k < probe.change[i].size(); ++k) {
      const double predicted = -probe.deltas[k] * shared;
      if (!on && predicted != 0.0) err.any_nonzero_prediction_off_category = true;
      const double e = std::abs(probe.change[i][k] - predicted);
      double& worst = on ? err.on_category : err.off_category;
      worst = std::max(worst, e);
    }
  }
  return err;
}

// ---------------------------------------------------------------------------
// Brute-force replay

struct ReplayFailure {
  std::size_t step = 0;      // 1-based count of completed training steps
  std::string quantity;      // "A", "B", "W_bits" or "effective"
  std::uint32_t category = 0;  // row of A / category for "effective"; 0 otherwise
  std::size_t bit = 0;         // 1-based bit for "W_bits"/"B"; 0 otherwise
  std::size_t neuron = 0;      // 0-based k
  double expected = 0.0;
  double actual = 0.0;
};

struct BruteForceReport {
  bool passed = true;
  std::size_t steps_checked = 0;
  double max_error = 0.0;
  std::optional<ReplayFailure> failure;
};

struct BruteForceConfig {
  std::size_t categories = 3;
  std::size_t width = 1;
  std::size_t steps = 10;
  std::uint64_t seed = 0;
  double learning_rate = 0.1;
  double tolerance = 1e-12;
};

/// Called after each training step, before the comparison; used to inject
/// faults into the layer under test.
using LayerHook = std::function<void(std::size_t step, AugmentedBinaryLayer&)>;

/// Trains a small augmented network and, after every step, rebuilds A, B,
/// the bit weights and every category's effective contribution directly from
/// the recorded (category, delta) history, then compares with the layer.
/// The replay uses integer bit tests rather than BitCode.
inline BruteForceReport brute_force_check(const BruteForceConfig& cfg,
                                          const LayerHook& hook = {}) {
  if (cfg.categories == 0 || cfg.categories > 8 || cfg.width == 0 || cfg.width > 4 ||
      cfg.steps > 50) {
    throw std::invalid_argument("brute_force_check: needs N <= 8, K <= 4, steps <= 50");
  }
  NetworkShape shape;
  shape.categories = cfg.categories;
  shape.numeric = 2;
  shape.width = cfg.width;
  shape.hidden_layers = 1;
  AugmentedNetwork net = make_network<AugmentedBinaryLayer>(shape, cfg.seed);
  const Dataset data = synth_gen(cfg.seed, cfg.categories, 2, std::max<std::size_t>(cfg.steps, 1), 0.1);
  const SgdConfig sgd{cfg.learning_rate, cfg.steps, cfg.seed};

  const std::size_t n = net.encoder.bit_count();
  const std::size_t K = cfg.width;
  const Matrix initial_bits = net.encoder.bit_weights;
  struct Record {
    std::uint32_t category;
    std::vector<double> delta;
  };
  std::vector<Record> history;
  auto has_bit = [](std::uint32_t c, std::size_t bit) { return ((c >> bit) & 1U) != 0; };

  BruteForceReport report;
  auto compare = [&](std::size_t step, const char* what, std::uint32_t category,
                     std::size_t bit, std::size_t k, double expected, double actual) {
    const double e = std::abs(expected - actual);
    report.max_error = std::max(report.max_error, e);
    if (!(e <= cfg.tolerance) && !report.failure) {
      report.passed = false;
      report.failure = ReplayFailure{step, what, category, bit, k, expected, actual};
    }
  };

  for (std::size_t s = 0; s < cfg.steps; ++s) {
    const auto& ex = data.rows[s];
    StepDeltas step;
    train_step(net, ex.category, ex.numeric, ex.target, sgd, nullptr, &step);
    history.push_back({ex.category.value, step.encoder});
    if (hook) hook(s + 1, net.encoder);
    ++report.steps_checked;

    const auto& layer = net.encoder;
    for (std::uint32_t c = 1; c <= cfg.categories; ++c) {
      for (std::size_t k = 0; k < K; ++k) {
        double a = 0.0;
        for (const auto& r : history) {
          if (r.category == c) a -= r.delta[k];
        }
        compare(s + 1, "A", c, 0, k, a, layer.memo_a(c - 1, k));
      }
    }
    for (std::uint32_t c = 1; c <= cfg.categories; ++c) {
      const auto eff = layer.effective_contribution(CategoryId{c});
      for (std::size_t k = 0; k < K; ++k) {
        double expected = 0.0;
        for (std::size_t bit = 0; bit < n; ++bit) {
          if (has_bit(c, bit)) expected += initial_bits(bit, k);
        }
        for (const auto& r : history) {
          if (r.category == c) expected -= r.delta[k];
        }
        compare(s + 1, "effective", c, 0, k, expected, eff[k]);
      }
    }
    for (std::size_t bit = 0; bit < n; ++bit) {
      for (std::size_t k = 0; k < K; ++k) {
        double w = initial_bits(bit, k);
        double b = 0.0;
        for (const auto& r : history) {
          if (has_bit(r.category, bit)) {
            w -= r.delta[k];
            b -= r.delta[k];
          }
        }
        compare(s + 1, "W_bits", 0, bit + 1, k, w, layer.bit_weights(bit, k));
        compare(s + 1, "B", 0, bit + 1, k, b, layer.memo_b(k, bit));
      }
    }
  }
  return report;
}

}  // namespace augbin
