#pragma once

// Operation-count benchmark: measured per-pass encoder counters against
// their closed forms, plus wall-clock medians (reported, never asserted).

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "augbin/bitcode.hpp"
#include "augbin/data_io.hpp"
#include "augbin/encoding_layers.hpp"
#include "augbin/network.hpp"
#include "augbin/op_counters.hpp"

namespace augbin {

/// Closed-form per-pass encoder counts for a category with `ones` one-bits.
///
///   one-hot:    dense N*K,        sparse K,               updates K
///   binary:     dense n*K,        sparse ones*K,          updates ones*K
///   augmented:  dense (2n+1)*K,   sparse (2*ones+1)*K,    updates (2*ones+1)*K
inline OpCounters expected_counts(EncoderKind kind, std::uint64_t categories,
                                  std::uint64_t bits, std::uint64_t width,
                                  std::uint64_t ones) {
  OpCounters c;
  switch (kind) {
    case EncoderKind::onehot:
      c.encoding_fwd_dense = categories * width;
      c.encoding_fwd_sparse = width;
      c.encoding_param_updates = width;
      break;
    case EncoderKind::binary:
      c.encoding_fwd_dense = bits * width;
      c.encoding_fwd_sparse = ones * width;
      c.encoding_param_updates = ones * width;
      break;
    case EncoderKind::augmented:
      c.encoding_fwd_dense = (2 * bits + 1) * width;
      c.encoding_fwd_sparse = (2 * ones + 1) * width;
      c.encoding_param_updates = (2 * ones + 1) * width;
      break;
  }
  return c;
}

/// Encoder parameters plus bias: the augmented count includes A and B, which
/// is where its N*K memory cost remains.
inline std::uint64_t parameter_count(EncoderKind kind, std::uint64_t categories,
                                     std::uint64_t bits, std::uint64_t width) {
  switch (kind) {
    case EncoderKind::onehot: return categories * width + width;
    case EncoderKind::binary: return bits * width + width;
    case EncoderKind::augmented:
      return bits * width + categories * width + width * bits + width;
  }
  return 0;
}

struct BenchConfig {
  std::vector<std::size_t> categories{16, 256, 4096};
  std::size_t width = 32;
  std::size_t numeric = 2;
  std::size_t steps = 64;
  std::size_t reps = 5;
  std::uint64_t seed = 0;
  double learning_rate = 0.05;
};

struct BenchRow {
  EncoderKind encoder = EncoderKind::onehot;
  std::uint64_t categories = 0;
  std::uint64_t bits = 0;
  std::uint64_t width = 0;
  // Largest per-pass value seen over the run.
  std::uint64_t fwd_dense = 0;
  std::uint64_t fwd_sparse = 0;
  std::uint64_t updates = 0;
  std::uint64_t params = 0;
  std::uint64_t median_ns = 0;  // per training step
};

struct BenchResult {
  std::vector<BenchRow> rows;
  std::uint64_t passes_checked = 0;
  std::uint64_t counter_mismatches = 0;
  std::uint64_t dense_sparse_mismatches = 0;
  OpCounters totals;
};

namespace detail {

template <FirstLayerEncoder E>
void bench_cell(const BenchConfig& cfg, std::size_t categories, const Dataset& data,
                BenchResult& result) {
  NetworkShape shape;
  shape.categories = categories;
  shape.numeric = cfg.numeric;
  shape.width = cfg.width;
  const Network<E> fresh = make_network<E>(shape, cfg.seed);
  const SgdConfig sgd{cfg.learning_rate, cfg.steps, cfg.seed};
  const std::size_t bits = augbin::bit_width(categories);

  BenchRow row;
  row.encoder = encoder_kind_of<E>();
  row.categories = categories;
  row.bits = bits;
  row.width = cfg.width;
  row.params = parameter_count(row.encoder, categories, bits, cfg.width);

  // Counting pass.
  Network<E> net = fresh;
  for (std::size_t s = 0; s < cfg.steps; ++s) {
    const auto& ex = data.rows[s % data.rows.size()];
    OpCounters pass;
    const auto dense = net.encoder.forward_dense(ex.category, ex.numeric, &pass);
    const auto sparse = net.encoder.forward(ex.category, ex.numeric);
    if (dense != sparse) ++result.dense_sparse_mismatches;
    train_step(net, ex.category, ex.numeric, ex.target, sgd, &pass);

    const auto ones = encode(ex.category, bits).ones();
    const OpCounters want = expected_counts(row.encoder, categories, bits, cfg.width, ones);
    if (pass.encoding_fwd_dense != want.encoding_fwd_dense ||
        pass.encoding_fwd_sparse != want.encoding_fwd_sparse ||
        pass.encoding_param_updates != want.encoding_param_updates) {
      ++result.counter_mismatches;
    }
    ++result.passes_checked;
    result.totals += pass;
    row.fwd_dense = std::max(row.fwd_dense, pass.encoding_fwd_dense);
    row.fwd_sparse = std::max(row.fwd_sparse, pass.encoding_fwd_sparse);
    row.updates = std::max(row.updates, pass.encoding_param_updates);
  }

  // Timed passes, no counters.
  std::vector<std::uint64_t> per_step;
  for (std::size_t r = 0; r < cfg.reps; ++r) {
    Network<E> timed = fresh;
    const auto start = std::chrono::steady_clock::now();
    for (std::size_t s = 0; s < cfg.steps; ++s) {
      const auto& ex = data.rows[s % data.rows.size()];
      train_step(timed, ex.category, ex.numeric, ex.target, sgd);
    }
    const auto ns = std::chrono::duration_cast<std::chrono::nanoseconds>(
                        std::chrono::steady_clock::now() - start)
                        .count();
    per_step.push_back(static_cast<std::uint64_t>(ns) / std::max<std::size_t>(cfg.steps, 1));
  }
  std::sort(per_step.begin(), per_step.end());
  row.median_ns = per_step.empty() ? 0 : per_step[per_step.size() / 2];
  result.rows.push_back(row);
}

}  // namespace detail

/// Runs every encoder for every category count. reps == 0 yields an empty
/// table.
inline BenchResult run_bench(const BenchConfig& cfg) {
  BenchResult result;
  if (cfg.reps == 0) return result;
  for (std::size_t categories : cfg.categories) {
    const Dataset data =
        synth_gen(cfg.seed, categories, cfg.numeric, std::max<std::size_t>(cfg.steps, 1), 0.1);
    detail::bench_cell<OneHotLayer>(cfg, categories, data, result);
    detail::bench_cell<BinaryLayer>(cfg, categories, data, result);
    detail::bench_cell<AugmentedBinaryLayer>(cfg, categories, data, result);
  }
  return result;
}

inline constexpr const char* kBenchCsvHeader =
    "encoder,N,n,K,fwd_dense,fwd_sparse,updates,params,median_ns";

inline void write_bench_csv(std::ostream& out, const BenchResult& result) {
  out << kBenchCsvHeader << '\n';
  for (const auto& r : result.rows) {
    out << to_string(r.encoder) << ',' << r.categories << ',' << r.bits << ',' << r.width
        << ',' << r.fwd_dense << ',' << r.fwd_sparse << ',' << r.updates << ','
        << r.params << ',' << r.median_ns << '\n';
  }
}

}  // namespace augbin
