#pragma once

#include <cstdint>

namespace augbin {

/// Per-pass operation counts.
///
/// Only terms that involve the categorical feature count as encoding work:
/// weight rows selected by the category code, and A/B memorization entries.
/// Numeric-feature weights and the bias are shared by every encoder and are
/// not counted.
struct OpCounters {
  /// Category multiply-adds of the dense formulation (explicit one-hot or
  /// bit vector times the full weight matrix).
  std::uint64_t encoding_fwd_dense = 0;
  /// Category terms actually touched when zeros are skipped.
  std::uint64_t encoding_fwd_sparse = 0;
  /// Encoding parameters written by one backward pass (W rows, A, B).
  std::uint64_t encoding_param_updates = 0;
  /// Multiply-adds in the dense layers after the encoder.
  std::uint64_t downstream_multiply_adds = 0;

  void reset() { *this = OpCounters{}; }

  OpCounters& operator+=(const OpCounters& o) {
    encoding_fwd_dense += o.encoding_fwd_dense;
    encoding_fwd_sparse += o.encoding_fwd_sparse;
    encoding_param_updates += o.encoding_param_updates;
    downstream_multiply_adds += o.downstream_multiply_adds;
    return *this;
  }

  bool operator==(const OpCounters&) const = default;
};

}  // namespace augbin
