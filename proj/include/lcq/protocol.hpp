// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <string>

namespace lcq {

/// Stateless counter-based generator (splitmix-style double avalanche):
/// value(seed, stream, index) is a pure function, so simulations are
/// reproducible bit-for-bit regardless of evaluation order or threading.
struct CounterRng {
  std::uint64_t seed = 0;

  std::uint64_t at(std::uint64_t stream, std::uint64_t index) const;
  /// Uniform double in [0, 1) with 53 random bits.
  double uniform(std::uint64_t stream, std::uint64_t index) const;
};

enum class InconclusivePolicy { error, discard };

struct ProtocolStats {
  long long rounds = 0;
  long long correct = 0;
  long long wrong = 0;
  long long inconclusive = 0;
  /// wrong / (wrong + correct); NaN (degenerate) when nothing conclusive.
  double qber = 0.0;
  double qber_lo = 0.0;  // Wilson 95% interval
  double qber_hi = 0.0;
  /// Policy view: discard -> qber; error -> (wrong + inconclusive) / rounds.
  double effective_error_rate = 0.0;
  bool degenerate = false;
  std::uint64_t seed = 0;
  std::string policy;
  double analytic_qber = 0.0;  // from the confusion matrix, for reference
};

/// Samples `rounds` uses of the access-region measurement: a fair random
/// bit picks the sent state, the outcome is drawn from that state's
/// confusion row (correct / wrong / inconclusive remainder).
ProtocolStats protocol_noise_sim(const std::array<double, 4>& confusion, long long rounds,
                                 std::uint64_t seed, InconclusivePolicy policy);

std::string protocol_stats_json(const ProtocolStats& stats);

}  // namespace lcq
