// SPDX-License-Identifier: Apache-2.0
#include "lcq/protocol.hpp"

#include <cmath>
#include <limits>

#include "lcq/errors.hpp"
#include "lcq/report_io.hpp"

namespace lcq {

namespace {

std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t CounterRng::at(std::uint64_t stream, std::uint64_t index) const {
  return mix64(mix64(seed ^ mix64(stream)) + index);
}

double CounterRng::uniform(std::uint64_t stream, std::uint64_t index) const {
  return static_cast<double>(at(stream, index) >> 11) * 0x1.0p-53;
}

ProtocolStats protocol_noise_sim(const std::array<double, 4>& confusion, long long rounds,
                                 std::uint64_t seed, InconclusivePolicy policy) {
  if (rounds < 1) throw PreconditionError("protocol_noise_sim requires rounds >= 1");
  for (double c : confusion) {
    if (!(c >= -1e-12) || !(c <= 1.0 + 1e-9)) {
      throw PreconditionError("confusion entries must be probabilities");
    }
  }
  const double p1_same = confusion[0], p1_other = confusion[1];
  const double p2_other = confusion[2], p2_same = confusion[3];
  if (p1_same + p1_other > 1.0 + 1e-9 || p2_same + p2_other > 1.0 + 1e-9) {
    throw PreconditionError("confusion rows must sum to at most 1");
  }

  const CounterRng rng{seed};
  ProtocolStats stats;
  stats.rounds = rounds;
  stats.seed = seed;
  stats.policy = policy == InconclusivePolicy::error ? "error" : "discard";

  for (long long r = 0; r < rounds; ++r) {
    const int bit = static_cast<int>(rng.at(0, static_cast<std::uint64_t>(r)) & 1u);
    const double u = rng.uniform(1, static_cast<std::uint64_t>(r));
    const double p_first = bit == 0 ? p1_same : p2_other;
    const double p_second = bit == 0 ? p1_other : p2_same;
    int outcome;  // 0, 1, or -1 inconclusive
    if (u < p_first) {
      outcome = 0;
    } else if (u < p_first + p_second) {
      outcome = 1;
    } else {
      outcome = -1;
    }
    if (outcome < 0) {
      ++stats.inconclusive;
    } else if (outcome == bit) {
      ++stats.correct;
    } else {
      ++stats.wrong;
    }
  }

  const long long conclusive = stats.correct + stats.wrong;
  if (conclusive == 0) {
    stats.degenerate = true;
    stats.qber = std::numeric_limits<double>::quiet_NaN();
    stats.qber_lo = stats.qber_hi = std::numeric_limits<double>::quiet_NaN();
  } else {
    stats.qber = static_cast<double>(stats.wrong) / static_cast<double>(conclusive);
    const double z = 1.959963984540054;  // 95%
    const double n = static_cast<double>(conclusive);
    const double p = stats.qber;
    const double denom = 1.0 + z * z / n;
    const double center = (p + z * z / (2.0 * n)) / denom;
    const double half =
        z * std::sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n)) / denom;
    stats.qber_lo = std::max(0.0, center - half);
    stats.qber_hi = std::min(1.0, center + half);
  }
  if (policy == InconclusivePolicy::error) {
    stats.effective_error_rate =
        static_cast<double>(stats.wrong + stats.inconclusive) / static_cast<double>(rounds);
  } else {
    stats.effective_error_rate = stats.qber;
  }
  // analytic reference under the same model: wrong mass over conclusive mass
  const double wrong_mass = 0.5 * (p1_other + p2_other);
  const double conclusive_mass = 0.5 * (p1_same + p1_other + p2_same + p2_other);
  stats.analytic_qber = conclusive_mass > 0.0
                            ? wrong_mass / conclusive_mass
                            : std::numeric_limits<double>::quiet_NaN();
  return stats;
}

std::string protocol_stats_json(const ProtocolStats& stats) {
  JsonWriter w;
  w.begin_object();
  w.field("rounds", static_cast<long long>(stats.rounds));
  w.field("correct", static_cast<long long>(stats.correct));
  w.field("wrong", static_cast<long long>(stats.wrong));
  w.field("inconclusive", static_cast<long long>(stats.inconclusive));
  w.field("qber", stats.qber);
  w.field("qber_ci_lo", stats.qber_lo);
  w.field("qber_ci_hi", stats.qber_hi);
  w.field("effective_error_rate", stats.effective_error_rate);
  w.field("degenerate", stats.degenerate);
  w.field("seed", static_cast<long long>(stats.seed));
  w.field("policy", stats.policy);
  w.field("analytic_qber", stats.analytic_qber);
  w.end_object();
  return w.str();
}

}  // namespace lcq
