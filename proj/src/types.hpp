#pragma once

#include <cstdint>

namespace dra {

/// 1-based process id. Ids 1..P are real (migratable) processes; ids
/// P+1..P+L are the fixed virtual processes standing in for locations.
using ProcessId = int;

/// 1-based location id: a tree node, or a flat server id in hierarchical
/// mode where server s of cluster c is (c-1)*servers_per_cluster + s.
using NodeId = int;

using Volume = std::int64_t;  // bytes exchanged per monitoring window
using Cost = std::int64_t;    // byte-hops

/// Largest accepted per-pair traffic volume. Keeps every cost sum and the
/// fixed-point averager inside 64/128-bit integer range.
inline constexpr Volume kMaxVolume = Volume{1} << 40;

/// Exact ratio. Used for the smoothing constant and the inertia factor so
/// that every benefit comparison stays in integer arithmetic.
struct Ratio {
  std::int64_t num = 0;
  std::int64_t den = 1;

  /// Parses a config literal. Values are carried exactly up to nine decimal
  /// digits, which covers anything a scenario file can express.
  static Ratio from_decimal(double value);

  double as_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Ratio&, const Ratio&) = default;
};

}  // namespace dra
