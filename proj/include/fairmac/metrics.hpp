#pragma once

#include "fairmac/analytic.hpp"

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fairmac {

/// Raised when a run ends before some node delivered anything.
class InsufficientRunLength : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

struct PhaseCounts
{
  std::uint64_t idle = 0;
  std::uint64_t success = 0;
  std::uint64_t collision = 0;

  std::uint64_t busy () const { return success + collision; }
  bool operator== (const PhaseCounts &) const = default;
};

/// Delivery and energy ledger of a simulation run.
///
/// delivered_bits only counts a node's own data. transmit_seconds counts every
/// second the node's radio was sending, forwarding and collisions included.
struct TraceSummary
{
  double elapsed = 0.0;
  std::vector<std::uint64_t> delivered_bits;
  std::vector<double> transmit_seconds;
  PhaseCounts phase_counts;

  explicit TraceSummary (std::size_t nodes = 0)
    : delivered_bits (nodes, 0), transmit_seconds (nodes, 0.0)
  {
  }

  std::size_t size () const { return delivered_bits.size (); }

  /// Ledger of two back-to-back runs over the same node set.
  TraceSummary &operator+= (const TraceSummary &other);

  bool operator== (const TraceSummary &) const = default;
};

/// S_k = bits_k / elapsed, Ē_k = E * seconds_k / elapsed, B_k = Ē_k / S_k.
/// `names` is only used to label the error for a node without deliveries.
OperatingPoint finalize (const TraceSummary &trace, double power,
                         std::span<const std::string> names = {});

struct RelativeChange
{
  std::vector<double> throughput_gain_pct;
  std::vector<double> bit_cost_increase_pct;
};

RelativeChange relative_to (const OperatingPoint &point, const OperatingPoint &baseline);

/// Throughput of node `k` on the time-sharing curve between `a` and `b` at the
/// sharing factor whose bit-cost equals `bit_cost`. The factor is clamped to
/// [0, 1], so costs beyond either end map to that end point.
double curve_throughput_at_cost (const OperatingPoint &a, const OperatingPoint &b, NodeIndex k,
                                 double bit_cost);

} // namespace fairmac
