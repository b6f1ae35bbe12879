#pragma once

#include "fairmac/analytic.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace fairmac::oracle {

inline constexpr std::size_t max_nodes = 20;

enum class PatternKind { Idle, Success, Collision };

/// One of the 2^N transmit patterns of a contention slot. Bit k of `mask` set
/// means node k transmits.
struct Pattern
{
  std::uint32_t mask;
  double probability;
  PatternKind kind;
  std::optional<NodeIndex> winner;
  double duration;
};

struct PhaseEnumeration
{
  std::vector<Pattern> patterns;

  double total_probability () const;
  double expected_duration () const;
};

/// All transmit patterns of one slot with their probabilities and phase lengths:
/// idle -> sigma, single transmitter k -> s_k + sigma, collision -> longest
/// transmitted packet + sigma. Refuses networks larger than max_nodes.
PhaseEnumeration enumerate_patterns (const Network &net, const HelperAssignment &assign,
                                     Mode mode, const CsmaParams &params);

/// Phase expectations by direct summation over enumerate_patterns().
PhaseExpectations enumerate_phase (const Network &net, const HelperAssignment &assign, Mode mode,
                                   const CsmaParams &params);

} // namespace fairmac::oracle
