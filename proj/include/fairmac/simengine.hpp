#pragma once

#include "fairmac/analytic.hpp"
#include "fairmac/metrics.hpp"
#include "fairmac/protocols.hpp"

#include <cstdint>
#include <memory>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

namespace fairmac {

class SimulationError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// SplitMix64 finalizer applied to base + index; gives decorrelated seeds for
/// replicated runs from one user-supplied seed.
std::uint64_t derive_seed (std::uint64_t base, std::uint64_t index);

struct SimConfig
{
  CsmaParams params{0.0001, 0.0033};
  std::uint64_t contention_phases = 30000;
  std::uint64_t seed = 0;
  ProtocolSpec protocol;
  bool count_idle_phases = false;      // stop after this many phases of any kind
  std::uint64_t warmup_phases = 0;     // counted phases dropped from the ledger
  std::uint64_t max_slots = 1'000'000'000;

  /// Throws DomainError for out-of-range settings.
  void validate () const;
};

enum class PhaseKind { Idle, Success, Collision };

struct PhaseOutcome
{
  PhaseKind kind = PhaseKind::Idle;
  std::vector<NodeIndex> transmitters;
  double duration = 0.0;
  std::vector<Delivery> delivered;
};

/// Slotted CSMA contention among saturated nodes.
///
/// Every slot each node transmits with probability tau, drawn in node-list
/// order from a std::mt19937_64 stream seeded with the run seed. A silent slot
/// lasts sigma. A busy phase lasts its transmission plus one trailing idle slot
/// in which nobody contends. Not thread-safe; use one engine per thread.
class Engine
{
public:
  Engine (const Network &net, const HelperAssignment &assign, const SimConfig &cfg);

  /// Draws one slot and resolves it.
  PhaseOutcome step_phase ();

  /// Resolves a slot with the given transmit decisions, one per node.
  PhaseOutcome resolve (std::span<const bool> transmits);

  const TraceSummary &summary () const { return m_summary; }
  void reset_summary () { m_summary = TraceSummary (m_net.size ()); }
  Protocol &protocol () { return *m_protocol; }
  std::uint64_t slots () const { return m_slots; }

private:
  double uniform ();

  Network m_net;
  SimConfig m_cfg;
  std::unique_ptr<Protocol> m_protocol;
  std::mt19937_64 m_rng;
  TraceSummary m_summary;
  std::uint64_t m_slots = 0;
  std::unique_ptr<bool[]> m_draws;
  std::vector<Transmission> m_attempts;
};

/// Runs until cfg.contention_phases phases (busy ones unless idle phases are
/// counted) are complete. Throws SimulationError once max_slots is exceeded.
TraceSummary run (const Network &net, const HelperAssignment &assign, const SimConfig &cfg);

/// Same, but keeps the engine so the protocol state can be inspected.
TraceSummary run (Engine &engine, const SimConfig &cfg);

} // namespace fairmac
