#pragma once

#include "fairmac/topology.hpp"

#include <cstdint>
#include <deque>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fairmac {

/// Broken protocol bookkeeping, e.g. an acknowledgement for a node that never
/// sent through this helper.
class ProtocolError : public std::logic_error
{
public:
  using std::logic_error::logic_error;
};

enum class ProtocolKind { DirectLink, CoopMac, FairMac };

struct ProtocolSpec
{
  ProtocolKind kind = ProtocolKind::DirectLink;
  std::uint64_t max_pending = 10;  // P, fairMAC only
  std::uint64_t max_forward = 0;   // Q, fairMAC only
};

enum class PayloadKind {
  Own,         // own bit straight to the AP
  Relayed,     // own bit via the helper, forwarded within the same phase (CoopMAC)
  FirstHop,    // own bit handed to the helper for later forwarding (fairMAC)
  Joint,       // own bit plus queued bits of other nodes (fairMAC)
};

/// What a contending node puts on the air when it wins access.
struct Transmission
{
  NodeIndex sender = 0;
  PayloadKind kind = PayloadKind::Own;
  double airtime = 0.0;    // sender's own transmission, the part that can collide
  double busy_time = 0.0;  // channel occupancy of a success, relay hop included
  std::optional<NodeIndex> relay;
  std::vector<NodeIndex> forwarded;  // sources of the forwarded bits, queue order
};

struct Delivery
{
  NodeIndex owner;
  std::uint64_t bits;

  bool operator== (const Delivery &) const = default;
};

struct RelayAirtime
{
  NodeIndex node;
  double seconds;
};

/// Side effects of a successful transmission.
struct SuccessEffects
{
  std::vector<Delivery> delivered;
  std::vector<RelayAirtime> relay_airtime;
};

/// Node-level MAC behaviour plugged into the contention engine. Every node is
/// saturated; the engine asks for the transmission a node would start now and
/// reports how the phase ended.
class Protocol
{
public:
  virtual ~Protocol () = default;

  virtual Transmission prepare (NodeIndex k) = 0;
  virtual SuccessEffects on_success (const Transmission &tx) = 0;
  virtual void on_collision (const Transmission &tx) = 0;
  virtual std::string name () const = 0;
};

class DirectLink : public Protocol
{
public:
  explicit DirectLink (const Network &net);

  Transmission prepare (NodeIndex k) override;
  SuccessEffects on_success (const Transmission &tx) override;
  void on_collision (const Transmission &) override {}
  std::string name () const override { return "direct"; }

private:
  std::vector<double> m_directAirtime;
};

/// CoopMAC base mode: a node with a helper always goes through it and the
/// helper forwards right away.
class CoopMac : public Protocol
{
public:
  CoopMac (const Network &net, const HelperAssignment &assign);

  Transmission prepare (NodeIndex k) override;
  SuccessEffects on_success (const Transmission &tx) override;
  void on_collision (const Transmission &) override {}
  std::string name () const override { return "coopmac"; }

private:
  std::vector<std::optional<NodeIndex>> m_helper;
  std::vector<double> m_directAirtime;
  std::vector<double> m_firstHopAirtime;
};

struct FairMacSourceState
{
  std::uint64_t pending = 0;  // p
  std::uint64_t max_pending = 0;
  std::optional<NodeIndex> helper;
};

struct QueuedPacket
{
  NodeIndex source;
  std::uint64_t sequence;
};

struct FairMacHelperState
{
  std::deque<QueuedPacket> forward_queue;
  std::uint64_t max_forward = 0;
};

/// Queue length of a helper right before it transmits, accumulated over a run.
struct QueueSamples
{
  std::uint64_t count = 0;
  std::uint64_t total = 0;

  double mean () const { return count ? static_cast<double> (total) / count : 0.0; }
};

/// fairMAC: sources hand bits to their helper while fewer than P are pending;
/// the helper decides when to forward, up to Q at a time inside its own packets.
class FairMac : public Protocol
{
public:
  FairMac (const Network &net, const HelperAssignment &assign, std::uint64_t max_pending,
           std::uint64_t max_forward);

  Transmission prepare (NodeIndex k) override;
  SuccessEffects on_success (const Transmission &tx) override;
  void on_collision (const Transmission &) override {}
  std::string name () const override { return "fairmac"; }

  const FairMacSourceState &source (NodeIndex k) const { return m_sources.at (k); }
  const FairMacHelperState &helper (NodeIndex k) const { return m_helpers.at (k); }
  const QueueSamples &queue_samples (NodeIndex k) const { return m_samples.at (k); }

  /// First-hop packets accepted by the helper (preACKs received) per source.
  std::uint64_t handed_over (NodeIndex k) const { return m_handedOver.at (k); }

private:
  void accept_first_hop (const Transmission &tx);
  void deliver_joint (const Transmission &tx, SuccessEffects &fx);

  std::vector<double> m_directAirtime;
  std::vector<double> m_firstHopAirtime;
  std::vector<FairMacSourceState> m_sources;
  std::vector<FairMacHelperState> m_helpers;
  std::vector<QueueSamples> m_samples;
  std::vector<std::uint64_t> m_nextSequence;
  std::vector<std::uint64_t> m_handedOver;
};

std::unique_ptr<Protocol> make_protocol (const ProtocolSpec &spec, const Network &net,
                                         const HelperAssignment &assign);

const char *to_string (ProtocolKind kind);
ProtocolKind parse_protocol_kind (const std::string &text);

} // namespace fairmac
