#include "fairmac/protocols.hpp"

#include <algorithm>
#include <map>

namespace fairmac {

namespace {

std::vector<double>
direct_airtimes (const Network &net)
{
  std::vector<double> t (net.size ());
  for (NodeIndex k = 0; k < net.size (); ++k)
    t[k] = 1.0 / net.ap_rate (k);
  return t;
}

std::vector<double>
first_hop_airtimes (const Network &net, const HelperAssignment &assign)
{
  std::vector<double> t (net.size (), 0.0);
  for (NodeIndex k : assign.via_set)
    t[k] = 1.0 / *net.link_rate (k, *assign.helper[k]);
  return t;
}

Transmission
own_direct (NodeIndex k, double airtime)
{
  Transmission tx;
  tx.sender = k;
  tx.kind = PayloadKind::Own;
  tx.airtime = airtime;
  tx.busy_time = airtime;
  return tx;
}

} // namespace

DirectLink::DirectLink (const Network &net) : m_directAirtime (direct_airtimes (net)) {}

Transmission
DirectLink::prepare (NodeIndex k)
{
  return own_direct (k, m_directAirtime.at (k));
}

SuccessEffects
DirectLink::on_success (const Transmission &tx)
{
  return SuccessEffects{{Delivery{tx.sender, 1}}, {}};
}

CoopMac::CoopMac (const Network &net, const HelperAssignment &assign)
  : m_helper (assign.helper),
    m_directAirtime (direct_airtimes (net)),
    m_firstHopAirtime (first_hop_airtimes (net, assign))
{
}

Transmission
CoopMac::prepare (NodeIndex k)
{
  if (!m_helper.at (k))
    return own_direct (k, m_directAirtime[k]);
  const NodeIndex h = *m_helper[k];
  Transmission tx;
  tx.sender = k;
  tx.kind = PayloadKind::Relayed;
  tx.relay = h;
  tx.airtime = m_firstHopAirtime[k];
  tx.busy_time = m_firstHopAirtime[k] + m_directAirtime[h];
  return tx;
}

SuccessEffects
CoopMac::on_success (const Transmission &tx)
{
  SuccessEffects fx;
  fx.delivered.push_back ({tx.sender, 1});
  if (tx.kind == PayloadKind::Relayed)
    fx.relay_airtime.push_back ({*tx.relay, m_directAirtime[*tx.relay]});
  return fx;
}

FairMac::FairMac (const Network &net, const HelperAssignment &assign, std::uint64_t max_pending,
                  std::uint64_t max_forward)
  : m_directAirtime (direct_airtimes (net)),
    m_firstHopAirtime (first_hop_airtimes (net, assign)),
    m_sources (net.size ()),
    m_helpers (net.size ()),
    m_samples (net.size ()),
    m_nextSequence (net.size (), 0),
    m_handedOver (net.size (), 0)
{
  for (NodeIndex k = 0; k < net.size (); ++k)
    {
      m_sources[k].max_pending = max_pending;
      m_sources[k].helper = assign.helper.at (k);
      m_helpers[k].max_forward = max_forward;
    }
}

Transmission
FairMac::prepare (NodeIndex k)
{
  const FairMacSourceState &src = m_sources.at (k);
  if (src.helper)
    {
      if (src.pending < src.max_pending)
        {
          Transmission tx;
          tx.sender = k;
          tx.kind = PayloadKind::FirstHop;
          tx.relay = src.helper;
          tx.airtime = m_firstHopAirtime[k];
          tx.busy_time = tx.airtime;
          return tx;
        }
      return own_direct (k, m_directAirtime[k]);
    }

  // Joint packets are assembled fresh from the queue head at every attempt.
  const FairMacHelperState &hs = m_helpers[k];
  QueueSamples &samples = m_samples[k];
  ++samples.count;
  samples.total += hs.forward_queue.size ();

  const std::size_t m = static_cast<std::size_t> (
      std::min<std::uint64_t> (hs.max_forward, hs.forward_queue.size ()));
  Transmission tx;
  tx.sender = k;
  tx.kind = PayloadKind::Joint;
  tx.forwarded.reserve (m);
  for (std::size_t i = 0; i < m; ++i)
    tx.forwarded.push_back (hs.forward_queue[i].source);
  tx.airtime = static_cast<double> (1 + m) * m_directAirtime[k];
  tx.busy_time = tx.airtime;
  return tx;
}

void
FairMac::accept_first_hop (const Transmission &tx)
{
  const NodeIndex h = *tx.relay;
  FairMacSourceState &src = m_sources.at (tx.sender);
  if (src.helper != h || m_sources.at (h).helper)
    throw ProtocolError ("fairmac: preACK from node #" + std::to_string (h) +
                         " for a source it does not help (#" + std::to_string (tx.sender) + ")");
  m_helpers[h].forward_queue.push_back ({tx.sender, m_nextSequence[tx.sender]++});
  ++src.pending;
  ++m_handedOver[tx.sender];
}

void
FairMac::deliver_joint (const Transmission &tx, SuccessEffects &fx)
{
  FairMacHelperState &hs = m_helpers.at (tx.sender);
  if (tx.forwarded.size () > hs.forward_queue.size ())
    throw ProtocolError ("fairmac: joint packet forwards more than the queue holds");

  fx.delivered.push_back ({tx.sender, 1});
  ++m_nextSequence[tx.sender];

  // jointACK: every source loses as many pending packets as were forwarded
  std::map<NodeIndex, std::uint64_t> perSource;
  for (std::size_t i = 0; i < tx.forwarded.size (); ++i)
    {
      const QueuedPacket &qp = hs.forward_queue[i];
      if (qp.source != tx.forwarded[i])
        throw ProtocolError ("fairmac: forwarding queue changed under a joint packet");
      ++perSource[qp.source];
    }
  hs.forward_queue.erase (hs.forward_queue.begin (),
                          hs.forward_queue.begin () + static_cast<std::ptrdiff_t> (tx.forwarded.size ()));
  for (const auto &[source, count] : perSource)
    {
      FairMacSourceState &src = m_sources.at (source);
      if (src.helper != tx.sender || src.pending < count)
        throw ProtocolError ("fairmac: jointACK for node #" + std::to_string (source) +
                             " that has no matching pending packets");
      src.pending -= count;
      fx.delivered.push_back ({source, count});
    }
}

SuccessEffects
FairMac::on_success (const Transmission &tx)
{
  SuccessEffects fx;
  switch (tx.kind)
    {
    case PayloadKind::FirstHop:
      accept_first_hop (tx);
      break;
    case PayloadKind::Joint:
      deliver_joint (tx, fx);
      break;
    case PayloadKind::Own:
      fx.delivered.push_back ({tx.sender, 1});
      ++m_nextSequence[tx.sender];
      break;
    case PayloadKind::Relayed:
      throw ProtocolError ("fairmac: relayed payloads belong to CoopMAC");
    }
  return fx;
}

std::unique_ptr<Protocol>
make_protocol (const ProtocolSpec &spec, const Network &net, const HelperAssignment &assign)
{
  switch (spec.kind)
    {
    case ProtocolKind::DirectLink:
      return std::make_unique<DirectLink> (net);
    case ProtocolKind::CoopMac:
      return std::make_unique<CoopMac> (net, assign);
    case ProtocolKind::FairMac:
      return std::make_unique<FairMac> (net, assign, spec.max_pending, spec.max_forward);
    }
  throw DomainError ("unknown protocol");
}

const char *
to_string (ProtocolKind kind)
{
  switch (kind)
    {
    case ProtocolKind::DirectLink:
      return "direct";
    case ProtocolKind::CoopMac:
      return "coopmac";
    case ProtocolKind::FairMac:
      return "fairmac";
    }
  return "?";
}

ProtocolKind
parse_protocol_kind (const std::string &text)
{
  if (text == "direct")
    return ProtocolKind::DirectLink;
  if (text == "coopmac")
    return ProtocolKind::CoopMac;
  if (text == "fairmac")
    return ProtocolKind::FairMac;
  throw DomainError ("unknown protocol '" + text + "' (expected direct, coopmac or fairmac)");
}

} // namespace fairmac
