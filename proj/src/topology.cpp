#include "fairmac/topology.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace fairmac {

namespace {

bool
positive_finite (double x)
{
  return std::isfinite (x) && x > 0.0;
}

// argmin of the two-hop time over candidates accepted by `eligible`, or none
// when no candidate strictly beats the direct time.
template <typename Pred>
std::optional<NodeIndex>
best_relay (const Network &net, NodeIndex k, Pred eligible)
{
  std::optional<NodeIndex> best;
  double bestTime = 0.0;
  for (NodeIndex l = 0; l < net.size (); ++l)
    {
      if (l == k || !eligible (l))
        continue;
      auto r = net.link_rate (k, l);
      if (!r)
        continue;
      double t = 1.0 / *r + 1.0 / net.ap_rate (l);
      if (!best || t < bestTime)
        {
          best = l;
          bestTime = t;
        }
    }
  if (best && bestTime < 1.0 / net.ap_rate (k))
    return best;
  return std::nullopt;
}

} // namespace

Network::Network (std::vector<std::string> names, std::vector<double> ap_rates,
                  std::map<std::pair<NodeIndex, NodeIndex>, double> link_rates, double power)
  : m_names (std::move (names)),
    m_apRates (std::move (ap_rates)),
    m_linkRates (std::move (link_rates)),
    m_power (power)
{
  if (m_names.size () != m_apRates.size ())
    throw DomainError ("network: every node needs exactly one ap rate");
  std::set<std::string> seen;
  for (NodeIndex k = 0; k < m_names.size (); ++k)
    {
      if (m_names[k].empty ())
        throw DomainError ("network: empty node identifier");
      if (!seen.insert (m_names[k]).second)
        throw DomainError ("network: duplicate node '" + m_names[k] + "'");
      if (!positive_finite (m_apRates[k]))
        throw DomainError ("network: ap rate of '" + m_names[k] + "' must be finite and > 0");
    }
  for (const auto &[link, rate] : m_linkRates)
    {
      if (link.first >= m_names.size () || link.second >= m_names.size ())
        throw DomainError ("network: link endpoint out of range");
      if (link.first == link.second)
        throw DomainError ("network: self link at '" + m_names[link.first] + "'");
      if (!positive_finite (rate))
        throw DomainError ("network: link rate " + m_names[link.first] + "->" +
                           m_names[link.second] + " must be finite and > 0");
    }
  if (!positive_finite (m_power))
    throw DomainError ("network: transmit power must be finite and > 0");
}

NodeIndex
Network::index_of (const std::string &name) const
{
  auto it = std::find (m_names.begin (), m_names.end (), name);
  if (it == m_names.end ())
    throw DomainError ("unknown node '" + name + "'");
  return static_cast<NodeIndex> (it - m_names.begin ());
}

std::optional<double>
Network::link_rate (NodeIndex from, NodeIndex to) const
{
  auto it = m_linkRates.find ({from, to});
  if (it == m_linkRates.end ())
    return std::nullopt;
  return it->second;
}

Network
Network::scaled (double factor) const
{
  std::vector<double> ap = m_apRates;
  for (double &r : ap)
    r *= factor;
  auto links = m_linkRates;
  for (auto &entry : links)
    entry.second *= factor;
  return Network (m_names, std::move (ap), std::move (links), m_power);
}

NodeClass
HelperAssignment::node_class (NodeIndex k) const
{
  if (helper.at (k))
    return NodeClass::ViaHelper;
  return help_count.at (k) > 0 ? NodeClass::Helper : NodeClass::Direct;
}

std::optional<NodeIndex>
select_helper (const Network &net, NodeIndex k)
{
  if (k >= net.size ())
    throw DomainError ("select_helper: unknown node index " + std::to_string (k));
  return best_relay (net, k, [] (NodeIndex) { return true; });
}

HelperAssignment
classify (const Network &net)
{
  const std::size_t n = net.size ();
  std::vector<bool> selfDirect (n);
  for (NodeIndex k = 0; k < n; ++k)
    selfDirect[k] = !select_helper (net, k).has_value ();

  HelperAssignment a;
  a.helper.resize (n);
  a.help_count.assign (n, 0);
  for (NodeIndex k = 0; k < n; ++k)
    {
      if (selfDirect[k])
        continue;
      a.helper[k] = best_relay (net, k, [&] (NodeIndex l) { return selfDirect[l]; });
    }
  for (NodeIndex k = 0; k < n; ++k)
    {
      if (a.helper[k])
        {
          a.via_set.push_back (k);
          ++a.help_count[*a.helper[k]];
        }
      else
        a.direct_set.push_back (k);
    }
  for (NodeIndex k : a.direct_set)
    if (a.help_count[k] > 0)
      a.helper_set.push_back (k);
  return a;
}

TimingProfile
timing (const Network &net, const HelperAssignment &assign, Mode mode)
{
  const std::size_t n = net.size ();
  TimingProfile t{std::vector<double> (n), std::vector<double> (n), mode};
  for (NodeIndex k = 0; k < n; ++k)
    {
      const double direct = 1.0 / net.ap_rate (k);
      if (mode == Mode::Cooperative && assign.helper.at (k))
        {
          NodeIndex h = *assign.helper[k];
          const double firstHop = 1.0 / *net.link_rate (k, h);
          t.packet_duration[k] = firstHop;
          t.travel_time[k] = firstHop + 1.0 / net.ap_rate (h);
        }
      else
        {
          t.packet_duration[k] = direct;
          t.travel_time[k] = direct;
        }
    }
  return t;
}

const char *
to_string (Mode mode)
{
  return mode == Mode::Direct ? "direct" : "cooperative";
}

const char *
to_string (NodeClass cls)
{
  switch (cls)
    {
    case NodeClass::Direct:
      return "D";
    case NodeClass::Helper:
      return "H";
    case NodeClass::ViaHelper:
      return "C";
    }
  return "?";
}

} // namespace fairmac
