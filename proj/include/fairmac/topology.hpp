#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fairmac {

/// Position of a node in the network's ordered node list.
using NodeIndex = std::size_t;

class DomainError : public std::domain_error
{
public:
  using std::domain_error::domain_error;
};

/// Uplink network: every node sends to a common access point.
///
/// Rates are in bit/s and packets carry one bit, so 1/rate is the airtime of a
/// packet in seconds. A missing inter-node link means the link is unusable.
class Network
{
public:
  Network (std::vector<std::string> names, std::vector<double> ap_rates,
           std::map<std::pair<NodeIndex, NodeIndex>, double> link_rates, double power);

  std::size_t size () const { return m_names.size (); }
  const std::vector<std::string> &names () const { return m_names; }
  const std::string &name (NodeIndex k) const { return m_names.at (k); }
  NodeIndex index_of (const std::string &name) const;

  double ap_rate (NodeIndex k) const { return m_apRates.at (k); }
  std::optional<double> link_rate (NodeIndex from, NodeIndex to) const;
  const std::map<std::pair<NodeIndex, NodeIndex>, double> &link_rates () const { return m_linkRates; }
  double power () const { return m_power; }

  /// Same topology with every rate multiplied by `factor`.
  Network scaled (double factor) const;

  bool operator== (const Network &) const = default;

private:
  std::vector<std::string> m_names;
  std::vector<double> m_apRates;
  std::map<std::pair<NodeIndex, NodeIndex>, double> m_linkRates;
  double m_power;
};

enum class NodeClass { Direct, Helper, ViaHelper };

/// Result of applying the two-hop helper rule to every node.
struct HelperAssignment
{
  std::vector<std::optional<NodeIndex>> helper;
  std::vector<NodeIndex> direct_set;  // D, node-list order
  std::vector<NodeIndex> via_set;     // C
  std::vector<NodeIndex> helper_set;  // H, subset of D
  std::vector<unsigned> help_count;   // H_k

  NodeClass node_class (NodeIndex k) const;
  bool is_via (NodeIndex k) const { return helper.at (k).has_value (); }

  bool operator== (const HelperAssignment &) const = default;
};

enum class Mode { Direct, Cooperative };

/// Per-bit travel time s_k (both hops) and first-hop packet duration u_k.
struct TimingProfile
{
  std::vector<double> travel_time;
  std::vector<double> packet_duration;
  Mode mode;
};

/// Best two-hop relay for `k`: the argmin of 1/R_kh + 1/R_h over nodes with a
/// usable link from k, kept only if strictly faster than the direct 1/R_k.
/// Ties go to the earliest node. Throws DomainError for an unknown index.
std::optional<NodeIndex> select_helper (const Network &net, NodeIndex k);

/// Helper assignment for the whole network. Only nodes that would transmit
/// directly on their own are eligible as helpers, so relay chains never form.
HelperAssignment classify (const Network &net);

TimingProfile timing (const Network &net, const HelperAssignment &assign, Mode mode);

const char *to_string (Mode mode);
const char *to_string (NodeClass cls);

} // namespace fairmac
