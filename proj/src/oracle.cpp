#include "fairmac/oracle.hpp"

#include <algorithm>
#include <bit>
#include <string>

namespace fairmac::oracle {

double
PhaseEnumeration::total_probability () const
{
  double sum = 0.0;
  for (const Pattern &p : patterns)
    sum += p.probability;
  return sum;
}

double
PhaseEnumeration::expected_duration () const
{
  double sum = 0.0;
  for (const Pattern &p : patterns)
    sum += p.probability * p.duration;
  return sum;
}

PhaseEnumeration
enumerate_patterns (const Network &net, const HelperAssignment &assign, Mode mode,
                    const CsmaParams &params)
{
  const std::size_t n = net.size ();
  if (n == 0)
    throw DomainError ("oracle: network has no nodes");
  if (n > max_nodes)
    throw DomainError ("oracle: enumeration is limited to " + std::to_string (max_nodes) +
                       " nodes, network has " + std::to_string (n));
  const double tau = params.tau ();
  const double sigma = params.sigma ();
  const TimingProfile tp = timing (net, assign, mode);

  PhaseEnumeration e;
  const std::uint32_t count = std::uint32_t{1} << n;
  e.patterns.reserve (count);
  for (std::uint32_t mask = 0; mask < count; ++mask)
    {
      Pattern p{mask, 1.0, PatternKind::Idle, std::nullopt, sigma};
      double longest = 0.0;
      for (NodeIndex k = 0; k < n; ++k)
        {
          const bool sends = (mask >> k) & 1u;
          p.probability *= sends ? tau : 1.0 - tau;
          if (sends)
            longest = std::max (longest, tp.packet_duration[k]);
        }
      const int senders = std::popcount (mask);
      if (senders == 1)
        {
          p.kind = PatternKind::Success;
          p.winner = static_cast<NodeIndex> (std::countr_zero (mask));
          p.duration = tp.travel_time[*p.winner] + sigma;
        }
      else if (senders > 1)
        {
          p.kind = PatternKind::Collision;
          p.duration = longest + sigma;
        }
      e.patterns.push_back (p);
    }
  return e;
}

PhaseExpectations
enumerate_phase (const Network &net, const HelperAssignment &assign, Mode mode,
                 const CsmaParams &params)
{
  const PhaseEnumeration e = enumerate_patterns (net, assign, mode, params);
  PhaseExpectations x{};
  double successMass = 0.0;
  for (const Pattern &p : e.patterns)
    {
      const double weighted = p.probability * p.duration;
      switch (p.kind)
        {
        case PatternKind::Idle:
          x.p_idle += p.probability;
          x.t_idle += weighted;
          break;
        case PatternKind::Success:
          successMass += p.probability;
          x.t_success += weighted;
          break;
        case PatternKind::Collision:
          x.t_collision += weighted;
          break;
        }
    }
  // every node is equally likely to be the lone transmitter
  x.p_success = successMass / static_cast<double> (net.size ());
  return x;
}

} // namespace fairmac::oracle
