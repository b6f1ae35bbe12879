#include "fairmac/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace fairmac {

namespace {

// H_k as it enters the bit-cost: nobody forwards in Direct Link.
double
forwarded_per_round (const HelperAssignment &assign, Mode mode, NodeIndex k)
{
  return mode == Mode::Direct ? 0.0 : static_cast<double> (assign.help_count.at (k));
}

double
binomial (unsigned n, unsigned k)
{
  double c = 1.0;
  for (unsigned i = 1; i <= k; ++i)
    c = c * static_cast<double> (n - k + i) / static_cast<double> (i);
  return c;
}

} // namespace

CsmaParams::CsmaParams (double sigma, double tau) : m_sigma (sigma), m_tau (tau)
{
  if (!(std::isfinite (sigma) && sigma > 0.0))
    throw DomainError ("csma: slot length sigma must be > 0, got " + std::to_string (sigma));
  if (!(tau >= 0.0 && tau <= 1.0))
    throw DomainError ("csma: transmit probability tau must lie in [0, 1], got " +
                       std::to_string (tau));
}

CsmaParams
CsmaParams::with_sqrt_scaling (double sigma, double coeff)
{
  if (!(coeff > 0.0))
    throw DomainError ("csma: tau coefficient must be > 0");
  if (!(sigma > 0.0))
    throw DomainError ("csma: slot length sigma must be > 0");
  return CsmaParams (sigma, coeff * std::sqrt (sigma));
}

double
OperatingPoint::mean_throughput () const
{
  if (throughput.empty ())
    return 0.0;
  return std::accumulate (throughput.begin (), throughput.end (), 0.0) /
         static_cast<double> (throughput.size ());
}

OperatingPoint
uniform_point (double throughput, std::vector<double> bit_cost)
{
  OperatingPoint p;
  p.throughput.assign (bit_cost.size (), throughput);
  p.avg_power.resize (bit_cost.size ());
  for (std::size_t k = 0; k < bit_cost.size (); ++k)
    p.avg_power[k] = bit_cost[k] * throughput;
  p.bit_cost = std::move (bit_cost);
  return p;
}

OperatingPoint
rr_performance (const Network &net, const HelperAssignment &assign, Mode mode)
{
  const TimingProfile tp = timing (net, assign, mode);
  const double round = std::accumulate (tp.travel_time.begin (), tp.travel_time.end (), 0.0);
  std::vector<double> cost (net.size ());
  for (NodeIndex k = 0; k < net.size (); ++k)
    {
      // transmission time per round: own packet plus one forward per helped node
      const double t = (forwarded_per_round (assign, mode, k) + 1.0) * tp.packet_duration[k];
      cost[k] = t * net.power ();
    }
  return uniform_point (1.0 / round, std::move (cost));
}

PhaseExpectations
csma_phase_expectations (const Network &net, const HelperAssignment &assign, Mode mode,
                         const CsmaParams &params)
{
  const std::size_t n = net.size ();
  if (n == 0)
    throw DomainError ("csma: network has no nodes");
  const double tau = params.tau ();
  const double sigma = params.sigma ();
  const TimingProfile tp = timing (net, assign, mode);

  PhaseExpectations e{};
  e.p_success = tau * std::pow (1.0 - tau, static_cast<double> (n - 1));
  e.p_idle = std::pow (1.0 - tau, static_cast<double> (n));
  e.t_idle = e.p_idle * sigma;
  for (NodeIndex k = 0; k < n; ++k)
    e.t_success += e.p_success * (tp.travel_time[k] + sigma);

  std::vector<NodeIndex> order (n);
  std::iota (order.begin (), order.end (), NodeIndex{0});
  std::stable_sort (order.begin (), order.end (), [&] (NodeIndex a, NodeIndex b) {
    return tp.packet_duration[a] < tp.packet_duration[b];
  });

  // The node at sorted position i (0-based) defines the collision length when it
  // transmits, every longer node stays silent and at least one shorter node
  // transmits as well.
  for (unsigned i = 1; i < n; ++i)
    {
      const double longestSilent = tau * std::pow (1.0 - tau, static_cast<double> (n - 1 - i));
      double someShorter = 0.0;
      for (unsigned l = 1; l <= i; ++l)
        someShorter += binomial (i, l) * std::pow (tau, static_cast<double> (l)) *
                       std::pow (1.0 - tau, static_cast<double> (i - l));
      e.t_collision += longestSilent * someShorter * (tp.packet_duration[order[i]] + sigma);
    }
  return e;
}

double
csma_throughput (const PhaseExpectations &phase)
{
  return phase.p_success / (phase.t_success + phase.t_collision + phase.t_idle);
}

std::vector<double>
csma_bitcost (const Network &net, const HelperAssignment &assign, Mode mode,
              const CsmaParams &params)
{
  const std::size_t n = net.size ();
  if (n == 0)
    throw DomainError ("csma: network has no nodes");
  if (params.tau () >= 1.0 && n > 1)
    throw DomainError ("csma: bit-cost undefined for tau = 1 with more than one node");
  const TimingProfile tp = timing (net, assign, mode);
  // tau / p_s without the 0/0 at tau = 0
  const double attempts = std::pow (1.0 - params.tau (), -static_cast<double> (n - 1));
  std::vector<double> cost (n);
  for (NodeIndex k = 0; k < n; ++k)
    cost[k] = (forwarded_per_round (assign, mode, k) + attempts) * tp.packet_duration[k] *
              net.power ();
  return cost;
}

OperatingPoint
csma_performance (const Network &net, const HelperAssignment &assign, Mode mode,
                  const CsmaParams &params)
{
  const double s = csma_throughput (csma_phase_expectations (net, assign, mode, params));
  return uniform_point (s, csma_bitcost (net, assign, mode, params));
}

OperatingPoint
asymptotic_performance (const Network &net, const HelperAssignment &assign, Mode mode)
{
  const TimingProfile tp = timing (net, assign, mode);
  const double round = std::accumulate (tp.travel_time.begin (), tp.travel_time.end (), 0.0);
  std::vector<double> cost (net.size ());
  for (NodeIndex k = 0; k < net.size (); ++k)
    cost[k] = (forwarded_per_round (assign, mode, k) + 1.0) * tp.packet_duration[k] * net.power ();
  return uniform_point (1.0 / round, std::move (cost));
}

OperatingPoint
fairmac_infty_asymptotic (const Network &net, const HelperAssignment &assign)
{
  return asymptotic_performance (net, assign, Mode::Cooperative);
}

RoundLengthForms
fairmac_infty_round_length (const Network &net, const HelperAssignment &assign)
{
  RoundLengthForms f{0.0, 0.0};
  for (NodeIndex k : assign.direct_set)
    {
      const double direct = 1.0 / net.ap_rate (k);
      // expected joint packet of a helper carries H_k forwarded bits
      f.by_class += (1.0 + assign.help_count[k]) * direct;
      f.by_travel_time += direct;
    }
  for (NodeIndex k : assign.via_set)
    {
      const NodeIndex h = *assign.helper[k];
      const double firstHop = 1.0 / *net.link_rate (k, h);
      f.by_class += firstHop;
      f.by_travel_time += firstHop + 1.0 / net.ap_rate (h);
    }
  return f;
}

OperatingPoint
timeshare (const OperatingPoint &a, const OperatingPoint &b, double alpha)
{
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw DomainError ("timeshare: alpha must lie in [0, 1], got " + std::to_string (alpha));
  if (a.size () != b.size ())
    throw DomainError ("timeshare: operating points cover different node sets");
  OperatingPoint p;
  const std::size_t n = a.size ();
  p.throughput.resize (n);
  p.avg_power.resize (n);
  p.bit_cost.resize (n);
  for (std::size_t k = 0; k < n; ++k)
    {
      if (alpha == 1.0)
        {
          p.throughput[k] = a.throughput[k];
          p.avg_power[k] = a.avg_power[k];
          p.bit_cost[k] = a.bit_cost[k];
          continue;
        }
      if (alpha == 0.0)
        {
          p.throughput[k] = b.throughput[k];
          p.avg_power[k] = b.avg_power[k];
          p.bit_cost[k] = b.bit_cost[k];
          continue;
        }
      p.throughput[k] = alpha * a.throughput[k] + (1.0 - alpha) * b.throughput[k];
      p.avg_power[k] = alpha * a.avg_power[k] + (1.0 - alpha) * b.avg_power[k];
      p.bit_cost[k] = p.avg_power[k] / p.throughput[k];
    }
  return p;
}

} // namespace fairmac
