#include "fairmac/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace fairmac {

TraceSummary &
TraceSummary::operator+= (const TraceSummary &other)
{
  if (other.size () != size ())
    throw DomainError ("trace: cannot merge ledgers over different node sets");
  elapsed += other.elapsed;
  for (std::size_t k = 0; k < size (); ++k)
    {
      delivered_bits[k] += other.delivered_bits[k];
      transmit_seconds[k] += other.transmit_seconds[k];
    }
  phase_counts.idle += other.phase_counts.idle;
  phase_counts.success += other.phase_counts.success;
  phase_counts.collision += other.phase_counts.collision;
  return *this;
}

OperatingPoint
finalize (const TraceSummary &trace, double power, std::span<const std::string> names)
{
  if (!(trace.elapsed > 0.0))
    throw InsufficientRunLength ("finalize: no simulated time elapsed");
  OperatingPoint p;
  const std::size_t n = trace.size ();
  p.throughput.resize (n);
  p.avg_power.resize (n);
  p.bit_cost.resize (n);
  for (std::size_t k = 0; k < n; ++k)
    {
      if (trace.delivered_bits[k] == 0)
        {
          std::string who = k < names.size () ? names[k] : "#" + std::to_string (k);
          throw InsufficientRunLength ("insufficient run length: node '" + who +
                                       "' delivered no data, bit-cost is undefined");
        }
      p.throughput[k] = static_cast<double> (trace.delivered_bits[k]) / trace.elapsed;
      p.avg_power[k] = power * trace.transmit_seconds[k] / trace.elapsed;
      p.bit_cost[k] = p.avg_power[k] / p.throughput[k];
    }
  return p;
}

RelativeChange
relative_to (const OperatingPoint &point, const OperatingPoint &baseline)
{
  if (point.size () != baseline.size ())
    throw DomainError ("relative_to: operating points cover different node sets");
  RelativeChange r;
  for (std::size_t k = 0; k < point.size (); ++k)
    {
      if (baseline.throughput[k] == 0.0 || baseline.bit_cost[k] == 0.0)
        throw DomainError ("relative_to: baseline has a zero entry at node #" + std::to_string (k));
      r.throughput_gain_pct.push_back (100.0 * (point.throughput[k] / baseline.throughput[k] - 1.0));
      r.bit_cost_increase_pct.push_back (100.0 * (point.bit_cost[k] / baseline.bit_cost[k] - 1.0));
    }
  return r;
}

double
curve_throughput_at_cost (const OperatingPoint &a, const OperatingPoint &b, NodeIndex k,
                          double bit_cost)
{
  // B(alpha) = (alpha Ea + (1-alpha) Eb) / (alpha Sa + (1-alpha) Sb) is monotone in alpha;
  // costs outside the segment clamp to the nearer endpoint
  const double sa = a.throughput.at (k), sb = b.throughput.at (k);
  const double ea = a.avg_power.at (k), eb = b.avg_power.at (k);
  const double ba = ea / sa, bb = eb / sb;
  if (bit_cost <= std::min (ba, bb))
    return ba <= bb ? sa : sb;
  if (bit_cost >= std::max (ba, bb))
    return ba >= bb ? sa : sb;
  const double alpha = std::clamp ((bit_cost * sb - eb) / ((ea - eb) - bit_cost * (sa - sb)), 0.0, 1.0);
  return alpha * sa + (1.0 - alpha) * sb;
}

} // namespace fairmac
