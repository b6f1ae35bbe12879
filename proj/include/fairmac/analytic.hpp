#pragma once

#include "fairmac/topology.hpp"

#include <vector>

namespace fairmac {

/// Slotted CSMA parameters. The slot length is normalized by the packet size
/// in bits, so it shrinks as packets grow.
class CsmaParams
{
public:
  /// sigma > 0 and tau in [0, 1]. tau = 0 and tau = 1 are admitted as
  /// degenerate configurations; operations that cannot handle them reject them.
  CsmaParams (double sigma, double tau);

  /// tau = coeff * sqrt(sigma), the scaling used for the small-slot limit.
  static CsmaParams with_sqrt_scaling (double sigma, double coeff);

  double sigma () const { return m_sigma; }
  double tau () const { return m_tau; }

private:
  double m_sigma;
  double m_tau;
};

/// Expected composition of one network phase.
struct PhaseExpectations
{
  double p_success;    // one specific node succeeds
  double p_idle;
  double t_idle;
  double t_success;
  double t_collision;
};

/// Throughput, average power and bit-cost per node. Units are bit/s, W and J/bit.
struct OperatingPoint
{
  std::vector<double> throughput;
  std::vector<double> bit_cost;
  std::vector<double> avg_power;

  std::size_t size () const { return throughput.size (); }
  double mean_throughput () const;

  bool operator== (const OperatingPoint &) const = default;
};

/// Builds a point with the same throughput for every node; Ē_k = B_k * S.
OperatingPoint uniform_point (double throughput, std::vector<double> bit_cost);

/// Round Robin schedule: one bit per node per round.
OperatingPoint rr_performance (const Network &net, const HelperAssignment &assign, Mode mode);

PhaseExpectations csma_phase_expectations (const Network &net, const HelperAssignment &assign,
                                           Mode mode, const CsmaParams &params);

double csma_throughput (const PhaseExpectations &phase);

/// (H_k + tau / p_s) u_k E. Direct mode uses H_k = 0.
std::vector<double> csma_bitcost (const Network &net, const HelperAssignment &assign, Mode mode,
                                  const CsmaParams &params);

OperatingPoint csma_performance (const Network &net, const HelperAssignment &assign, Mode mode,
                                 const CsmaParams &params);

/// Small-slot limit of the CSMA model: S* = 1 / sum s_k, B*_k = (H_k + 1) u_k E.
OperatingPoint asymptotic_performance (const Network &net, const HelperAssignment &assign,
                                       Mode mode);

/// Small-slot operating point of fairMAC with unbounded P and Q.
OperatingPoint fairmac_infty_asymptotic (const Network &net, const HelperAssignment &assign);

/// The two forms of the fairMAC-infinity round length: grouped by node class
/// with E[X_k] = H_k, and as the sum of CoopMAC travel times.
struct RoundLengthForms
{
  double by_class;
  double by_travel_time;
};

RoundLengthForms fairmac_infty_round_length (const Network &net, const HelperAssignment &assign);

/// Time sharing: a for fraction alpha of the time, b for the rest.
OperatingPoint timeshare (const OperatingPoint &a, const OperatingPoint &b, double alpha);

} // namespace fairmac
