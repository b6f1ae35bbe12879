#pragma once

#include "fairmac/analytic.hpp"
#include "fairmac/protocols.hpp"
#include "fairmac/scenario.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

namespace fairmac::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_validation = 2;
inline constexpr int exit_runtime = 3;

enum class Baseline { None, RrDirect, CsmaDirect };

Baseline parse_baseline (const std::string &text);

/// Every analytic variant (Round Robin, CSMA, small-slot limit, and the
/// fairMAC-infinity limit for cooperative mode) for the requested modes.
void cmd_analytic (const Scenario &scenario, const std::vector<Mode> &modes,
                   const CsmaParams &params, std::ostream &out);

struct SimulateOptions
{
  ProtocolSpec protocol;
  CsmaParams params{0.0001, 0.0033};
  std::uint64_t phases = 30000;
  std::uint64_t seed = 0;
  std::uint64_t replicas = 1;
  std::uint64_t warmup = 0;
  Baseline baseline = Baseline::None;
};

/// Seed of replica `i`: the user seed for the first one, derived seeds after.
std::uint64_t replica_seed (std::uint64_t seed, std::uint64_t replica);

/// One row per (replica, node). Replicas run concurrently; rows keep replica order.
void cmd_simulate (const Scenario &scenario, const SimulateOptions &opts, std::ostream &out);

/// Time-sharing curves between CoopMAC (alpha = 1) and Direct Link (alpha = 0),
/// for Round Robin and CSMA, on a uniform grid of `steps` alpha values.
void cmd_curve (const Scenario &scenario, std::size_t steps, const CsmaParams &params,
                std::ostream &out);

/// CSMA operating point at tau = coeff * sqrt(sigma) for every sigma, then the limit.
void cmd_converge (const Scenario &scenario, Mode mode, double coeff,
                   const std::vector<double> &sigmas, std::ostream &out);

/// Analytic phase expectations against exhaustive enumeration, both modes.
/// Returns true when every quantity agrees to `tolerance`.
bool cmd_verify (const Scenario &scenario, const CsmaParams &params, std::ostream &out,
                 double tolerance = 1e-12);

/// Full command line entry point; returns the process exit code.
int main (int argc, char **argv, std::ostream &out, std::ostream &err);

} // namespace fairmac::cli
