#include "fairmac/simengine.hpp"

#include <algorithm>
#include <string>

namespace fairmac {

std::uint64_t
derive_seed (std::uint64_t base, std::uint64_t index)
{
  std::uint64_t z = base + (index + 1) * 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

void
SimConfig::validate () const
{
  if (contention_phases < 1)
    throw DomainError ("simulation: contention phase count must be >= 1");
  if (max_slots < 1)
    throw DomainError ("simulation: slot cap must be >= 1");
}

Engine::Engine (const Network &net, const HelperAssignment &assign, const SimConfig &cfg)
  : m_net (net),
    m_cfg (cfg),
    m_protocol (make_protocol (cfg.protocol, net, assign)),
    m_rng (cfg.seed),
    m_summary (net.size ()),
    m_draws (std::make_unique<bool[]> (net.size ()))
{
  m_cfg.validate ();
}

double
Engine::uniform ()
{
  // 53 random bits -> [0, 1); independent of the standard library's distributions
  return static_cast<double> (m_rng () >> 11) * 0x1.0p-53;
}

PhaseOutcome
Engine::step_phase ()
{
  const double tau = m_cfg.params.tau ();
  const std::size_t n = m_net.size ();
  for (std::size_t k = 0; k < n; ++k)
    m_draws[k] = uniform () < tau;
  return resolve (std::span<const bool> (m_draws.get (), n));
}

PhaseOutcome
Engine::resolve (std::span<const bool> transmits)
{
  if (transmits.size () != m_net.size ())
    throw DomainError ("engine: expected one transmit decision per node");
  ++m_slots;
  const double sigma = m_cfg.params.sigma ();
  PhaseOutcome out;
  for (NodeIndex k = 0; k < transmits.size (); ++k)
    if (transmits[k])
      out.transmitters.push_back (k);

  if (out.transmitters.empty ())
    {
      out.duration = sigma;
      m_summary.elapsed += sigma;
      ++m_summary.phase_counts.idle;
      return out;
    }

  m_attempts.clear ();
  for (NodeIndex k : out.transmitters)
    m_attempts.push_back (m_protocol->prepare (k));
  // every sender pays for its own airtime, whatever the outcome
  for (const Transmission &tx : m_attempts)
    m_summary.transmit_seconds[tx.sender] += tx.airtime;

  if (m_attempts.size () == 1)
    {
      const Transmission &tx = m_attempts.front ();
      out.kind = PhaseKind::Success;
      out.duration = tx.busy_time + sigma;
      SuccessEffects fx = m_protocol->on_success (tx);
      for (const RelayAirtime &r : fx.relay_airtime)
        m_summary.transmit_seconds[r.node] += r.seconds;
      for (const Delivery &d : fx.delivered)
        m_summary.delivered_bits[d.owner] += d.bits;
      out.delivered = std::move (fx.delivered);
      ++m_summary.phase_counts.success;
    }
  else
    {
      out.kind = PhaseKind::Collision;
      double longest = 0.0;
      for (const Transmission &tx : m_attempts)
        {
          longest = std::max (longest, tx.airtime);
          m_protocol->on_collision (tx);
        }
      out.duration = longest + sigma;
      ++m_summary.phase_counts.collision;
    }
  m_summary.elapsed += out.duration;
  return out;
}

TraceSummary
run (Engine &engine, const SimConfig &cfg)
{
  cfg.validate ();
  auto counted = [&] (const TraceSummary &s) {
    return cfg.count_idle_phases ? s.phase_counts.busy () + s.phase_counts.idle
                                 : s.phase_counts.busy ();
  };
  if (cfg.warmup_phases > 0)
    {
      while (counted (engine.summary ()) < cfg.warmup_phases)
        {
          if (engine.slots () >= cfg.max_slots)
            throw SimulationError ("simulation: slot cap of " + std::to_string (cfg.max_slots) +
                                   " reached during warm-up");
          engine.step_phase ();
        }
      engine.reset_summary ();
    }
  while (counted (engine.summary ()) < cfg.contention_phases)
    {
      if (engine.slots () >= cfg.max_slots)
        throw SimulationError ("simulation: slot cap of " + std::to_string (cfg.max_slots) +
                               " reached after " + std::to_string (counted (engine.summary ())) +
                               " of " + std::to_string (cfg.contention_phases) +
                               " phases (is tau too small?)");
      engine.step_phase ();
    }
  return engine.summary ();
}

TraceSummary
run (const Network &net, const HelperAssignment &assign, const SimConfig &cfg)
{
  Engine engine (net, assign, cfg);
  return run (engine, cfg);
}

} // namespace fairmac
