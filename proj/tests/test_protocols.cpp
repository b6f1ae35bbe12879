#include <doctest.h>

#include "fairmac/protocols.hpp"
#include "fairmac/simengine.hpp"
#include "support.hpp"

#include <algorithm>

using namespace fairmac;

namespace {

constexpr NodeIndex n1 = 0, n2 = 1, n3 = 2;

SuccessEffects
succeed (Protocol &p, NodeIndex k)
{
  return p.on_success (p.prepare (k));
}

std::uint64_t
queued_from (const FairMac &f, NodeIndex helper, NodeIndex source)
{
  const auto &q = f.helper (helper).forward_queue;
  return static_cast<std::uint64_t> (
      std::count_if (q.begin (), q.end (), [&] (const QueuedPacket &e) { return e.source == source; }));
}

} // namespace

TEST_CASE ("direct link transmissions")
{
  const Network toy = test::toy_network ();
  DirectLink d (toy);
  const Transmission tx = d.prepare (n1);
  CHECK (tx.kind == PayloadKind::Own);
  CHECK (tx.airtime == 1.0);
  CHECK (tx.busy_time == 1.0);
  const SuccessEffects fx = d.on_success (tx);
  CHECK (fx.delivered == std::vector<Delivery>{{n1, 1}});
  CHECK (fx.relay_airtime.empty ());
}

TEST_CASE ("coopmac transmissions")
{
  const Network toy = test::toy_network ();
  CoopMac c (toy, classify (toy));
  const Transmission tx = c.prepare (n1);
  CHECK (tx.kind == PayloadKind::Relayed);
  CHECK (tx.relay == n3);
  CHECK (tx.airtime == doctest::Approx (1.0 / 3.0));
  CHECK (tx.busy_time == doctest::Approx (2.0 / 3.0));
  const SuccessEffects fx = c.on_success (tx);
  CHECK (fx.delivered == std::vector<Delivery>{{n1, 1}});
  REQUIRE (fx.relay_airtime.size () == 1);
  CHECK (fx.relay_airtime[0].node == n3);
  CHECK (fx.relay_airtime[0].seconds == doctest::Approx (1.0 / 3.0));

  const Transmission own = c.prepare (n3);
  CHECK (own.kind == PayloadKind::Own);
  CHECK (own.airtime == doctest::Approx (1.0 / 3.0));
}

TEST_CASE ("coopmac success in a single phase")
{
  // n1 wins alone: both hops inside the phase, n3 pays for the forward
  const Network toy = test::toy_network ();
  SimConfig cfg;
  cfg.params = CsmaParams (0.01, 0.1);
  cfg.protocol.kind = ProtocolKind::CoopMac;
  Engine e (toy, classify (toy), cfg);
  const bool onlyN1[] = {true, false, false};
  const PhaseOutcome out = e.resolve (onlyN1);
  CHECK (out.kind == PhaseKind::Success);
  CHECK (out.duration == doctest::Approx (2.0 / 3.0 + 0.01));
  CHECK (out.delivered == std::vector<Delivery>{{n1, 1}});
  const TraceSummary &s = e.summary ();
  CHECK (s.delivered_bits == std::vector<std::uint64_t>{1, 0, 0});
  CHECK (s.transmit_seconds[n1] == doctest::Approx (1.0 / 3.0));
  CHECK (s.transmit_seconds[n2] == 0.0);
  CHECK (s.transmit_seconds[n3] == doctest::Approx (1.0 / 3.0));
}

TEST_CASE ("fairmac transmission choice")
{
  const Network toy = test::toy_network ();
  const HelperAssignment a = classify (toy);

  SUBCASE ("Q = 0 helper sends own data only")
  {
    FairMac f (toy, a, 10, 0);
    succeed (f, n1);
    const Transmission tx = f.prepare (n3);
    CHECK (tx.kind == PayloadKind::Joint);
    CHECK (tx.forwarded.empty ());
    CHECK (tx.airtime == doctest::Approx (1.0 / 3.0));
  }
  SUBCASE ("joint packet takes min(Q, queue)")
  {
    FairMac f (toy, a, 10, 4);
    succeed (f, n1);
    succeed (f, n2);
    const Transmission tx = f.prepare (n3);
    CHECK (tx.forwarded == std::vector<NodeIndex>{n1, n2});
    CHECK (tx.airtime == doctest::Approx ((1.0 + 2.0) / 3.0));
    CHECK (tx.busy_time == tx.airtime);

    FairMac g (toy, a, 10, 1);
    succeed (g, n1);
    succeed (g, n2);
    CHECK (g.prepare (n3).forwarded == std::vector<NodeIndex>{n1});
  }
  SUBCASE ("sources go direct once P packets are pending")
  {
    FairMac f (toy, a, 2, 0);
    CHECK (f.prepare (n1).kind == PayloadKind::FirstHop);
    CHECK (f.prepare (n1).airtime == doctest::Approx (1.0 / 3.0));
    succeed (f, n1);
    succeed (f, n1);
    CHECK (f.source (n1).pending == 2);
    const Transmission tx = f.prepare (n1);
    CHECK (tx.kind == PayloadKind::Own);
    CHECK (tx.airtime == 1.0);
    CHECK (f.on_success (tx).delivered == std::vector<Delivery>{{n1, 1}});
    CHECK (f.source (n1).pending == 2);
  }
  SUBCASE ("P = 0 never uses the helper")
  {
    FairMac f (toy, a, 0, 4);
    CHECK (f.prepare (n1).kind == PayloadKind::Own);
  }
}

TEST_CASE ("fairmac acknowledgements")
{
  const Network toy = test::toy_network ();
  FairMac f (toy, classify (toy), 10, 4);

  // first hop: preACK only, nothing reaches the AP yet
  SuccessEffects fx = succeed (f, n1);
  CHECK (fx.delivered.empty ());
  succeed (f, n1);
  succeed (f, n2);
  CHECK (f.source (n1).pending == 2);
  CHECK (f.source (n2).pending == 1);
  CHECK (f.helper (n3).forward_queue.size () == 3);

  // joint packet: own bit plus three forwarded ones, jointACK clears pending
  fx = succeed (f, n3);
  CHECK (f.helper (n3).forward_queue.empty ());
  CHECK (f.source (n1).pending == 0);
  CHECK (f.source (n2).pending == 0);
  std::uint64_t own = 0, forN1 = 0, forN2 = 0;
  for (const Delivery &d : fx.delivered)
    (d.owner == n3 ? own : d.owner == n1 ? forN1 : forN2) += d.bits;
  CHECK (own == 1);
  CHECK (forN1 == 2);
  CHECK (forN2 == 1);
}

TEST_CASE ("fairmac collisions leave state untouched")
{
  const Network toy = test::toy_network ();
  SimConfig cfg;
  cfg.params = CsmaParams (0.01, 0.1);
  cfg.protocol = {ProtocolKind::FairMac, 10, 2};
  Engine e (toy, classify (toy), cfg);
  auto &f = dynamic_cast<FairMac &> (e.protocol ());

  const bool both[] = {true, true, false};
  PhaseOutcome out = e.resolve (both);
  CHECK (out.kind == PhaseKind::Collision);
  CHECK (out.delivered.empty ());
  CHECK (f.source (n1).pending == 0);
  CHECK (f.source (n2).pending == 0);
  CHECK (f.helper (n3).forward_queue.empty ());
  // both retry through the helper
  CHECK (f.prepare (n1).kind == PayloadKind::FirstHop);
  CHECK (f.prepare (n2).kind == PayloadKind::FirstHop);

  const bool onlyN1[] = {true, false, false};
  e.resolve (onlyN1);
  e.resolve (onlyN1);
  e.resolve (onlyN1);
  CHECK (f.helper (n3).forward_queue.size () == 3);

  // joint packet collides, then succeeds with the same two forwarded packets
  const bool n1n3[] = {true, false, true};
  out = e.resolve (n1n3);
  CHECK (out.kind == PhaseKind::Collision);
  CHECK (out.duration == doctest::Approx (1.0 + 0.01));
  CHECK (f.helper (n3).forward_queue.size () == 3);
  CHECK (f.source (n1).pending == 3);

  const bool onlyN3[] = {false, false, true};
  out = e.resolve (onlyN3);
  CHECK (out.kind == PhaseKind::Success);
  CHECK (out.duration == doctest::Approx (1.0 + 0.01));
  CHECK (f.helper (n3).forward_queue.size () == 1);
  CHECK (f.source (n1).pending == 1);
}

TEST_CASE ("fairmac rejects acknowledgements for foreign sources")
{
  const Network toy = test::toy_network ();
  FairMac f (toy, classify (toy), 10, 4);
  Transmission bogus;
  bogus.sender = n3;
  bogus.kind = PayloadKind::FirstHop;
  bogus.relay = n1;
  CHECK_THROWS_AS (f.on_success (bogus), ProtocolError);

  Transmission tooMany;
  tooMany.sender = n3;
  tooMany.kind = PayloadKind::Joint;
  tooMany.forwarded = {n1};
  CHECK_THROWS_AS (f.on_success (tooMany), ProtocolError);
}

TEST_CASE ("fairmac with Q = 0 is Direct Link minus the first P packets")
{
  // Transmit decisions only depend on the slot index, so both runs see the
  // same sequence of winners.
  const Network toy = test::toy_network ();
  const HelperAssignment a = classify (toy);
  for (std::uint64_t seed : {1u, 2u, 3u})
    {
      SimConfig cfg;
      cfg.params = CsmaParams (0.0088, 0.045);
      cfg.contention_phases = 5000;
      cfg.seed = seed;
      cfg.protocol = {ProtocolKind::DirectLink, 0, 0};
      const TraceSummary direct = run (toy, a, cfg);
      cfg.protocol = {ProtocolKind::FairMac, 10, 0};
      Engine e (toy, a, cfg);
      const TraceSummary fair = run (e, cfg);
      const auto &f = dynamic_cast<const FairMac &> (e.protocol ());

      CHECK (fair.phase_counts == direct.phase_counts);
      CHECK (fair.delivered_bits[n1] + 10 == direct.delivered_bits[n1]);
      CHECK (fair.delivered_bits[n2] + 10 == direct.delivered_bits[n2]);
      CHECK (fair.delivered_bits[n3] == direct.delivered_bits[n3]);
      CHECK (f.source (n1).pending == 10);
      CHECK (f.helper (n3).forward_queue.size () == 20);
    }
}

TEST_CASE ("fairmac bookkeeping invariants hold along random runs")
{
  const Network toy = test::toy_network ();
  const HelperAssignment a = classify (toy);
  test::TestRng rng (31337);
  for (int trial = 0; trial < 12; ++trial)
    {
      const std::uint64_t P = trial % 4 == 0 ? 0 : 1 + trial % 5;
      const std::uint64_t Q = trial % 5;
      SimConfig cfg;
      cfg.params = CsmaParams (0.01, rng.uniform (0.05, 0.4));
      cfg.seed = 1000 + trial;
      cfg.protocol = {ProtocolKind::FairMac, P, Q};
      Engine e (toy, a, cfg);
      const auto &f = dynamic_cast<const FairMac &> (e.protocol ());
      std::vector<std::uint64_t> forwardedDelivered (3, 0);
      std::vector<std::uint64_t> ownDelivered (3, 0);

      for (int step = 0; step < 4000; ++step)
        {
          // p <= P whenever a first hop could be chosen
          for (NodeIndex k : {n1, n2})
            CHECK (f.source (k).pending <= P);
          const PhaseOutcome out = e.step_phase ();
          for (const Delivery &d : out.delivered)
            {
              const bool forwarded = out.transmitters.front () != d.owner;
              (forwarded ? forwardedDelivered : ownDelivered)[d.owner] += d.bits;
            }
          for (NodeIndex k : {n1, n2})
            {
              // every handed-over bit is either still queued or delivered exactly once
              CHECK (f.source (k).pending == queued_from (f, n3, k));
              CHECK (f.handed_over (k) == forwardedDelivered[k] + f.source (k).pending);
            }
        }
      const TraceSummary &s = e.summary ();
      for (NodeIndex k = 0; k < 3; ++k)
        CHECK (s.delivered_bits[k] == ownDelivered[k] + forwardedDelivered[k]);
    }
}

TEST_CASE ("helper queue length before transmitting averages H_k")
{
  // P and Q large enough to never bind: E[X_k] = H_k = 2 for n3
  const Network toy = test::toy_network ();
  SimConfig cfg;
  cfg.params = CsmaParams (0.0001, 0.0033);
  cfg.contention_phases = 30000;
  cfg.seed = 5;
  cfg.protocol = {ProtocolKind::FairMac, 1'000'000, 1'000'000};
  Engine e (toy, classify (toy), cfg);
  run (e, cfg);
  const auto &f = dynamic_cast<const FairMac &> (e.protocol ());
  const double mean = f.queue_samples (n3).mean ();
  CHECK (f.queue_samples (n3).count > 5000);
  CHECK (std::abs (mean - 2.0) / 2.0 < 0.05);
}

TEST_CASE ("protocol names and factory")
{
  CHECK (parse_protocol_kind ("direct") == ProtocolKind::DirectLink);
  CHECK (parse_protocol_kind ("coopmac") == ProtocolKind::CoopMac);
  CHECK (parse_protocol_kind ("fairmac") == ProtocolKind::FairMac);
  CHECK_THROWS_AS (parse_protocol_kind ("aloha"), DomainError);
  const Network toy = test::toy_network ();
  CHECK (make_protocol ({ProtocolKind::FairMac, 1, 1}, toy, classify (toy))->name () == "fairmac");
}
