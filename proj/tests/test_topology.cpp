#include <doctest.h>

#include "fairmac/topology.hpp"
#include "support.hpp"

#include <algorithm>
#include <numeric>

using namespace fairmac;

namespace {

// Pairwise evaluation of the two-hop rule over every (k, l), written without
// the library's search.
std::vector<std::optional<NodeIndex>>
brute_force_helpers (const Network &net)
{
  const std::size_t n = net.size ();
  auto best = [&] (NodeIndex k, const std::vector<bool> &allowed) -> std::optional<NodeIndex> {
    std::vector<std::pair<double, NodeIndex>> options;
    for (NodeIndex l = 0; l < n; ++l)
      if (l != k && allowed[l] && net.link_rate (k, l))
        options.emplace_back (1.0 / *net.link_rate (k, l) + 1.0 / net.ap_rate (l), l);
    if (options.empty ())
      return std::nullopt;
    auto it = std::min_element (options.begin (), options.end ());
    if (it->first < 1.0 / net.ap_rate (k))
      return it->second;
    return std::nullopt;
  };
  std::vector<bool> all (n, true);
  std::vector<bool> selfDirect (n);
  for (NodeIndex k = 0; k < n; ++k)
    selfDirect[k] = !best (k, all);
  std::vector<std::optional<NodeIndex>> out (n);
  for (NodeIndex k = 0; k < n; ++k)
    if (!selfDirect[k])
      out[k] = best (k, selfDirect);
  return out;
}

void
check_invariants (const Network &net, const HelperAssignment &a)
{
  const std::size_t n = net.size ();
  std::vector<int> seen (n, 0);
  for (NodeIndex k : a.direct_set)
    ++seen[k];
  for (NodeIndex k : a.via_set)
    ++seen[k];
  for (int s : seen)
    CHECK (s == 1);
  CHECK (std::accumulate (a.help_count.begin (), a.help_count.end (), 0u) == a.via_set.size ());
  for (NodeIndex k = 0; k < n; ++k)
    {
      const bool inH = std::find (a.helper_set.begin (), a.helper_set.end (), k) != a.helper_set.end ();
      CHECK (inH == (a.help_count[k] > 0));
      if (inH)
        CHECK_FALSE (a.helper[k].has_value ());
    }
  for (NodeIndex k : a.via_set)
    {
      const NodeIndex h = *a.helper[k];
      CHECK_FALSE (a.helper[h].has_value ());
      CHECK (1.0 / *net.link_rate (k, h) + 1.0 / net.ap_rate (h) < 1.0 / net.ap_rate (k));
    }
}

} // namespace

TEST_CASE ("network validation")
{
  CHECK_THROWS_AS (Network ({"a"}, {0.0}, {}, 1.0), DomainError);
  CHECK_THROWS_AS (Network ({"a"}, {-1.0}, {}, 1.0), DomainError);
  CHECK_THROWS_AS (Network ({"a", "a"}, {1.0, 1.0}, {}, 1.0), DomainError);
  CHECK_THROWS_AS (Network ({"a", "b"}, {1.0, 1.0}, {{{0, 0}, 1.0}}, 1.0), DomainError);
  CHECK_THROWS_AS (Network ({"a", "b"}, {1.0, 1.0}, {{{0, 1}, 0.0}}, 1.0), DomainError);
  CHECK_THROWS_AS (Network ({"a"}, {1.0}, {}, 0.0), DomainError);
  CHECK_THROWS_AS (Network ({"a"}, {1.0, 2.0}, {}, 1.0), DomainError);
  CHECK_NOTHROW (Network ({"a", "b"}, {1.0, 2.0}, {{{0, 1}, 4.0}}, 1.0));
}

TEST_CASE ("select_helper")
{
  const Network toy = test::toy_network ();
  CHECK (select_helper (toy, 0) == NodeIndex{2});
  CHECK (select_helper (toy, 1) == NodeIndex{2});
  CHECK_FALSE (select_helper (toy, 2).has_value ());
  CHECK_THROWS_AS (select_helper (toy, 3), DomainError);

  SUBCASE ("single node has no candidate")
  {
    Network one ({"solo"}, {2.0}, {}, 1.0);
    CHECK_FALSE (select_helper (one, 0).has_value ());
  }
  SUBCASE ("strict improvement required")
  {
    // 1/3 + 1/3 is not below 1/3
    Network flat ({"a", "b"}, {3.0, 3.0}, {{{0, 1}, 3.0}, {{1, 0}, 3.0}}, 1.0);
    CHECK_FALSE (select_helper (flat, 0).has_value ());
    // equal two-hop time and direct time is not an improvement either
    Network even ({"a", "b"}, {1.0, 2.0}, {{{0, 1}, 2.0}}, 1.0);
    CHECK_FALSE (select_helper (even, 0).has_value ());
  }
  SUBCASE ("ties go to the earliest node")
  {
    Network tie ({"s", "x", "y"}, {1.0, 4.0, 4.0}, {{{0, 1}, 4.0}, {{0, 2}, 4.0}}, 1.0);
    CHECK (select_helper (tie, 0) == NodeIndex{1});
  }
  SUBCASE ("missing link is unusable")
  {
    Network gap ({"s", "x"}, {1.0, 100.0}, {{{1, 0}, 100.0}}, 1.0);
    CHECK_FALSE (select_helper (gap, 0).has_value ());
  }
}

TEST_CASE ("classify toy network")
{
  const Network toy = test::toy_network ();
  const HelperAssignment a = classify (toy);
  CHECK (a.via_set == std::vector<NodeIndex>{0, 1});
  CHECK (a.direct_set == std::vector<NodeIndex>{2});
  CHECK (a.helper_set == std::vector<NodeIndex>{2});
  CHECK (a.help_count == std::vector<unsigned>{0, 0, 2});
  CHECK (a.node_class (0) == NodeClass::ViaHelper);
  CHECK (a.node_class (2) == NodeClass::Helper);
  check_invariants (toy, a);
}

TEST_CASE ("classify with no useful relay")
{
  Network net ({"a", "b", "c"}, {3.0, 3.0, 3.0},
               {{{0, 1}, 3.0}, {{1, 2}, 3.0}, {{2, 0}, 3.0}}, 1.0);
  const HelperAssignment a = classify (net);
  CHECK (a.via_set.empty ());
  CHECK (a.helper_set.empty ());
  CHECK (a.help_count == std::vector<unsigned>{0, 0, 0});
}

TEST_CASE ("relay chains are not formed")
{
  // c would relay through b, and a's best relay is c; c must not help since it
  // does not transmit directly, so a falls back to b.
  Network net ({"a", "b", "c"}, {0.5, 10.0, 1.0},
               {{{2, 1}, 10.0}, {{0, 2}, 100.0}, {{0, 1}, 1.0}}, 1.0);
  CHECK (select_helper (net, 0) == NodeIndex{2});
  CHECK (select_helper (net, 2) == NodeIndex{1});
  const HelperAssignment a = classify (net);
  CHECK (a.helper[0] == NodeIndex{1});
  CHECK (a.helper[2] == NodeIndex{1});
  CHECK (a.help_count[1] == 2);
  check_invariants (net, a);
}

TEST_CASE ("classify matches pairwise evaluation on random networks")
{
  test::TestRng rng (20240611);
  for (int trial = 0; trial < 200; ++trial)
    {
      const std::size_t n = 2 + trial % 5;
      const Network net = test::random_network (rng, n);
      const HelperAssignment a = classify (net);
      CHECK (a.helper == brute_force_helpers (net));
      check_invariants (net, a);
      CHECK (classify (net) == a);

      // helper choice only depends on rate ratios
      for (double c : {0.25, 3.0, 1e3})
        CHECK (classify (net.scaled (c)) == a);

      const TimingProfile coop = timing (net, a, Mode::Cooperative);
      const TimingProfile direct = timing (net, a, Mode::Direct);
      for (NodeIndex k = 0; k < n; ++k)
        {
          CHECK (coop.travel_time[k] >= coop.packet_duration[k]);
          CHECK ((coop.travel_time[k] == coop.packet_duration[k]) == !a.is_via (k));
          CHECK (coop.packet_duration[k] > 0.0);
          if (a.is_via (k))
            CHECK (coop.travel_time[k] < direct.travel_time[k]);
        }
    }
}

TEST_CASE ("timing on the toy network")
{
  const Network toy = test::toy_network ();
  const HelperAssignment a = classify (toy);
  const TimingProfile coop = timing (toy, a, Mode::Cooperative);
  CHECK (coop.travel_time[0] == doctest::Approx (2.0 / 3.0).epsilon (1e-15));
  CHECK (coop.packet_duration[0] == doctest::Approx (1.0 / 3.0).epsilon (1e-15));
  CHECK (coop.travel_time[2] == doctest::Approx (1.0 / 3.0).epsilon (1e-15));
  CHECK (coop.packet_duration[2] == coop.travel_time[2]);

  const TimingProfile direct = timing (toy, a, Mode::Direct);
  for (NodeIndex k = 0; k < 3; ++k)
    {
      CHECK (direct.travel_time[k] == 1.0 / toy.ap_rate (k));
      CHECK (direct.packet_duration[k] == 1.0 / toy.ap_rate (k));
    }
}
