#pragma once

#include "fairmac/topology.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace fairmac::test {

/// Three-node example: n1, n2 reach the AP at 1 bit/s, n3 at 3 bit/s, and
/// n1, n2 reach n3 at 3 bit/s. E = 1 W.
inline Network
toy_network ()
{
  std::map<std::pair<NodeIndex, NodeIndex>, double> links{
      {{0, 2}, 3.0}, {{1, 2}, 3.0}, {{2, 0}, 3.0}, {{2, 1}, 3.0}};
  return Network ({"n1", "n2", "n3"}, {1.0, 1.0, 3.0}, links, 1.0);
}

class TestRng
{
public:
  explicit TestRng (std::uint64_t seed) : m_gen (seed) {}

  double uniform (double lo, double hi)
  {
    return lo + (hi - lo) * (static_cast<double> (m_gen () >> 11) * 0x1.0p-53);
  }
  bool coin (double p) { return uniform (0.0, 1.0) < p; }

private:
  std::mt19937_64 m_gen;
};

/// Random network: AP rates in [0.5, 6], each directed link present with
/// probability `link_prob` at a rate in [1, 12].
inline Network
random_network (TestRng &rng, std::size_t n, double link_prob = 0.7)
{
  std::vector<std::string> names;
  std::vector<double> ap;
  std::map<std::pair<NodeIndex, NodeIndex>, double> links;
  for (std::size_t k = 0; k < n; ++k)
    {
      names.push_back ("r" + std::to_string (k));
      ap.push_back (rng.uniform (0.5, 6.0));
    }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (a != b && rng.coin (link_prob))
        links[{a, b}] = rng.uniform (1.0, 12.0);
  return Network (names, ap, links, rng.uniform (0.5, 2.0));
}

} // namespace fairmac::test
