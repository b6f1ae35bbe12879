#pragma once

#include "fairmac/topology.hpp"

#include <cstdint>
#include <istream>
#include <optional>
#include <string>

namespace fairmac {

/// Malformed scenario text. what() carries "<source>:<line>: <message>".
class ScenarioError : public DomainError
{
public:
  ScenarioError (const std::string &source, std::size_t line, const std::string &message);

  std::size_t line () const { return m_line; }

private:
  std::size_t m_line;
};

struct ScenarioDefaults
{
  double sigma = 0.0001;
  double tau = 0.0033;
  std::uint64_t pending = 10;
  std::uint64_t forward_max = 0;
  std::uint64_t phases = 30000;
  std::optional<std::uint64_t> seed;

  bool operator== (const ScenarioDefaults &) const = default;
};

struct Scenario
{
  Network network;
  ScenarioDefaults defaults;

  bool operator== (const Scenario &) const = default;
};

/// Sectioned plain-text scenario:
///
///   # comment
///   [nodes]
///   n1 n2 n3
///   [ap-rates]
///   n1 1
///   [link-rates]
///   n1 n3 3        # directed: rate from n1 to n3
///   [power]
///   1
///   [defaults]
///   sigma 0.0001
///
/// [nodes], [ap-rates] and [power] are required; [nodes] must come first.
/// Numbers are parsed without regard to the C locale.
Scenario parse_scenario (std::istream &in, const std::string &source = "<scenario>");
Scenario parse_scenario_text (const std::string &text, const std::string &source = "<scenario>");
Scenario load_scenario (const std::string &path);

/// Canonical text form; parse_scenario(write_scenario(s)) == s.
std::string write_scenario (const Scenario &scenario);

/// Shortest decimal form that round-trips, always with '.' as separator.
std::string format_number (double value);

} // namespace fairmac
