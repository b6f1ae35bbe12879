#include "fairmac/scenario.hpp"

#include "fairmac/analytic.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <fstream>
#include <set>
#include <sstream>
#include <system_error>
#include <vector>

namespace fairmac {

namespace {

std::vector<std::string>
tokenize (const std::string &line)
{
  std::string body = line.substr (0, line.find ('#'));
  std::istringstream ss (body);
  std::vector<std::string> tokens;
  std::string tok;
  while (ss >> tok)
    tokens.push_back (tok);
  return tokens;
}

class Parser
{
public:
  explicit Parser (std::string source) : m_source (std::move (source)) {}

  Scenario parse (std::istream &in);

private:
  [[noreturn]] void fail (const std::string &msg) const { throw ScenarioError (m_source, m_line, msg); }

  double number (const std::string &tok, const std::string &field) const;
  std::uint64_t count (const std::string &tok, const std::string &field) const;
  NodeIndex node (const std::string &name, const std::string &section) const;

  void on_nodes (const std::vector<std::string> &t);
  void on_ap_rate (const std::vector<std::string> &t);
  void on_link_rate (const std::vector<std::string> &t);
  void on_power (const std::vector<std::string> &t);
  void on_default (const std::vector<std::string> &t);

  std::string m_source;
  std::size_t m_line = 0;
  std::vector<std::string> m_names;
  std::vector<std::optional<double>> m_apRates;
  std::map<std::pair<NodeIndex, NodeIndex>, double> m_links;
  std::optional<double> m_power;
  ScenarioDefaults m_defaults;
  std::set<std::string> m_seenSections;
};

double
Parser::number (const std::string &tok, const std::string &field) const
{
  double v = 0.0;
  auto [ptr, ec] = std::from_chars (tok.data (), tok.data () + tok.size (), v);
  if (ec != std::errc () || ptr != tok.data () + tok.size ())
    fail (field + ": '" + tok + "' is not a number");
  return v;
}

std::uint64_t
Parser::count (const std::string &tok, const std::string &field) const
{
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars (tok.data (), tok.data () + tok.size (), v);
  if (ec != std::errc () || ptr != tok.data () + tok.size ())
    fail (field + ": '" + tok + "' is not a non-negative integer");
  return v;
}

NodeIndex
Parser::node (const std::string &name, const std::string &section) const
{
  for (NodeIndex k = 0; k < m_names.size (); ++k)
    if (m_names[k] == name)
      return k;
  fail (section + ": unknown node '" + name + "'");
}

void
Parser::on_nodes (const std::vector<std::string> &t)
{
  for (const std::string &name : t)
    {
      for (const std::string &existing : m_names)
        if (existing == name)
          fail ("nodes: duplicate node '" + name + "'");
      m_names.push_back (name);
      m_apRates.emplace_back ();
    }
}

void
Parser::on_ap_rate (const std::vector<std::string> &t)
{
  if (t.size () != 2)
    fail ("ap-rates: expected '<node> <rate>'");
  const NodeIndex k = node (t[0], "ap-rates");
  const double r = number (t[1], "ap-rates." + t[0]);
  if (!(r > 0.0) || !std::isfinite (r))
    fail ("ap-rates." + t[0] + ": rate must be finite and > 0, got " + t[1]);
  if (m_apRates[k])
    fail ("ap-rates." + t[0] + ": rate given twice");
  m_apRates[k] = r;
}

void
Parser::on_link_rate (const std::vector<std::string> &t)
{
  if (t.size () != 3)
    fail ("link-rates: expected '<from> <to> <rate>'");
  const NodeIndex a = node (t[0], "link-rates");
  const NodeIndex b = node (t[1], "link-rates");
  const std::string field = "link-rates." + t[0] + "." + t[1];
  if (a == b)
    fail (field + ": a node cannot link to itself");
  const double r = number (t[2], field);
  if (!(r > 0.0) || !std::isfinite (r))
    fail (field + ": rate must be finite and > 0, got " + t[2]);
  if (!m_links.emplace (std::make_pair (a, b), r).second)
    fail (field + ": rate given twice");
}

void
Parser::on_power (const std::vector<std::string> &t)
{
  if (t.size () != 1 || m_power)
    fail ("power: expected a single value");
  const double p = number (t[0], "power");
  if (!(p > 0.0) || !std::isfinite (p))
    fail ("power: must be finite and > 0, got " + t[0]);
  m_power = p;
}

void
Parser::on_default (const std::vector<std::string> &t)
{
  if (t.size () != 2)
    fail ("defaults: expected '<key> <value>'");
  const std::string field = "defaults." + t[0];
  if (t[0] == "sigma")
    m_defaults.sigma = number (t[1], field);
  else if (t[0] == "tau")
    m_defaults.tau = number (t[1], field);
  else if (t[0] == "pending")
    m_defaults.pending = count (t[1], field);
  else if (t[0] == "forward-max")
    m_defaults.forward_max = count (t[1], field);
  else if (t[0] == "phases")
    m_defaults.phases = count (t[1], field);
  else if (t[0] == "seed")
    m_defaults.seed = count (t[1], field);
  else
    fail ("defaults: unknown key '" + t[0] + "'");

  if (t[0] == "sigma" || t[0] == "tau")
    {
      try
        {
          CsmaParams (m_defaults.sigma, m_defaults.tau);
        }
      catch (const DomainError &e)
        {
          fail (field + ": " + e.what ());
        }
    }
  if (t[0] == "phases" && m_defaults.phases < 1)
    fail (field + ": must be >= 1");
}

Scenario
Parser::parse (std::istream &in)
{
  std::string section;
  std::string line;
  while (std::getline (in, line))
    {
      ++m_line;
      auto tokens = tokenize (line);
      if (tokens.empty ())
        continue;
      if (tokens[0].front () == '[')
        {
          if (tokens.size () != 1 || tokens[0].back () != ']')
            fail ("malformed section header");
          section = tokens[0].substr (1, tokens[0].size () - 2);
          if (section != "nodes" && section != "ap-rates" && section != "link-rates" &&
              section != "power" && section != "defaults")
            fail ("unknown section [" + section + "]");
          if (!m_seenSections.insert (section).second)
            fail ("section [" + section + "] appears twice");
          if (section != "nodes" && !m_seenSections.count ("nodes"))
            fail ("[nodes] must come before [" + section + "]");
          continue;
        }
      if (section.empty ())
        fail ("content before the first section");
      if (section == "nodes")
        on_nodes (tokens);
      else if (section == "ap-rates")
        on_ap_rate (tokens);
      else if (section == "link-rates")
        on_link_rate (tokens);
      else if (section == "power")
        on_power (tokens);
      else
        on_default (tokens);
    }
  ++m_line;
  if (m_names.empty ())
    fail ("no nodes declared");
  std::vector<double> ap;
  for (NodeIndex k = 0; k < m_names.size (); ++k)
    {
      if (!m_apRates[k])
        fail ("ap-rates: missing rate for node '" + m_names[k] + "'");
      ap.push_back (*m_apRates[k]);
    }
  if (!m_power)
    fail ("power: missing [power] section");
  return Scenario{Network (m_names, std::move (ap), m_links, *m_power), m_defaults};
}

} // namespace

ScenarioError::ScenarioError (const std::string &source, std::size_t line, const std::string &message)
  : DomainError (source + ":" + std::to_string (line) + ": " + message), m_line (line)
{
}

Scenario
parse_scenario (std::istream &in, const std::string &source)
{
  return Parser (source).parse (in);
}

Scenario
parse_scenario_text (const std::string &text, const std::string &source)
{
  std::istringstream in (text);
  return parse_scenario (in, source);
}

Scenario
load_scenario (const std::string &path)
{
  std::ifstream in (path);
  if (!in)
    throw ScenarioError (path, 0, "cannot open scenario file");
  return parse_scenario (in, path);
}

std::string
format_number (double value)
{
  char buf[64];
  auto [ptr, ec] = std::to_chars (buf, buf + sizeof buf, value);
  if (ec != std::errc ())
    return "nan";
  return std::string (buf, ptr);
}

std::string
write_scenario (const Scenario &s)
{
  const Network &net = s.network;
  std::ostringstream out;
  out << "[nodes]\n";
  for (NodeIndex k = 0; k < net.size (); ++k)
    out << net.name (k) << '\n';
  out << "\n[ap-rates]\n";
  for (NodeIndex k = 0; k < net.size (); ++k)
    out << net.name (k) << ' ' << format_number (net.ap_rate (k)) << '\n';
  if (!net.link_rates ().empty ())
    {
      out << "\n[link-rates]\n";
      for (const auto &[link, rate] : net.link_rates ())
        out << net.name (link.first) << ' ' << net.name (link.second) << ' '
            << format_number (rate) << '\n';
    }
  out << "\n[power]\n" << format_number (net.power ()) << '\n';
  const ScenarioDefaults &d = s.defaults;
  out << "\n[defaults]\n"
      << "sigma " << format_number (d.sigma) << '\n'
      << "tau " << format_number (d.tau) << '\n'
      << "pending " << d.pending << '\n'
      << "forward-max " << d.forward_max << '\n'
      << "phases " << d.phases << '\n';
  if (d.seed)
    out << "seed " << *d.seed << '\n';
  return out.str ();
}

} // namespace fairmac
