#include "fairmac/cli.hpp"

#include "fairmac/metrics.hpp"
#include "fairmac/oracle.hpp"
#include "fairmac/simengine.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <future>
#include <sstream>

namespace fairmac::cli {

namespace {

std::string
num (double v)
{
  return format_number (v);
}

void
write_point_cells (std::ostream &out, const OperatingPoint &p, NodeIndex k)
{
  out << num (p.throughput[k]) << ',' << num (p.bit_cost[k]) << ',' << num (p.avg_power[k]);
}

OperatingPoint
baseline_point (Baseline b, const Scenario &s, const HelperAssignment &assign,
                const CsmaParams &params)
{
  if (b == Baseline::RrDirect)
    return rr_performance (s.network, assign, Mode::Direct);
  return csma_performance (s.network, assign, Mode::Direct, params);
}

const char *
to_string (Baseline b)
{
  switch (b)
    {
    case Baseline::None:
      return "none";
    case Baseline::RrDirect:
      return "rr-direct";
    case Baseline::CsmaDirect:
      return "csma-direct";
    }
  return "?";
}

} // namespace

Baseline
parse_baseline (const std::string &text)
{
  if (text == "none")
    return Baseline::None;
  if (text == "rr-direct")
    return Baseline::RrDirect;
  if (text == "csma-direct")
    return Baseline::CsmaDirect;
  throw DomainError ("unknown baseline '" + text + "'");
}

void
cmd_analytic (const Scenario &scenario, const std::vector<Mode> &modes, const CsmaParams &params,
              std::ostream &out)
{
  const Network &net = scenario.network;
  const HelperAssignment assign = classify (net);
  out << "variant,mode,sigma,tau,node,class,helper,help_count,throughput,bit_cost,avg_power\n";
  auto emit = [&] (const char *variant, Mode mode, const std::string &sigma, const std::string &tau,
                   const OperatingPoint &p) {
    for (NodeIndex k = 0; k < net.size (); ++k)
      {
        out << variant << ',' << to_string (mode) << ',' << sigma << ',' << tau << ','
            << net.name (k) << ',' << to_string (assign.node_class (k)) << ','
            << (assign.helper[k] ? net.name (*assign.helper[k]) : std::string ()) << ','
            << assign.help_count[k] << ',';
        write_point_cells (out, p, k);
        out << '\n';
      }
  };
  for (Mode mode : modes)
    {
      emit ("rr", mode, "", "", rr_performance (net, assign, mode));
      emit ("csma", mode, num (params.sigma ()), num (params.tau ()),
            csma_performance (net, assign, mode, params));
      emit ("asymptotic", mode, "0", "0", asymptotic_performance (net, assign, mode));
      if (mode == Mode::Cooperative)
        emit ("fairmac-infty", mode, "0", "0", fairmac_infty_asymptotic (net, assign));
    }
}

std::uint64_t
replica_seed (std::uint64_t seed, std::uint64_t replica)
{
  return replica == 0 ? seed : derive_seed (seed, replica);
}

void
cmd_simulate (const Scenario &scenario, const SimulateOptions &opts, std::ostream &out)
{
  const Network &net = scenario.network;
  const HelperAssignment assign = classify (net);
  if (opts.replicas < 1)
    throw DomainError ("simulate: replica count must be >= 1");

  std::vector<std::future<TraceSummary>> runs;
  for (std::uint64_t r = 0; r < opts.replicas; ++r)
    {
      SimConfig cfg;
      cfg.params = opts.params;
      cfg.contention_phases = opts.phases;
      cfg.seed = replica_seed (opts.seed, r);
      cfg.protocol = opts.protocol;
      cfg.warmup_phases = opts.warmup;
      cfg.validate ();
      runs.push_back (std::async (std::launch::async, [&net, &assign, cfg] {
        return run (net, assign, cfg);
      }));
    }

  std::optional<OperatingPoint> base;
  if (opts.baseline != Baseline::None)
    base = baseline_point (opts.baseline, scenario, assign, opts.params);

  out << "protocol,sigma,tau,pending,forward_max,phases,replica,seed,node,throughput,bit_cost,"
         "avg_power,delivered_bits,transmit_seconds,elapsed,baseline,throughput_gain_pct,"
         "bit_cost_increase_pct\n";
  const bool fair = opts.protocol.kind == ProtocolKind::FairMac;
  for (std::uint64_t r = 0; r < runs.size (); ++r)
    {
      const TraceSummary trace = runs[r].get ();
      const OperatingPoint p = finalize (trace, net.power (), net.names ());
      std::optional<RelativeChange> rel;
      if (base)
        rel = relative_to (p, *base);
      for (NodeIndex k = 0; k < net.size (); ++k)
        {
          out << to_string (opts.protocol.kind) << ',' << num (opts.params.sigma ()) << ','
              << num (opts.params.tau ()) << ','
              << (fair ? std::to_string (opts.protocol.max_pending) : std::string ()) << ','
              << (fair ? std::to_string (opts.protocol.max_forward) : std::string ()) << ','
              << opts.phases << ',' << r << ',' << replica_seed (opts.seed, r) << ','
              << net.name (k) << ',';
          write_point_cells (out, p, k);
          out << ',' << trace.delivered_bits[k] << ',' << num (trace.transmit_seconds[k]) << ','
              << num (trace.elapsed) << ',' << to_string (opts.baseline) << ',';
          if (rel)
            out << num (rel->throughput_gain_pct[k]) << ',' << num (rel->bit_cost_increase_pct[k]);
          else
            out << ',';
          out << '\n';
        }
    }
}

void
cmd_curve (const Scenario &scenario, std::size_t steps, const CsmaParams &params, std::ostream &out)
{
  if (steps < 2)
    throw DomainError ("curve: need at least 2 alpha steps");
  const Network &net = scenario.network;
  const HelperAssignment assign = classify (net);
  const OperatingPoint reference = rr_performance (net, assign, Mode::Direct);

  struct Curve
  {
    const char *name;
    OperatingPoint coop;
    OperatingPoint direct;
  };
  const Curve curves[] = {
      {"rr", rr_performance (net, assign, Mode::Cooperative), reference},
      {"csma", csma_performance (net, assign, Mode::Cooperative, params),
       csma_performance (net, assign, Mode::Direct, params)},
  };

  out << "curve,sigma,tau,alpha,node,throughput,bit_cost,avg_power,throughput_gain_pct,"
         "bit_cost_increase_pct\n";
  for (const Curve &c : curves)
    {
      const bool rr = std::string (c.name) == "rr";
      for (std::size_t i = 0; i < steps; ++i)
        {
          const double alpha = static_cast<double> (i) / static_cast<double> (steps - 1);
          const OperatingPoint p = timeshare (c.coop, c.direct, alpha);
          const RelativeChange rel = relative_to (p, reference);
          for (NodeIndex k = 0; k < net.size (); ++k)
            {
              out << c.name << ',' << (rr ? std::string () : num (params.sigma ())) << ','
                  << (rr ? std::string () : num (params.tau ())) << ',' << num (alpha) << ','
                  << net.name (k) << ',';
              write_point_cells (out, p, k);
              out << ',' << num (rel.throughput_gain_pct[k]) << ','
                  << num (rel.bit_cost_increase_pct[k]) << '\n';
            }
        }
    }
}

void
cmd_converge (const Scenario &scenario, Mode mode, double coeff, const std::vector<double> &sigmas,
              std::ostream &out)
{
  if (!(coeff > 0.0))
    throw DomainError ("converge: tau coefficient must be > 0");
  const Network &net = scenario.network;
  const HelperAssignment assign = classify (net);
  const OperatingPoint limit = asymptotic_performance (net, assign, mode);

  out << "sigma,tau,node,throughput,bit_cost,throughput_gap,bit_cost_gap,status\n";
  for (double sigma : sigmas)
    {
      if (!(sigma > 0.0 && sigma < 1.0))
        throw DomainError ("converge: sigma values must lie in (0, 1), got " + num (sigma));
      const double tau = coeff * std::sqrt (sigma);
      if (tau >= 1.0)
        {
          for (NodeIndex k = 0; k < net.size (); ++k)
            out << num (sigma) << ',' << num (tau) << ',' << net.name (k) << ",,,,,tau>=1\n";
          continue;
        }
      const OperatingPoint p = csma_performance (net, assign, mode, CsmaParams (sigma, tau));
      for (NodeIndex k = 0; k < net.size (); ++k)
        out << num (sigma) << ',' << num (tau) << ',' << net.name (k) << ','
            << num (p.throughput[k]) << ',' << num (p.bit_cost[k]) << ','
            << num (std::abs (p.throughput[k] - limit.throughput[k]) / limit.throughput[k]) << ','
            << num (std::abs (p.bit_cost[k] - limit.bit_cost[k]) / limit.bit_cost[k]) << ",ok\n";
    }
  for (NodeIndex k = 0; k < net.size (); ++k)
    out << "asymptote,0," << net.name (k) << ',' << num (limit.throughput[k]) << ','
        << num (limit.bit_cost[k]) << ",0,0,ok\n";
}

bool
cmd_verify (const Scenario &scenario, const CsmaParams &params, std::ostream &out, double tolerance)
{
  const Network &net = scenario.network;
  const HelperAssignment assign = classify (net);
  bool ok = true;
  out << "mode,quantity,analytic,oracle,abs_diff,status\n";
  for (Mode mode : {Mode::Direct, Mode::Cooperative})
    {
      const PhaseExpectations a = csma_phase_expectations (net, assign, mode, params);
      const PhaseExpectations o = oracle::enumerate_phase (net, assign, mode, params);
      const std::pair<const char *, std::pair<double, double>> rows[] = {
          {"p_success", {a.p_success, o.p_success}},
          {"p_idle", {a.p_idle, o.p_idle}},
          {"t_idle", {a.t_idle, o.t_idle}},
          {"t_success", {a.t_success, o.t_success}},
          {"t_collision", {a.t_collision, o.t_collision}},
      };
      for (const auto &[name, values] : rows)
        {
          const double diff = std::abs (values.first - values.second);
          const bool pass = diff <= tolerance;
          ok = ok && pass;
          out << to_string (mode) << ',' << name << ',' << num (values.first) << ','
              << num (values.second) << ',' << num (diff) << ',' << (pass ? "pass" : "FAIL")
              << '\n';
        }
    }
  return ok;
}

int
main (int argc, char **argv, std::ostream &out, std::ostream &err)
{
  CLI::App app{"Throughput/bit-cost analysis and simulation of cooperative CSMA MAC protocols"};
  app.require_subcommand (1);

  std::string scenarioPath;
  std::string protocol;
  std::optional<double> sigma;
  std::optional<double> tau;
  std::optional<double> tauCoeff;
  std::vector<double> sigmaList;
  std::optional<std::uint64_t> phases;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> pending;
  std::optional<std::uint64_t> forwardMax;
  std::uint64_t replicas = 1;
  std::uint64_t warmup = 0;
  std::size_t alphaSteps = 13;
  std::string baseline = "none";
  std::string outPath;

  auto common = [&] (CLI::App *sub) {
    sub->add_option ("--scenario", scenarioPath, "scenario file")->required ();
    sub->add_option ("--out", outPath, "write CSV here instead of stdout");
  };
  auto *analytic = app.add_subcommand ("analytic", "closed-form operating points");
  common (analytic);
  analytic->add_option ("--protocol", protocol, "direct | coopmac | fairmac (default: all)");
  analytic->add_option ("--sigma", sigma, "slot length");
  analytic->add_option ("--tau", tau, "transmit probability");

  auto *simulate = app.add_subcommand ("simulate", "Monte Carlo run of one protocol");
  common (simulate);
  simulate->add_option ("--protocol", protocol, "direct | coopmac | fairmac")->required ();
  simulate->add_option ("--sigma", sigma, "slot length");
  simulate->add_option ("--tau", tau, "transmit probability");
  simulate->add_option ("--phases", phases, "contention phases to simulate");
  simulate->add_option ("--seed", seed, "64-bit random seed")->required ();
  simulate->add_option ("--pending", pending, "fairMAC: max pending packets P");
  simulate->add_option ("--forward-max", forwardMax, "fairMAC: max forwarded packets Q");
  simulate->add_option ("--replicas", replicas, "independent runs with derived seeds");
  simulate->add_option ("--warmup", warmup, "contention phases dropped before measuring");
  simulate->add_option ("--baseline", baseline, "rr-direct | csma-direct | none");

  auto *curve = app.add_subcommand ("curve", "time-sharing curves between CoopMAC and Direct Link");
  common (curve);
  curve->add_option ("--sigma", sigma, "slot length");
  curve->add_option ("--tau", tau, "transmit probability");
  curve->add_option ("--alpha-steps", alphaSteps, "number of alpha grid points (>= 2)");

  auto *converge = app.add_subcommand ("converge", "CSMA point as sigma shrinks with tau = c sqrt(sigma)");
  common (converge);
  converge->add_option ("--protocol", protocol, "direct | coopmac (default coopmac)");
  converge->add_option ("--tau-coeff", tauCoeff, "c in tau = c sqrt(sigma)")->required ();
  converge->add_option ("--sigma", sigmaList, "comma-separated slot lengths")
      ->delimiter (',')
      ->required ();

  auto *verify = app.add_subcommand ("verify", "check the phase model against exhaustive enumeration");
  common (verify);
  verify->add_option ("--sigma", sigma, "slot length");
  verify->add_option ("--tau", tau, "transmit probability");

  try
    {
      app.parse (argc, argv);
    }
  catch (const CLI::CallForHelp &e)
    {
      out << app.help ();
      return exit_ok;
    }
  catch (const CLI::ParseError &e)
    {
      err << "error: " << e.what () << '\n';
      return exit_validation;
    }

  try
    {
      const Scenario scenario = load_scenario (scenarioPath);
      const ScenarioDefaults &d = scenario.defaults;
      const CsmaParams params (sigma.value_or (d.sigma), tau.value_or (d.tau));

      // rows are buffered so a failed run leaves no partial CSV behind
      std::ostringstream sink;
      const auto emit = [&] {
        if (outPath.empty ())
          {
            out << sink.str ();
            out.flush ();
            return;
          }
        std::ofstream file (outPath);
        if (!file || !(file << sink.str ()) || !file.flush ())
          throw std::runtime_error ("cannot write output file '" + outPath + "'");
      };

      if (*analytic)
        {
          std::vector<Mode> modes{Mode::Direct, Mode::Cooperative};
          if (!protocol.empty ())
            modes = {parse_protocol_kind (protocol) == ProtocolKind::DirectLink ? Mode::Direct
                                                                                : Mode::Cooperative};
          cmd_analytic (scenario, modes, params, sink);
        }
      else if (*simulate)
        {
          SimulateOptions opts;
          opts.protocol.kind = parse_protocol_kind (protocol);
          opts.protocol.max_pending = pending.value_or (d.pending);
          opts.protocol.max_forward = forwardMax.value_or (d.forward_max);
          opts.params = params;
          opts.phases = phases.value_or (d.phases);
          opts.seed = *seed;
          opts.replicas = replicas;
          opts.warmup = warmup;
          opts.baseline = parse_baseline (baseline);
          cmd_simulate (scenario, opts, sink);
        }
      else if (*curve)
        cmd_curve (scenario, alphaSteps, params, sink);
      else if (*converge)
        {
          Mode mode = Mode::Cooperative;
          if (!protocol.empty () && parse_protocol_kind (protocol) == ProtocolKind::DirectLink)
            mode = Mode::Direct;
          cmd_converge (scenario, mode, *tauCoeff, sigmaList, sink);
        }
      else if (*verify)
        {
          if (!cmd_verify (scenario, params, sink))
            {
              emit ();
              err << "error: analytic phase model disagrees with enumeration\n";
              return exit_runtime;
            }
        }
      emit ();
    }
  catch (const DomainError &e)
    {
      err << "error: " << e.what () << '\n';
      return exit_validation;
    }
  catch (const std::exception &e)
    {
      err << "error: " << e.what () << '\n';
      return exit_runtime;
    }
  return exit_ok;
}

} // namespace fairmac::cli
