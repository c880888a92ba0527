// renbounds CLI: bound | simulate | verify | compare.
//
// All commands are deterministic functions of (config, seed); simulation
// output is additionally independent of --workers. Exit codes: 0 success,
// 1 verification failure, 2 config error, 3 runtime/simulation error.
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "renbounds/besseen.hpp"
#include "renbounds/common.hpp"
#include "renbounds/distributions.hpp"
#include "renbounds/mc.hpp"
#include "renbounds/renewal.hpp"
#include "renbounds/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace renbounds;

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

struct ExperimentConfig {
  DistributionSpec dist = DistributionSpec::exponential(1.0);
  std::vector<double> t_grid;
  std::string n_policy = "lattice";  // lattice | explicit
  std::vector<std::int64_t> n_list;
  std::int64_t replicates = 100000;
  std::uint64_t seed = 1;
  double delta_dkw = 1e-3;
  int workers = 1;
  std::int64_t max_events = 1000000000;
  std::string out_dir = "out";
};

DistributionSpec parse_distribution(const json& j) {
  if (!j.is_object() || !j.contains("family")) {
    throw ConfigError("distribution: expected an object with a 'family' key");
  }
  const std::string fam = j.at("family").get<std::string>();
  auto num = [&](const char* key) -> double {
    if (!j.contains(key)) {
      throw ConfigError(std::string("distribution: missing parameter '") + key +
                        "' for family " + fam);
    }
    return j.at(key).get<double>();
  };
  try {
    if (fam == "exponential") return DistributionSpec::exponential(num("rate"));
    if (fam == "pareto") return DistributionSpec::pareto(num("scale"), num("alpha"));
    if (fam == "gamma") return DistributionSpec::gamma(num("shape"), num("rate"));
    if (fam == "lognormal") {
      return DistributionSpec::lognormal(num("mu_log"), num("sigma_log"));
    }
    if (fam == "uniform") return DistributionSpec::uniform(num("a"), num("b"));
    if (fam == "discrete") {
      if (!j.contains("atoms")) throw ConfigError("distribution: discrete needs 'atoms'");
      std::vector<DiscreteAtom> atoms;
      for (const auto& a : j.at("atoms")) {
        atoms.push_back({a.at(0).get<double>(), a.at(1).get<double>()});
      }
      return DistributionSpec::discrete(std::move(atoms));
    }
  } catch (const UnsupportedDistributionError& e) {
    throw ConfigError(std::string("distribution: ") + e.what());
  }
  throw ConfigError("distribution: unknown family '" + fam + "'");
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config parse error in " + path + ": " + e.what());
  }
  ExperimentConfig c;
  try {
    c.dist = parse_distribution(j.at("distribution"));
    c.t_grid = j.at("t_grid").get<std::vector<double>>();
    if (j.contains("n_policy")) c.n_policy = j.at("n_policy").get<std::string>();
    if (j.contains("n_list")) c.n_list = j.at("n_list").get<std::vector<std::int64_t>>();
    if (j.contains("replicates")) c.replicates = j.at("replicates").get<std::int64_t>();
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("delta_dkw")) c.delta_dkw = j.at("delta_dkw").get<double>();
    if (j.contains("workers")) c.workers = j.at("workers").get<int>();
    if (j.contains("max_events")) c.max_events = j.at("max_events").get<std::int64_t>();
    if (j.contains("out_dir")) c.out_dir = j.at("out_dir").get<std::string>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config field error: ") + e.what());
  }
  if (c.t_grid.empty()) throw ConfigError("t_grid must be nonempty");
  for (double t : c.t_grid) {
    if (!(t > 0.0)) throw ConfigError("t_grid values must be > 0");
  }
  // replicates == 0 is allowed only by `compare`, which then skips the
  // empirical column; `simulate` requires at least one replicate
  if (c.replicates < 0) throw ConfigError("replicates must be >= 0");
  if (!(c.delta_dkw > 0.0 && c.delta_dkw < 1.0)) {
    throw ConfigError("delta_dkw must be in (0,1)");
  }
  if (c.n_policy != "lattice" && c.n_policy != "explicit") {
    throw ConfigError("n_policy must be 'lattice' or 'explicit'");
  }
  if (c.n_policy == "explicit" && c.n_list.empty()) {
    throw ConfigError("n_policy 'explicit' requires a nonempty n_list");
  }
  return c;
}

std::vector<std::int64_t> lattice_for(const ExperimentConfig& c, double t) {
  if (c.n_policy == "explicit") return c.n_list;
  std::vector<std::int64_t> ns;
  const std::int64_t n_max = mc::default_n_max(c.dist, t);
  ns.reserve(static_cast<std::size_t>(n_max));
  for (std::int64_t n = 1; n <= n_max; ++n) ns.push_back(n);
  return ns;
}

std::ofstream open_out(const std::string& dir, const std::string& name) {
  fs::create_directories(dir);
  const fs::path p = fs::path(dir) / name;
  std::ofstream out(p, std::ios::binary);
  if (!out) throw SimulationError("cannot open output file: " + p.string());
  return out;
}

std::string t_tag(double t) {
  std::string s = fmt(t);
  for (auto& ch : s) {
    if (ch == '.') ch = 'p';
    if (ch == '+') ch = '_';
    if (ch == '-') ch = 'm';
  }
  return s;
}

// ---- bound ------------------------------------------------------------------

int cmd_bound(const ExperimentConfig& c) {
  auto out = open_out(c.out_dir, "bound.csv");
  out << "# renbounds.bound.v1\n";
  out << "t,n,z,z_phi,smooth_term,nonuniform_term,total,clamped_total,"
         "englund_bound,alternate_bound\n";
  const auto eng_gamma = moments(c.dist);
  for (double t : c.t_grid) {
    const auto englund = renewal::englund_bound(c.dist, t);
    for (std::int64_t n : lattice_for(c, t)) {
      const auto pt = renewal::RenewalPoint::make(c.dist, n, t);
      const auto b = renewal::clt_bound(pt);
      const double alt = renewal::alternate_bound(c.dist, n, t);
      out << fmt(t) << ',' << n << ',' << fmt(pt.z) << ',' << fmt(pt.z_phi) << ','
          << fmt(b.term_smooth) << ',' << fmt(b.term_nonuniform) << ','
          << fmt(b.total) << ',' << fmt(b.clamped()) << ','
          << (englund ? fmt(*englund) : std::string("NA")) << ',' << fmt(alt) << '\n';
    }
  }
  (void)eng_gamma;
  std::cerr << "bound: wrote " << c.out_dir << "/bound.csv\n";
  return 0;
}

// ---- simulate ---------------------------------------------------------------

json simulate_one(const ExperimentConfig& c, double t, std::ostream& csv) {
  const auto ecdf = mc::simulate_counts(c.dist, t, c.replicates, c.seed, c.delta_dkw,
                                        c.workers, c.max_events);
  const auto ks = mc::kolmogorov_distance(ecdf);

  csv << "# renbounds.cdf.v1\n";
  csv << "n,count,ecdf,phi_arg,phi_value,abs_dev\n";
  double cum = 0.0;
  const double N = static_cast<double>(ecdf.replicates);
  bool bound_ok_all = true;
  std::int64_t bound_violations = 0;
  for (std::int64_t n = 0; n <= ecdf.n_max; ++n) {
    cum += static_cast<double>(ecdf.counts[static_cast<std::size_t>(n)]);
    const double f = cum / N;
    const double arg = mc::z_phi(c.dist, n, t);
    const double phi = phi_cdf(arg);
    const double dev = std::fabs(f - phi);
    csv << n << ',' << ecdf.counts[static_cast<std::size_t>(n)] << ',' << fmt(f) << ','
        << fmt(arg) << ',' << fmt(phi) << ',' << fmt(dev) << '\n';
    if (n >= 1) {
      const auto b = renewal::clt_bound(renewal::RenewalPoint::make(c.dist, n, t));
      if (b.clamped() < dev - ecdf.dkw_slack) {
        bound_ok_all = false;
        ++bound_violations;
      }
    }
  }

  json summary;
  summary["t"] = t;
  summary["replicates"] = ecdf.replicates;
  summary["n_max"] = ecdf.n_max;
  summary["delta_dkw"] = ecdf.delta;
  summary["dkw_slack"] = ecdf.dkw_slack;
  summary["kolmogorov_distance"] = ks.distance_to_phi;
  summary["argmax_n"] = ks.argmax_n;
  summary["bound_ok_all"] = bound_ok_all;
  summary["bound_violations"] = bound_violations;
  return summary;
}

int cmd_simulate(const ExperimentConfig& c) {
  if (c.replicates < 1) throw ConfigError("simulate requires replicates >= 1");
  json summaries = json::array();
  for (double t : c.t_grid) {
    auto csv = open_out(c.out_dir, "cdf_t" + t_tag(t) + ".csv");
    summaries.push_back(simulate_one(c, t, csv));
  }
  json root;
  root["schema"] = "renbounds.simulate-summary.v1";
  root["distribution"] = c.dist.name();
  root["seed"] = c.seed;
  root["results"] = summaries;
  auto out = open_out(c.out_dir, "simulate_summary.json");
  out << root.dump(2) << '\n';
  std::cerr << "simulate: wrote " << c.out_dir << "/simulate_summary.json\n";
  return 0;
}

// ---- verify -----------------------------------------------------------------

int cmd_verify(const std::vector<std::string>& selection, const std::string& out_dir,
               const std::vector<std::string>& overrides) {
  verify::Constants k;
  for (const auto& ov : overrides) {
    const auto eq = ov.find('=');
    if (eq == std::string::npos) throw ConfigError("override must be NAME=VALUE: " + ov);
    const std::string name = ov.substr(0, eq);
    const double value = std::stod(ov.substr(eq + 1));
    if (name == "c2_beta_large") k.c2.beta_large = value;
    else if (name == "c2_small_z") k.c2.small_z = value;
    else if (name == "c2_large_z") k.c2.large_z = value;
    else if (name == "uniform_be") k.uniform_be = value;
    else if (name == "envelope_tail") k.envelope_tail = value;
    else if (name == "envelope_quad") k.envelope_quad = value;
    else if (name == "envelope_eighth") k.envelope_eighth = value;
    else if (name == "envelope_exp_coef") k.envelope_exp_coef = value;
    else if (name == "truncated_gap") k.truncated_gap = value;
    else if (name == "pair_base") k.pair_base = value;
    else if (name == "phi_gap_scale") k.phi_gap_scale = value;
    else throw ConfigError("unknown override constant: " + name);
  }

  std::vector<std::string> names = selection;
  if (names.empty() || (names.size() == 1 && names[0] == "all")) {
    names = verify::check_names();
  }
  json checks = json::array();
  bool all_pass = true;
  for (const auto& name : names) {
    const auto res = verify::run_check(name, k);  // ConfigError on unknown name
    json jc;
    jc["name"] = res.name;
    jc["claim"] = res.claim;
    jc["grid_size"] = res.grid_size;
    jc["violations"] = res.violations;
    jc["worst_margin"] = res.worst_margin;
    jc["worst_point"] = res.worst_point;
    jc["slack"] = res.slack;
    jc["pass"] = res.pass();
    checks.push_back(jc);
    all_pass = all_pass && res.pass();
    std::cout << (res.pass() ? "[PASS] " : "[FAIL] ") << res.name
              << " (grid=" << res.grid_size << ", violations=" << res.violations
              << ", worst_margin=" << fmt(res.worst_margin)
              << (res.pass() ? "" : ", worst_point=" + res.worst_point) << ")\n";
  }
  json root;
  root["schema"] = "renbounds.verify-report.v1";
  root["all_pass"] = all_pass;
  root["checks"] = checks;
  auto out = open_out(out_dir, "verify_report.json");
  out << root.dump(2) << '\n';
  return all_pass ? 0 : 1;
}

// ---- compare ----------------------------------------------------------------

int cmd_compare(const ExperimentConfig& c) {
  auto out = open_out(c.out_dir, "compare.csv");
  out << "# renbounds.compare.v1\n";
  out << "t,n,z,smooth_term,nonuniform_term,clt_total,alternate_bound,"
         "englund_bound,empirical_kolmogorov\n";
  for (double t : c.t_grid) {
    // evaluate at the central lattice point n = ceil(t/mu), which keeps the
    // smooth term in its t <= n mu branch
    const std::int64_t n =
        std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(t / c.dist.mu())));
    const auto pt = renewal::RenewalPoint::make(c.dist, n, t);
    const auto b = renewal::clt_bound(pt);
    const auto englund = renewal::englund_bound(c.dist, t);
    const double alt = renewal::alternate_bound(c.dist, n, t);
    std::string emp = "NA";
    if (c.replicates > 0) {
      const auto ecdf = mc::simulate_counts(c.dist, t, c.replicates, c.seed,
                                            c.delta_dkw, c.workers, c.max_events);
      emp = fmt(mc::kolmogorov_distance(ecdf).distance_to_phi);
    }
    out << fmt(t) << ',' << n << ',' << fmt(pt.z) << ',' << fmt(b.term_smooth) << ','
        << fmt(b.term_nonuniform) << ',' << fmt(b.total) << ',' << fmt(alt) << ','
        << (englund ? fmt(*englund) : std::string("NA")) << ',' << emp << '\n';
  }
  std::cerr << "compare: wrote " << c.out_dir << "/compare.csv\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Explicit renewal-CLT and Berry-Esseen bound calculator"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed_override;
  std::optional<std::string> out_override;
  std::optional<int> workers_override;
  std::optional<double> delta_override;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "experiment config (JSON)")->required();
    sub->add_option("--seed", seed_override, "override config seed");
    sub->add_option("--out", out_override, "override output directory");
    sub->add_option("--workers", workers_override, "override worker count");
    sub->add_option("--delta", delta_override, "override DKW confidence delta");
  };

  auto* bound = app.add_subcommand("bound", "bound tables over the (t, n) grid");
  add_common(bound);
  auto* simulate = app.add_subcommand("simulate", "empirical count CDFs and summaries");
  add_common(simulate);
  auto* compare = app.add_subcommand("compare", "bound comparison across the t grid");
  add_common(compare);

  auto* verify_cmd = app.add_subcommand("verify", "run inequality checks");
  std::vector<std::string> checks;
  std::string verify_out = "out";
  std::vector<std::string> overrides;
  verify_cmd->add_option("checks", checks, "check names (default: all)");
  verify_cmd->add_option("--out", verify_out, "output directory");
  verify_cmd->add_option("--override-constant", overrides,
                         "NAME=VALUE constant override (test fixture)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (verify_cmd->parsed()) return cmd_verify(checks, verify_out, overrides);
    ExperimentConfig c = load_config(config_path);
    if (seed_override) c.seed = *seed_override;
    if (out_override) c.out_dir = *out_override;
    if (workers_override) c.workers = *workers_override;
    if (delta_override) c.delta_dkw = *delta_override;
    if (!(c.delta_dkw > 0.0 && c.delta_dkw < 1.0)) {
      throw ConfigError("delta must be in (0,1)");
    }
    if (bound->parsed()) return cmd_bound(c);
    if (simulate->parsed()) return cmd_simulate(c);
    if (compare->parsed()) return cmd_compare(c);
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const UnsupportedDistributionError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
