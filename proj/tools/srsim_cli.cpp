// Command-line experiment runner: single scenario runs, sweep grids, and
// deployment generation.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "srsim/scenario.hpp"
#include "srsim/simulation.hpp"
#include "srsim/sweep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 1;
constexpr int kExitSimAbort = 2;

std::string read_file(const std::string& path, bool& ok) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    ok = false;
    return {};
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  ok = true;
  return buf.str();
}

void print_run_csv(const srsim::RunResult& r, std::ostream& out, bool header) {
  if (header)
    out << "map_m,deployment_seed,obss_pd_dbm,load_mbps,wlan_id,is_wlan_a,"
           "throughput_mbps,occupancy,mean_delay_ms,delivered,dropped,status\n";
  for (std::size_t w = 0; w < r.wlans.size(); ++w) {
    const srsim::WlanMetrics& m = r.wlans[w];
    char delay[32];
    if (m.mean_delay_s)
      std::snprintf(delay, sizeof delay, "%.6f", *m.mean_delay_s * 1e3);
    else
      std::snprintf(delay, sizeof delay, "nan");
    char buf[320];
    std::snprintf(buf, sizeof buf, "%g,%llu,%g,%g,%zu,%d,%.6f,%.9f,%s,%llu,%llu,ok\n",
                  r.fingerprint.map_width_m,
                  static_cast<unsigned long long>(r.fingerprint.deployment_seed),
                  r.fingerprint.obss_pd_dbm, r.fingerprint.load_bps / 1e6, w,
                  w == 0 ? 1 : 0, m.throughput_bps / 1e6, m.occupancy, delay,
                  static_cast<unsigned long long>(m.delivered_packets),
                  static_cast<unsigned long long>(m.dropped_packets));
    out << buf;
  }
}

int cmd_run(const std::string& config_path, const std::string& out_path,
            const std::string& trace_path) {
  bool ok = false;
  const std::string text = read_file(config_path, ok);
  if (!ok) {
    std::cerr << "error: cannot read config file '" << config_path << "'\n";
    return kExitConfigError;
  }
  srsim::ParseResult parsed = srsim::parse_config(text);
  if (!parsed.ok()) {
    for (const srsim::ParseError& e : parsed.errors)
      std::cerr << config_path << ":" << e.line << ": " << e.key << ": " << e.message
                << "\n";
    return kExitConfigError;
  }
  const auto violations = srsim::validate_config(parsed.config);
  if (!violations.empty()) {
    for (const std::string& v : violations)
      std::cerr << config_path << ": invalid config: " << v << "\n";
    return kExitConfigError;
  }

  std::ofstream trace_file;
  srsim::SimOptions opts;
  if (!trace_path.empty()) {
    trace_file.open(trace_path, std::ios::binary);
    if (!trace_file) {
      std::cerr << "error: cannot open trace file '" << trace_path << "'\n";
      return kExitConfigError;
    }
    opts.trace = &trace_file;
  }

  try {
    const srsim::RunResult r = srsim::run_scenario(parsed.config, opts);
    if (out_path.empty()) {
      print_run_csv(r, std::cout, true);
    } else {
      std::ofstream out(out_path, std::ios::binary);
      if (!out) {
        std::cerr << "error: cannot open output file '" << out_path << "'\n";
        return kExitConfigError;
      }
      print_run_csv(r, out, true);
    }
  } catch (const std::exception& e) {
    std::cerr << "simulation aborted: " << e.what() << "\n";
    return kExitSimAbort;
  }
  return kExitOk;
}

int cmd_sweep(const std::string& spec_path, srsim::SweepSpec overrides,
              bool maps_set, bool loads_set, bool obss_set, bool depl_set,
              bool seed_set, bool jobs_set, bool sr_all_set,
              const std::string& results_path, const std::string& best_path,
              bool quiet) {
  srsim::SweepSpec spec;
  if (!spec_path.empty()) {
    bool ok = false;
    const std::string text = read_file(spec_path, ok);
    if (!ok) {
      std::cerr << "error: cannot read sweep spec '" << spec_path << "'\n";
      return kExitConfigError;
    }
    srsim::SweepParseResult parsed = srsim::parse_sweep_spec(text);
    if (!parsed.ok()) {
      for (const srsim::ParseError& e : parsed.errors)
        std::cerr << spec_path << ":" << e.line << ": " << e.key << ": " << e.message
                  << "\n";
      return kExitConfigError;
    }
    spec = parsed.spec;
  }
  if (maps_set) spec.map_sizes_m = overrides.map_sizes_m;
  if (loads_set) spec.loads_mbps = overrides.loads_mbps;
  if (obss_set) spec.obss_pd_grid_dbm = overrides.obss_pd_grid_dbm;
  if (depl_set) spec.n_deployments = overrides.n_deployments;
  if (seed_set) spec.base_seed = overrides.base_seed;
  if (jobs_set) spec.jobs = overrides.jobs;
  if (sr_all_set) spec.sr_all = overrides.sr_all;
  if (spec.jobs == 0) {
    if (const char* env = std::getenv("SRSIM_JOBS")) spec.jobs = std::atoi(env);
  }
  srsim::finalize_sweep_spec(spec);
  for (double t : spec.obss_pd_grid_dbm) {
    if (t < srsim::kObssPdMinDbm || t > srsim::kObssPdMaxDbm) {
      std::cerr << "error: OBSS/PD " << t << " outside [-82, -62]\n";
      return kExitConfigError;
    }
  }

  auto progress = [&](std::size_t done, std::size_t total) {
    if (quiet) return;
    if (done % 50 == 0 || done == total)
      std::fprintf(stderr, "\r%zu/%zu cells", done, total);
    if (done == total) std::fprintf(stderr, "\n");
  };
  const auto cells = srsim::run_sweep(spec, progress);

  std::ofstream results(results_path, std::ios::binary);
  if (!results) {
    std::cerr << "error: cannot open '" << results_path << "'\n";
    return kExitConfigError;
  }
  srsim::write_results_csv(cells, results);
  std::ofstream best(best_path, std::ios::binary);
  if (!best) {
    std::cerr << "error: cannot open '" << best_path << "'\n";
    return kExitConfigError;
  }
  srsim::write_best_csv(cells, best);

  for (const srsim::SweepCell& c : cells) {
    if (c.status != "ok") {
      std::cerr << "error: cell (map=" << c.map_m << ", seed=" << c.deployment_seed
                << ", obss_pd=" << c.obss_pd_dbm << ", load=" << c.load_mbps
                << ") aborted: " << c.status << "\n";
      return kExitSimAbort;
    }
  }
  return kExitOk;
}

int cmd_generate(double map_m, double map_height_m, int n_wlans, int stas_per_wlan,
                 double sta_min, double sta_max, std::uint64_t seed,
                 const std::string& out_path) {
  srsim::SimulationConfig cfg;
  cfg.deployment.map.width_m = map_m;
  cfg.deployment.map.height_m = map_height_m > 0.0 ? map_height_m : map_m;
  cfg.deployment.seed = seed;
  cfg.n_wlans = n_wlans;
  cfg.stas_per_wlan = stas_per_wlan;
  cfg.sta_dist_min_m = sta_min;
  cfg.sta_dist_max_m = sta_max;
  try {
    srsim::regenerate_deployment(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
  const std::string text = srsim::write_deployment_config(cfg);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot open output file '" << out_path << "'\n";
      return kExitConfigError;
    }
    out << text;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"IEEE 802.11ax OBSS PD spatial reuse simulator"};
  app.require_subcommand(1);

  // run
  std::string run_config, run_out, run_trace;
  CLI::App* run = app.add_subcommand("run", "simulate one scenario config");
  run->add_option("config", run_config, "scenario config file")->required();
  run->add_option("--out", run_out, "CSV output path (default: stdout)");
  run->add_option("--trace", run_trace, "write the event trace to this file");

  // sweep
  std::string sweep_spec_path, sweep_results = "results.csv", sweep_best = "best.csv";
  srsim::SweepSpec ov;
  bool sr_all_flag = false, quiet = false;
  CLI::App* sweep = app.add_subcommand("sweep", "run a scenario grid");
  sweep->add_option("spec", sweep_spec_path, "sweep spec file (optional)");
  auto* o_maps = sweep->add_option("--maps", ov.map_sizes_m, "map sizes (m)");
  auto* o_loads = sweep->add_option("--loads", ov.loads_mbps, "offered loads (Mbps)");
  auto* o_obss =
      sweep->add_option("--obss-pd", ov.obss_pd_grid_dbm, "OBSS/PD grid (dBm)");
  auto* o_depl =
      sweep->add_option("--n-deployments", ov.n_deployments, "deployments per map");
  auto* o_seed = sweep->add_option("--base-seed", ov.base_seed, "base RNG seed");
  auto* o_jobs = sweep->add_option("--jobs", ov.jobs,
                                   "worker threads (default: $SRSIM_JOBS or all cores)");
  auto* o_sr_all = sweep->add_flag("--sr-all", sr_all_flag,
                                   "apply the swept OBSS/PD to every WLAN, not only WLAN_A");
  sweep->add_option("--results", sweep_results, "results CSV path");
  sweep->add_option("--best", sweep_best, "best-OBSS/PD companion CSV path");
  sweep->add_flag("--quiet", quiet, "suppress progress output");

  // generate
  double gen_map = 25.0, gen_map_h = 0.0, gen_sta_min = 1.0, gen_sta_max = 10.0;
  int gen_wlans = 10, gen_stas = 1;
  std::uint64_t gen_seed = 1;
  std::string gen_out;
  CLI::App* gen = app.add_subcommand("generate", "emit a random deployment config");
  gen->add_option("--map", gen_map, "map width (m); square unless --map-height");
  gen->add_option("--map-height", gen_map_h, "map height (m)");
  gen->add_option("--n-wlans", gen_wlans, "number of WLANs");
  gen->add_option("--stas-per-wlan", gen_stas, "STAs per WLAN");
  gen->add_option("--sta-dist-min", gen_sta_min, "min AP-STA distance (m)");
  gen->add_option("--sta-dist-max", gen_sta_max, "max AP-STA distance (m)");
  gen->add_option("--seed", gen_seed, "deployment seed");
  gen->add_option("--out", gen_out, "output path (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) return cmd_run(run_config, run_out, run_trace);
  if (sweep->parsed()) {
    ov.sr_all = sr_all_flag;
    return cmd_sweep(sweep_spec_path, ov, o_maps->count() > 0, o_loads->count() > 0,
                     o_obss->count() > 0, o_depl->count() > 0, o_seed->count() > 0,
                     o_jobs->count() > 0, o_sr_all->count() > 0, sweep_results,
                     sweep_best, quiet);
  }
  if (gen->parsed())
    return cmd_generate(gen_map, gen_map_h, gen_wlans, gen_stas, gen_sta_min,
                        gen_sta_max, gen_seed, gen_out);
  return kExitConfigError;
}
