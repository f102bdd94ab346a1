#include "srsim/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <thread>

namespace srsim {

std::vector<double> default_obss_pd_grid() {
  std::vector<double> g;
  for (int t = -82; t <= -62; ++t) g.push_back(static_cast<double>(t));
  return g;
}

std::vector<double> default_load_grid_mbps() {
  return {1.0,  2.0,  4.0,  6.0,  8.0,  10.0, 12.5, 15.0,
          20.0, 25.0, 30.0, 40.0, 50.0, 60.0, 75.0, 100.0};
}

void finalize_sweep_spec(SweepSpec& spec) {
  if (spec.obss_pd_grid_dbm.empty()) spec.obss_pd_grid_dbm = default_obss_pd_grid();
  if (spec.loads_mbps.empty()) spec.loads_mbps = default_load_grid_mbps();
}

namespace {

bool parse_double_list(std::string_view s, std::vector<double>& out) {
  out.clear();
  std::string buf(s);
  for (char& c : buf)
    if (c == ',') c = ' ';
  std::istringstream iss(buf);
  double v;
  while (iss >> v) out.push_back(v);
  return iss.eof() && !out.empty();
}

}  // namespace

SweepParseResult parse_sweep_spec(std::string_view text) {
  SweepParseResult result;
  SweepSpec& spec = result.spec;
  auto err = [&](int line, std::string key, std::string msg) {
    result.errors.push_back({line, std::move(key), std::move(msg)});
  };

  int line_no = 0;
  std::size_t pos = 0;
  double obss_min = -82.0, obss_max = -62.0, obss_step = 1.0;
  bool obss_range_given = false;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;
    if (const std::size_t hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    while (!line.empty() && (line.front() == ' ' || line.front() == '\t'))
      line.remove_prefix(1);
    while (!line.empty() &&
           (line.back() == ' ' || line.back() == '\t' || line.back() == '\r'))
      line.remove_suffix(1);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      err(line_no, std::string(line), "expected `key = value`");
      continue;
    }
    std::string key(line.substr(0, eq));
    while (!key.empty() && (key.back() == ' ' || key.back() == '\t')) key.pop_back();
    std::string_view value = line.substr(eq + 1);
    while (!value.empty() && (value.front() == ' ' || value.front() == '\t'))
      value.remove_prefix(1);

    auto as_double = [&](double lo, double hi, double& field) {
      char* end = nullptr;
      const std::string v(value);
      const double x = std::strtod(v.c_str(), &end);
      if (end != v.c_str() + v.size() || v.empty() || x < lo || x > hi)
        err(line_no, key, "malformed or out-of-range value");
      else
        field = x;
    };
    auto as_int = [&](long long lo, long long hi, auto& field) {
      char* end = nullptr;
      const std::string v(value);
      const long long x = std::strtoll(v.c_str(), &end, 10);
      if (end != v.c_str() + v.size() || v.empty() || x < lo || x > hi)
        err(line_no, key, "malformed or out-of-range value");
      else
        field = static_cast<std::decay_t<decltype(field)>>(x);
    };

    if (key == "maps_m") {
      if (!parse_double_list(value, spec.map_sizes_m))
        err(line_no, key, "expected a list of map sizes");
    } else if (key == "loads_mbps") {
      if (!parse_double_list(value, spec.loads_mbps))
        err(line_no, key, "expected a list of loads");
    } else if (key == "obss_pd_dbm") {
      if (!parse_double_list(value, spec.obss_pd_grid_dbm))
        err(line_no, key, "expected a list of thresholds");
    } else if (key == "obss_pd_min_dbm") {
      as_double(-82.0, -62.0, obss_min);
      obss_range_given = true;
    } else if (key == "obss_pd_max_dbm") {
      as_double(-82.0, -62.0, obss_max);
      obss_range_given = true;
    } else if (key == "obss_pd_step_db") {
      as_double(1e-9, 20.0, obss_step);
      obss_range_given = true;
    } else if (key == "n_deployments") {
      as_int(1, 1000000, spec.n_deployments);
    } else if (key == "base_seed") {
      std::uint64_t s = 0;
      const std::string v(value);
      char* end = nullptr;
      s = std::strtoull(v.c_str(), &end, 10);
      if (end != v.c_str() + v.size() || v.empty())
        err(line_no, key, "malformed unsigned integer");
      else
        spec.base_seed = s;
    } else if (key == "jobs") {
      as_int(0, 1024, spec.jobs);
    } else if (key == "n_wlans") {
      as_int(1, 1000000, spec.n_wlans);
    } else if (key == "stas_per_wlan") {
      as_int(1, 1000000, spec.stas_per_wlan);
    } else if (key == "sta_dist_min_m") {
      as_double(1e-9, 1e9, spec.sta_dist_min_m);
    } else if (key == "sta_dist_max_m") {
      as_double(1e-9, 1e9, spec.sta_dist_max_m);
    } else if (key == "sim_time_s") {
      as_double(1e-12, 1e9, spec.sim_time_s);
    } else if (key == "queue_capacity") {
      long long q = 0;
      as_int(1, 100000000, q);
      spec.queue_capacity = static_cast<std::size_t>(q);
    } else if (key == "sr_all") {
      if (value == "true" || value == "1")
        spec.sr_all = true;
      else if (value == "false" || value == "0")
        spec.sr_all = false;
      else
        err(line_no, key, "expected true/false");
    } else {
      err(line_no, key, "unknown key");
    }
  }

  if (obss_range_given && spec.obss_pd_grid_dbm.empty()) {
    for (double t = obss_min; t <= obss_max + 1e-9; t += obss_step)
      spec.obss_pd_grid_dbm.push_back(t);
  }
  for (double t : spec.obss_pd_grid_dbm) {
    if (t < kObssPdMinDbm || t > kObssPdMaxDbm)
      err(0, "obss_pd_dbm", "threshold outside [-82, -62]");
  }
  if (spec.sta_dist_max_m < spec.sta_dist_min_m)
    err(0, "sta_dist_max_m", "sta distance range inverted");
  finalize_sweep_spec(spec);
  return result;
}

SimulationConfig cell_config(const SweepSpec& spec, double map_m,
                             std::uint64_t deployment_seed, double obss_pd_dbm,
                             double load_mbps) {
  SimulationConfig cfg;
  cfg.deployment.map = {map_m, map_m};
  cfg.deployment.seed = deployment_seed;
  cfg.n_wlans = spec.n_wlans;
  cfg.stas_per_wlan = spec.stas_per_wlan;
  cfg.sta_dist_min_m = spec.sta_dist_min_m;
  cfg.sta_dist_max_m = spec.sta_dist_max_m;
  cfg.sim_time_s = spec.sim_time_s;
  cfg.queue_capacity = spec.queue_capacity;
  cfg.traffic_load_bps = load_mbps * 1e6;
  cfg.sr_enabled = true;
  cfg.sr_wlan_a_only = !spec.sr_all;
  cfg.obss_pd_nonsrg_dbm = obss_pd_dbm;
  cfg.obss_pd_srg_dbm = obss_pd_dbm;  // single swept threshold
  regenerate_deployment(cfg);
  return cfg;
}

std::vector<SweepCell> run_sweep(
    const SweepSpec& spec,
    const std::function<void(std::size_t, std::size_t)>& progress) {
  SweepSpec s = spec;
  finalize_sweep_spec(s);

  std::vector<SweepCell> cells;
  cells.reserve(s.cell_count());
  for (double map_m : s.map_sizes_m) {
    for (int d = 0; d < s.n_deployments; ++d) {
      const std::uint64_t seed = s.base_seed ^ static_cast<std::uint64_t>(d);
      for (double obss : s.obss_pd_grid_dbm) {
        for (double load : s.loads_mbps) {
          SweepCell c;
          c.index = cells.size();
          c.map_m = map_m;
          c.deployment_index = d;
          c.deployment_seed = seed;
          c.obss_pd_dbm = obss;
          c.load_mbps = load;
          cells.push_back(std::move(c));
        }
      }
    }
  }

  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t jobs =
      std::min<std::size_t>(s.jobs > 0 ? static_cast<std::size_t>(s.jobs) : hw,
                            std::max<std::size_t>(cells.size(), 1));

  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> done{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cells.size()) return;
      SweepCell& c = cells[i];
      try {
        const SimulationConfig cfg =
            cell_config(s, c.map_m, c.deployment_seed, c.obss_pd_dbm, c.load_mbps);
        c.result = run_scenario(cfg);
      } catch (const std::exception& e) {
        c.status = e.what();
      }
      const std::size_t d = done.fetch_add(1) + 1;
      if (progress) progress(d, cells.size());
    }
  };
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return cells;
}

namespace {

std::string format_row(const SweepCell& c, std::size_t wlan_id,
                       const WlanMetrics& m) {
  char buf[320];
  char delay[32];
  if (m.mean_delay_s)
    std::snprintf(delay, sizeof delay, "%.6f", *m.mean_delay_s * 1e3);
  else
    std::snprintf(delay, sizeof delay, "nan");
  std::snprintf(buf, sizeof buf,
                "%g,%llu,%g,%g,%zu,%d,%.6f,%.9f,%s,%llu,%llu,%s\n", c.map_m,
                static_cast<unsigned long long>(c.deployment_seed), c.obss_pd_dbm,
                c.load_mbps, wlan_id, wlan_id == 0 ? 1 : 0, m.throughput_bps / 1e6,
                m.occupancy, delay, static_cast<unsigned long long>(m.delivered_packets),
                static_cast<unsigned long long>(m.dropped_packets), c.status.c_str());
  return buf;
}

}  // namespace

void write_results_csv(std::span<const SweepCell> cells, std::ostream& out) {
  out << "map_m,deployment_seed,obss_pd_dbm,load_mbps,wlan_id,is_wlan_a,"
         "throughput_mbps,occupancy,mean_delay_ms,delivered,dropped,status\n";
  for (const SweepCell& c : cells) {
    if (c.status != "ok") {
      WlanMetrics empty;
      out << format_row(c, 0, empty);
      continue;
    }
    for (std::size_t w = 0; w < c.result.wlans.size(); ++w)
      out << format_row(c, w, c.result.wlans[w]);
  }
}

void write_best_csv(std::span<const SweepCell> cells, std::ostream& out) {
  out << "map_m,deployment_seed,load_mbps,best_obss_pd_dbm,"
         "wlana_best_throughput_mbps,wlana_legacy_throughput_mbps,"
         "wlana_best_mean_delay_ms,wlana_legacy_mean_delay_ms,"
         "others_best_throughput_mbps,others_legacy_throughput_mbps\n";

  struct GroupKey {
    double map_m;
    std::uint64_t seed;
    double load;
    bool operator<(const GroupKey& o) const {
      if (map_m != o.map_m) return map_m < o.map_m;
      if (seed != o.seed) return seed < o.seed;
      return load < o.load;
    }
  };
  std::map<GroupKey, std::vector<const SweepCell*>> groups;
  for (const SweepCell& c : cells) {
    if (c.status != "ok") continue;
    groups[{c.map_m, c.deployment_seed, c.load_mbps}].push_back(&c);
  }

  auto others_mean_mbps = [](const RunResult& r) {
    if (r.wlans.size() <= 1) return 0.0;
    double sum = 0.0;
    for (std::size_t w = 1; w < r.wlans.size(); ++w) sum += r.wlans[w].throughput_bps;
    return sum / static_cast<double>(r.wlans.size() - 1) / 1e6;
  };

  for (const auto& [key, group] : groups) {
    const SweepCell* best = nullptr;
    const SweepCell* legacy = nullptr;
    for (const SweepCell* c : group) {
      if (c->obss_pd_dbm == kObssPdMinDbm) legacy = c;
      if (best == nullptr ||
          c->result.wlans[0].throughput_bps > best->result.wlans[0].throughput_bps ||
          (c->result.wlans[0].throughput_bps == best->result.wlans[0].throughput_bps &&
           c->obss_pd_dbm < best->obss_pd_dbm))
        best = c;
    }
    if (best == nullptr || legacy == nullptr) continue;
    auto delay_ms = [](const WlanMetrics& m) {
      return m.mean_delay_s ? *m.mean_delay_s * 1e3
                            : std::numeric_limits<double>::quiet_NaN();
    };
    char buf[320];
    std::snprintf(buf, sizeof buf, "%g,%llu,%g,%g,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f\n",
                  key.map_m, static_cast<unsigned long long>(key.seed), key.load,
                  best->obss_pd_dbm, best->result.wlans[0].throughput_bps / 1e6,
                  legacy->result.wlans[0].throughput_bps / 1e6,
                  delay_ms(best->result.wlans[0]), delay_ms(legacy->result.wlans[0]),
                  others_mean_mbps(best->result), others_mean_mbps(legacy->result));
    out << buf;
  }
}

}  // namespace srsim
