#include "srsim/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

#include "srsim/rng.hpp"

namespace srsim {

namespace {

// Stream id reserved for topology draws; node streams use the node index.
constexpr std::uint64_t kTopologyStream = 0x746f706fULL;

double clamp01_to(double v, double lo, double hi) { return std::min(std::max(v, lo), hi); }

}  // namespace

double distance_m(const Position& a, const Position& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

DeploymentSpec generate_deployment(const MapSpec& map, int n_wlans,
                                   int stas_per_wlan, double sta_dist_min_m,
                                   double sta_dist_max_m, std::uint64_t seed) {
  if (map.width_m <= 0.0 || map.height_m <= 0.0)
    throw std::invalid_argument("map has zero area");
  if (n_wlans < 1) throw std::invalid_argument("n_wlans must be >= 1");
  if (stas_per_wlan < 1) throw std::invalid_argument("stas_per_wlan must be >= 1");
  if (sta_dist_min_m <= 0.0 || sta_dist_max_m < sta_dist_min_m)
    throw std::invalid_argument("sta distance range inverted or non-positive");

  RngStream topo(seed, kTopologyStream);
  DeploymentSpec dep;
  dep.map = map;
  dep.seed = seed;
  dep.wlans.resize(static_cast<std::size_t>(n_wlans));

  // All AP positions are drawn before any STA so the AP layout is invariant
  // under changes to stas_per_wlan. WLAN 0 sits exactly at the map center.
  int next_node_id = 0;
  for (int w = 0; w < n_wlans; ++w) {
    WlanSpec& wlan = dep.wlans[static_cast<std::size_t>(w)];
    wlan.wlan_id = w;
    wlan.bss_color = w + 1;
    wlan.ap.role = NodeRole::kAp;
    if (w == 0) {
      wlan.ap.pos = {map.width_m / 2.0, map.height_m / 2.0};
    } else {
      wlan.ap.pos = {topo.uniform01() * map.width_m, topo.uniform01() * map.height_m};
    }
  }
  for (int w = 0; w < n_wlans; ++w) {
    WlanSpec& wlan = dep.wlans[static_cast<std::size_t>(w)];
    wlan.ap.node_id = next_node_id++;
    wlan.stas.resize(static_cast<std::size_t>(stas_per_wlan));
    for (int s = 0; s < stas_per_wlan; ++s) {
      NodeSpec& sta = wlan.stas[static_cast<std::size_t>(s)];
      sta.role = NodeRole::kSta;
      sta.node_id = next_node_id++;
      const double radius =
          sta_dist_min_m + topo.uniform01() * (sta_dist_max_m - sta_dist_min_m);
      const double angle = topo.uniform01() * 2.0 * std::numbers::pi;
      sta.pos.x = clamp01_to(wlan.ap.pos.x + radius * std::cos(angle), 0.0, map.width_m);
      sta.pos.y = clamp01_to(wlan.ap.pos.y + radius * std::sin(angle), 0.0, map.height_m);
    }
  }
  return dep;
}

void apply_sr_settings(DeploymentSpec& dep, const SimulationConfig& cfg) {
  for (WlanSpec& wlan : dep.wlans) {
    const bool target = cfg.sr_wlan_a_only ? (wlan.wlan_id == 0) : true;
    SrConfig sr;
    sr.enabled = cfg.sr_enabled && target;
    sr.bss_color = wlan.bss_color;
    sr.srg_id = wlan.srg_id;
    sr.obss_pd_nonsrg_dbm = target ? cfg.obss_pd_nonsrg_dbm : kObssPdMinDbm;
    sr.obss_pd_srg_dbm = target ? cfg.obss_pd_srg_dbm : kObssPdMinDbm;
    sr.tx_pwr_ref_dbm = cfg.tx_pwr_ref_dbm;
    wlan.ap.sr = sr;
    for (NodeSpec& sta : wlan.stas) sta.sr = sr;
  }
}

void regenerate_deployment(SimulationConfig& cfg) {
  const std::uint64_t seed = cfg.deployment.seed;
  cfg.deployment =
      generate_deployment(cfg.deployment.map, cfg.n_wlans, cfg.stas_per_wlan,
                          cfg.sta_dist_min_m, cfg.sta_dist_max_m, seed);
  for (WlanSpec& wlan : cfg.deployment.wlans) {
    wlan.ap.tx_power_dbm = cfg.tx_power_dbm;
    wlan.ap.cca_cs_dbm = cfg.cca_cs_dbm;
    for (NodeSpec& sta : wlan.stas) {
      sta.tx_power_dbm = cfg.tx_power_dbm;
      sta.cca_cs_dbm = cfg.cca_cs_dbm;
    }
  }
  apply_sr_settings(cfg.deployment, cfg);
}

namespace {

struct RawEntry {
  int line;
  std::string value;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

bool parse_double(std::string_view s, double& out) {
  const std::string buf(s);
  char* end = nullptr;
  out = std::strtod(buf.c_str(), &end);
  return end == buf.c_str() + buf.size() && !buf.empty() && std::isfinite(out);
}

bool parse_int(std::string_view s, long long& out) {
  const std::string buf(s);
  char* end = nullptr;
  out = std::strtoll(buf.c_str(), &end, 10);
  return end == buf.c_str() + buf.size() && !buf.empty();
}

bool parse_u64(std::string_view s, std::uint64_t& out) {
  const std::string buf(s);
  if (buf.empty() || buf[0] == '-') return false;
  char* end = nullptr;
  out = std::strtoull(buf.c_str(), &end, 10);
  return end == buf.c_str() + buf.size();
}

bool parse_bool(std::string_view s, bool& out) {
  if (s == "true" || s == "1") return out = true, true;
  if (s == "false" || s == "0") return out = false, true;
  return false;
}

bool parse_position(std::string_view s, Position& out) {
  std::istringstream iss{std::string(s)};
  double x, y;
  std::string rest;
  if (!(iss >> x >> y)) return false;
  if (iss >> rest) return false;
  out = {x, y};
  return true;
}

// Staged per-WLAN overrides gathered from wlan.<i>.* keys.
struct WlanOverride {
  std::optional<int> bss_color;
  std::optional<int> srg_id;
  std::optional<bool> sr_enabled;
  std::optional<double> obss_pd_nonsrg_dbm;
  std::optional<double> obss_pd_srg_dbm;
  std::optional<double> tx_pwr_ref_dbm;
  std::optional<Position> ap_pos;
  std::optional<double> ap_tx_power_dbm;
  std::optional<double> ap_cca_cs_dbm;
  std::map<int, Position> sta_pos;
  std::map<int, double> sta_tx_power_dbm;
  std::map<int, double> sta_cca_cs_dbm;
};

}  // namespace

ParseResult parse_config(std::string_view text) {
  ParseResult result;
  SimulationConfig& cfg = result.config;
  std::map<int, WlanOverride> wlan_overrides;
  std::optional<std::uint64_t> seed;
  std::optional<int> global_srg;

  auto err = [&](int line, std::string key, std::string msg) {
    result.errors.push_back({line, std::move(key), std::move(msg)});
  };

  using Handler = std::function<bool(std::string_view, std::string&)>;
  auto dbl = [](double& field, double lo, double hi) {
    return Handler([&field, lo, hi](std::string_view v, std::string& msg) {
      double x;
      if (!parse_double(v, x)) return msg = "malformed number", false;
      if (x < lo || x > hi) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "value %g out of range [%g, %g]", x, lo, hi);
        return msg = buf, false;
      }
      field = x;
      return true;
    });
  };
  auto integer = [](int& field, long long lo, long long hi) {
    return Handler([&field, lo, hi](std::string_view v, std::string& msg) {
      long long x;
      if (!parse_int(v, x)) return msg = "malformed integer", false;
      if (x < lo || x > hi) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "value %lld out of range [%lld, %lld]", x, lo, hi);
        return msg = buf, false;
      }
      field = static_cast<int>(x);
      return true;
    });
  };
  auto boolean = [](bool& field) {
    return Handler([&field](std::string_view v, std::string& msg) {
      if (!parse_bool(v, field)) return msg = "expected true/false", false;
      return true;
    });
  };

  const double inf = std::numeric_limits<double>::infinity();
  int queue_capacity = static_cast<int>(cfg.queue_capacity);
  double traffic_load_mbps = cfg.traffic_load_bps / 1e6;

  std::map<std::string, Handler, std::less<>> handlers;
  handlers["map_width_m"] = dbl(cfg.deployment.map.width_m, 1e-9, inf);
  handlers["map_height_m"] = dbl(cfg.deployment.map.height_m, 1e-9, inf);
  handlers["n_wlans"] = integer(cfg.n_wlans, 1, 1000000);
  handlers["stas_per_wlan"] = integer(cfg.stas_per_wlan, 1, 1000000);
  handlers["sta_dist_min_m"] = dbl(cfg.sta_dist_min_m, 1e-9, inf);
  handlers["sta_dist_max_m"] = dbl(cfg.sta_dist_max_m, 1e-9, inf);
  handlers["traffic_load_mbps"] = dbl(traffic_load_mbps, 1e-12, inf);
  handlers["sim_time_s"] = dbl(cfg.sim_time_s, 1e-12, inf);
  handlers["queue_capacity"] = integer(queue_capacity, 1, 100000000);
  handlers["preload_packets"] = integer(cfg.preload_packets, 0, 100000000);
  handlers["tx_power_dbm"] = dbl(cfg.tx_power_dbm, 1.0, 20.0);
  handlers["cca_cs_dbm"] = dbl(cfg.cca_cs_dbm, -120.0, 0.0);
  handlers["sr_enabled"] = boolean(cfg.sr_enabled);
  handlers["sr_wlan_a_only"] = boolean(cfg.sr_wlan_a_only);
  handlers["obss_pd_nonsrg_dbm"] = dbl(cfg.obss_pd_nonsrg_dbm, kObssPdMinDbm, kObssPdMaxDbm);
  handlers["obss_pd_srg_dbm"] = dbl(cfg.obss_pd_srg_dbm, kObssPdMinDbm, kObssPdMaxDbm);
  handlers["channel_index"] = integer(cfg.deployment.channel, 0, 1000000);

  PhyMacConstants& phy = cfg.phy;
  handlers["legacy_symbol_us"] = dbl(phy.legacy_symbol_us, 1e-9, inf);
  handlers["symbol_us"] = dbl(phy.symbol_us, 1e-9, inf);
  handlers["n_subcarriers"] = integer(phy.n_subcarriers, 1, 100000);
  handlers["n_spatial_streams"] = integer(phy.n_spatial_streams, 1, 16);
  handlers["slot_us"] = dbl(phy.slot_us, 1e-9, inf);
  handlers["sifs_us"] = dbl(phy.sifs_us, 1e-9, inf);
  handlers["difs_us"] = dbl(phy.difs_us, 1e-9, inf);
  handlers["pifs_us"] = dbl(phy.pifs_us, 1e-9, inf);
  handlers["legacy_preamble_us"] = dbl(phy.legacy_preamble_us, 1e-9, inf);
  handlers["he_su_preamble_us"] = dbl(phy.he_su_preamble_us, 1e-9, inf);
  handlers["ack_us"] = dbl(phy.ack_us, 1e-9, inf);
  handlers["back_us"] = dbl(phy.block_ack_us, 1e-9, inf);
  handlers["legacy_symbol_bits"] = integer(phy.legacy_symbol_bits, 1, 1000000);
  handlers["data_packet_bits"] = integer(phy.data_packet_bits, 1, 100000000);
  handlers["max_ampdu_frames"] = integer(phy.max_ampdu_frames, 1, 100000);
  handlers["rts_bits"] = integer(phy.rts_bits, 1, 1000000);
  handlers["cts_bits"] = integer(phy.cts_bits, 1, 1000000);
  handlers["service_field_bits"] = integer(phy.service_field_bits, 0, 1000000);
  handlers["mac_header_bits"] = integer(phy.mac_header_bits, 0, 1000000);
  handlers["cw"] = integer(phy.contention_window, 0, 100000000);
  handlers["capture_effect_db"] = dbl(phy.capture_effect_db, -inf, inf);

  ChannelModelParams& ch = cfg.channel_model;
  handlers["path_loss_intercept_db"] = dbl(ch.path_loss_intercept_db, -inf, inf);
  handlers["path_loss_exponent"] = dbl(ch.path_loss_exponent, 1e-9, inf);
  handlers["wall_attenuation_db"] = dbl(ch.wall_attenuation_db, 0.0, inf);
  handlers["walls_per_m"] = dbl(ch.walls_per_m, 0.0, inf);
  handlers["noise_dbm"] = dbl(ch.noise_dbm, -200.0, 0.0);
  handlers["gain_tx_db"] = dbl(ch.gain_tx_db, -inf, inf);
  handlers["gain_rx_db"] = dbl(ch.gain_rx_db, -inf, inf);
  handlers["min_distance_m"] = dbl(ch.min_distance_m, 1e-9, inf);

  handlers["tx_pwr_ref_dbm"] = Handler([&cfg](std::string_view v, std::string& msg) {
    double x;
    if (!parse_double(v, x)) return msg = "malformed number", false;
    if (x != 21.0 && x != 25.0) return msg = "tx_pwr_ref_dbm must be 21 or 25", false;
    cfg.tx_pwr_ref_dbm = x;
    return true;
  });

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    if (const std::size_t hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      err(line_no, std::string(line), "expected `key = value`");
      continue;
    }
    const std::string key{trim(line.substr(0, eq))};
    const std::string_view value = trim(line.substr(eq + 1));

    if (key == "seed") {
      std::uint64_t s;
      if (!parse_u64(value, s))
        err(line_no, key, "malformed unsigned integer");
      else
        seed = s;
      continue;
    }
    if (key == "srg_id") {
      long long s;
      if (!parse_int(value, s) || s < 0)
        err(line_no, key, "malformed SRG id");
      else
        global_srg = static_cast<int>(s);
      continue;
    }

    if (key.rfind("wlan.", 0) == 0) {
      // wlan.<i>.<field>[.<j>.<subfield>]
      std::vector<std::string> parts;
      std::size_t start = 0;
      while (start <= key.size()) {
        const std::size_t dot = key.find('.', start);
        parts.emplace_back(key.substr(start, dot == std::string::npos ? key.size() - start : dot - start));
        if (dot == std::string::npos) break;
        start = dot + 1;
      }
      long long widx = -1;
      if (parts.size() < 3 || !parse_int(parts[1], widx) || widx < 0) {
        err(line_no, key, "malformed wlan key");
        continue;
      }
      WlanOverride& ov = wlan_overrides[static_cast<int>(widx)];
      auto set_dbl = [&](std::optional<double>& field, double lo, double hi) {
        double x;
        if (!parse_double(value, x) || x < lo || x > hi)
          err(line_no, key, "malformed or out-of-range number");
        else
          field = x;
      };
      if (parts.size() == 3 && parts[2] == "bss_color") {
        long long c;
        if (!parse_int(value, c) || c < 1)
          err(line_no, key, "bss_color must be a positive integer");
        else
          ov.bss_color = static_cast<int>(c);
      } else if (parts.size() == 3 && parts[2] == "srg_id") {
        long long s;
        if (!parse_int(value, s) || s < 0)
          err(line_no, key, "malformed SRG id");
        else
          ov.srg_id = static_cast<int>(s);
      } else if (parts.size() == 3 && parts[2] == "sr_enabled") {
        bool b;
        if (!parse_bool(value, b))
          err(line_no, key, "expected true/false");
        else
          ov.sr_enabled = b;
      } else if (parts.size() == 3 && parts[2] == "obss_pd_nonsrg_dbm") {
        set_dbl(ov.obss_pd_nonsrg_dbm, kObssPdMinDbm, kObssPdMaxDbm);
      } else if (parts.size() == 3 && parts[2] == "obss_pd_srg_dbm") {
        set_dbl(ov.obss_pd_srg_dbm, kObssPdMinDbm, kObssPdMaxDbm);
      } else if (parts.size() == 3 && parts[2] == "tx_pwr_ref_dbm") {
        double x;
        if (!parse_double(value, x) || (x != 21.0 && x != 25.0))
          err(line_no, key, "tx_pwr_ref_dbm must be 21 or 25");
        else
          ov.tx_pwr_ref_dbm = x;
      } else if (parts.size() == 4 && parts[2] == "ap" && parts[3] == "pos") {
        Position p;
        if (!parse_position(value, p))
          err(line_no, key, "expected `x y`");
        else
          ov.ap_pos = p;
      } else if (parts.size() == 4 && parts[2] == "ap" && parts[3] == "tx_power_dbm") {
        set_dbl(ov.ap_tx_power_dbm, 1.0, 20.0);
      } else if (parts.size() == 4 && parts[2] == "ap" && parts[3] == "cca_cs_dbm") {
        set_dbl(ov.ap_cca_cs_dbm, -120.0, 0.0);
      } else if (parts.size() == 5 && parts[2] == "sta") {
        long long sidx;
        if (!parse_int(parts[3], sidx) || sidx < 0) {
          err(line_no, key, "malformed sta index");
          continue;
        }
        if (parts[4] == "pos") {
          Position p;
          if (!parse_position(value, p))
            err(line_no, key, "expected `x y`");
          else
            ov.sta_pos[static_cast<int>(sidx)] = p;
        } else if (parts[4] == "tx_power_dbm") {
          double x;
          if (!parse_double(value, x) || x < 1.0 || x > 20.0)
            err(line_no, key, "malformed or out-of-range number");
          else
            ov.sta_tx_power_dbm[static_cast<int>(sidx)] = x;
        } else if (parts[4] == "cca_cs_dbm") {
          double x;
          if (!parse_double(value, x) || x < -120.0 || x > 0.0)
            err(line_no, key, "malformed or out-of-range number");
          else
            ov.sta_cca_cs_dbm[static_cast<int>(sidx)] = x;
        } else {
          err(line_no, key, "unknown key");
        }
      } else {
        err(line_no, key, "unknown key");
      }
      continue;
    }

    const auto it = handlers.find(key);
    if (it == handlers.end()) {
      err(line_no, key, "unknown key");
      continue;
    }
    std::string msg;
    if (!it->second(value, msg)) err(line_no, key, msg);
  }

  if (seed) cfg.deployment.seed = *seed;
  cfg.queue_capacity = static_cast<std::size_t>(queue_capacity);
  cfg.traffic_load_bps = traffic_load_mbps * 1e6;
  if (cfg.sta_dist_max_m < cfg.sta_dist_min_m)
    err(0, "sta_dist_max_m", "sta distance range inverted");

  if (!result.errors.empty()) return result;

  if (wlan_overrides.empty()) {
    regenerate_deployment(cfg);
    return result;
  }

  // Explicit deployment. WLAN indices must be contiguous from 0 and every
  // WLAN needs an AP position.
  const int n = static_cast<int>(wlan_overrides.size());
  for (const auto& [idx, ov] : wlan_overrides) {
    if (idx < 0 || idx >= n) {
      err(0, "wlan." + std::to_string(idx), "wlan indices must be contiguous from 0");
      return result;
    }
  }
  cfg.n_wlans = n;
  DeploymentSpec dep;
  dep.map = cfg.deployment.map;
  dep.seed = cfg.deployment.seed;
  dep.channel = cfg.deployment.channel;
  int next_node_id = 0;
  for (int w = 0; w < n; ++w) {
    const WlanOverride& ov = wlan_overrides[w];
    WlanSpec wlan;
    wlan.wlan_id = w;
    wlan.bss_color = ov.bss_color.value_or(w + 1);
    wlan.srg_id = ov.srg_id ? ov.srg_id : global_srg;
    if (!ov.ap_pos) {
      err(0, "wlan." + std::to_string(w) + ".ap.pos", "missing AP position");
      return result;
    }
    wlan.ap.role = NodeRole::kAp;
    wlan.ap.node_id = next_node_id++;
    wlan.ap.pos = *ov.ap_pos;
    wlan.ap.tx_power_dbm = ov.ap_tx_power_dbm.value_or(cfg.tx_power_dbm);
    wlan.ap.cca_cs_dbm = ov.ap_cca_cs_dbm.value_or(cfg.cca_cs_dbm);
    int max_sta = -1;
    for (const auto& [sidx, p] : ov.sta_pos) max_sta = std::max(max_sta, sidx);
    for (int s = 0; s <= max_sta; ++s) {
      const auto pit = ov.sta_pos.find(s);
      if (pit == ov.sta_pos.end()) {
        err(0, "wlan." + std::to_string(w) + ".sta." + std::to_string(s) + ".pos",
            "missing STA position (indices must be contiguous)");
        return result;
      }
      NodeSpec sta;
      sta.role = NodeRole::kSta;
      sta.node_id = next_node_id++;
      sta.pos = pit->second;
      const auto tit = ov.sta_tx_power_dbm.find(s);
      sta.tx_power_dbm = tit == ov.sta_tx_power_dbm.end() ? cfg.tx_power_dbm : tit->second;
      const auto cit = ov.sta_cca_cs_dbm.find(s);
      sta.cca_cs_dbm = cit == ov.sta_cca_cs_dbm.end() ? cfg.cca_cs_dbm : cit->second;
      wlan.stas.push_back(sta);
    }
    if (wlan.stas.empty()) {
      err(0, "wlan." + std::to_string(w), "wlan needs at least one STA");
      return result;
    }
    dep.wlans.push_back(std::move(wlan));
  }
  cfg.deployment = std::move(dep);
  apply_sr_settings(cfg.deployment, cfg);

  // Per-WLAN SR overrides beat the globals.
  for (auto& [idx, ov] : wlan_overrides) {
    WlanSpec& wlan = cfg.deployment.wlans[static_cast<std::size_t>(idx)];
    auto patch = [&](SrConfig& sr) {
      if (ov.sr_enabled) sr.enabled = *ov.sr_enabled;
      if (ov.obss_pd_nonsrg_dbm) sr.obss_pd_nonsrg_dbm = *ov.obss_pd_nonsrg_dbm;
      if (ov.obss_pd_srg_dbm) sr.obss_pd_srg_dbm = *ov.obss_pd_srg_dbm;
      if (ov.tx_pwr_ref_dbm) sr.tx_pwr_ref_dbm = *ov.tx_pwr_ref_dbm;
    };
    patch(wlan.ap.sr);
    for (NodeSpec& sta : wlan.stas) patch(sta.sr);
  }
  return result;
}

namespace {

bool inside_map(const Position& p, const MapSpec& m) {
  return p.x >= 0.0 && p.x <= m.width_m && p.y >= 0.0 && p.y <= m.height_m;
}

}  // namespace

std::vector<std::string> validate_config(const SimulationConfig& cfg) {
  std::vector<std::string> v;
  char buf[256];
  auto add = [&](const char* fmt, auto... args) {
    std::snprintf(buf, sizeof buf, fmt, args...);
    v.emplace_back(buf);
  };

  const DeploymentSpec& dep = cfg.deployment;
  if (dep.map.width_m <= 0.0 || dep.map.height_m <= 0.0)
    v.emplace_back("map has zero area");
  if (cfg.sim_time_s <= 0.0) v.emplace_back("sim_time_s must be positive");
  if (cfg.traffic_load_bps <= 0.0) v.emplace_back("traffic_load_bps must be positive");
  if (cfg.queue_capacity < 1) v.emplace_back("queue_capacity must be >= 1");
  if (dep.wlans.empty()) v.emplace_back("deployment has no WLANs");
  if (cfg.phy.contention_window < 0) v.emplace_back("cw must be >= 0");

  std::map<int, int> color_owner;
  std::map<int, int> id_owner;
  for (const WlanSpec& wlan : dep.wlans) {
    if (auto [it, inserted] = color_owner.emplace(wlan.bss_color, wlan.wlan_id); !inserted)
      add("duplicate bss_color %d shared by wlan %d and wlan %d", wlan.bss_color,
          it->second, wlan.wlan_id);
    if (wlan.stas.empty()) add("wlan %d has no STAs", wlan.wlan_id);

    auto check_node = [&](const NodeSpec& n, const char* role) {
      if (auto [it, inserted] = id_owner.emplace(n.node_id, wlan.wlan_id); !inserted)
        add("duplicate node id %d (wlan %d and wlan %d)", n.node_id, it->second,
            wlan.wlan_id);
      if (!inside_map(n.pos, dep.map))
        add("node %d (%s of wlan %d) outside map bounds at (%g, %g)", n.node_id, role,
            wlan.wlan_id, n.pos.x, n.pos.y);
      if (n.tx_power_dbm < 1.0 || n.tx_power_dbm > 20.0)
        add("node %d tx_power_dbm %g outside [1, 20]", n.node_id, n.tx_power_dbm);
      if (n.sr.bss_color != wlan.bss_color)
        add("node %d SR color %d differs from wlan color %d", n.node_id, n.sr.bss_color,
            wlan.bss_color);
      if (n.sr.tx_pwr_ref_dbm != 21.0 && n.sr.tx_pwr_ref_dbm != 25.0)
        add("node %d tx_pwr_ref_dbm must be 21 or 25", n.node_id);
      if (n.sr.enabled) {
        for (double thr : {n.sr.obss_pd_nonsrg_dbm, n.sr.obss_pd_srg_dbm}) {
          if (thr < kObssPdMinDbm || thr > kObssPdMaxDbm)
            add("node %d OBSS/PD %g outside [%g, %g]", n.node_id, thr, kObssPdMinDbm,
                kObssPdMaxDbm);
          if (thr < n.cca_cs_dbm)
            add("node %d OBSS/PD %g below its CCA/CS %g", n.node_id, thr, n.cca_cs_dbm);
          // The amendment bound holds for the SR-limited power the node will
          // actually use during SR opportunities.
          const double sr_power = max_tx_power(thr, n.sr.tx_pwr_ref_dbm, n.tx_power_dbm);
          if (thr > obss_pd_upper_bound(sr_power, n.sr.tx_pwr_ref_dbm) + 1e-9)
            add("node %d OBSS/PD %g exceeds the upper bound for its SR tx power %g",
                n.node_id, thr, sr_power);
        }
      }
    };
    check_node(wlan.ap, "AP");
    if (wlan.ap.role != NodeRole::kAp) add("wlan %d AP node has STA role", wlan.wlan_id);
    for (const NodeSpec& sta : wlan.stas) {
      check_node(sta, "STA");
      if (sta.role != NodeRole::kSta) add("wlan %d STA node has AP role", wlan.wlan_id);
    }
  }
  return v;
}

std::string write_deployment_config(const SimulationConfig& cfg) {
  std::ostringstream out;
  char buf[160];
  auto emit = [&](const char* fmt, auto... args) {
    std::snprintf(buf, sizeof buf, fmt, args...);
    out << buf << '\n';
  };

  emit("# deployment generated from seed %llu",
       static_cast<unsigned long long>(cfg.deployment.seed));
  emit("map_width_m = %.17g", cfg.deployment.map.width_m);
  emit("map_height_m = %.17g", cfg.deployment.map.height_m);
  emit("seed = %llu", static_cast<unsigned long long>(cfg.deployment.seed));
  emit("sim_time_s = %.17g", cfg.sim_time_s);
  emit("traffic_load_mbps = %.17g", cfg.traffic_load_bps / 1e6);
  emit("queue_capacity = %zu", cfg.queue_capacity);
  if (cfg.preload_packets > 0) emit("preload_packets = %d", cfg.preload_packets);
  emit("sr_enabled = %s", cfg.sr_enabled ? "true" : "false");
  emit("sr_wlan_a_only = %s", cfg.sr_wlan_a_only ? "true" : "false");

  // Non-default PHY/MAC and channel constants.
  const PhyMacConstants dphy;
  const ChannelModelParams dch;
  auto emit_if = [&](const char* key, double val, double def) {
    if (val != def) emit("%s = %.17g", key, val);
  };
  auto emit_if_i = [&](const char* key, int val, int def) {
    if (val != def) emit("%s = %d", key, val);
  };
  emit_if("legacy_symbol_us", cfg.phy.legacy_symbol_us, dphy.legacy_symbol_us);
  emit_if("symbol_us", cfg.phy.symbol_us, dphy.symbol_us);
  emit_if_i("n_subcarriers", cfg.phy.n_subcarriers, dphy.n_subcarriers);
  emit_if_i("n_spatial_streams", cfg.phy.n_spatial_streams, dphy.n_spatial_streams);
  emit_if("slot_us", cfg.phy.slot_us, dphy.slot_us);
  emit_if("sifs_us", cfg.phy.sifs_us, dphy.sifs_us);
  emit_if("difs_us", cfg.phy.difs_us, dphy.difs_us);
  emit_if("pifs_us", cfg.phy.pifs_us, dphy.pifs_us);
  emit_if("legacy_preamble_us", cfg.phy.legacy_preamble_us, dphy.legacy_preamble_us);
  emit_if("he_su_preamble_us", cfg.phy.he_su_preamble_us, dphy.he_su_preamble_us);
  emit_if("ack_us", cfg.phy.ack_us, dphy.ack_us);
  emit_if("back_us", cfg.phy.block_ack_us, dphy.block_ack_us);
  emit_if_i("legacy_symbol_bits", cfg.phy.legacy_symbol_bits, dphy.legacy_symbol_bits);
  emit_if_i("data_packet_bits", cfg.phy.data_packet_bits, dphy.data_packet_bits);
  emit_if_i("max_ampdu_frames", cfg.phy.max_ampdu_frames, dphy.max_ampdu_frames);
  emit_if_i("rts_bits", cfg.phy.rts_bits, dphy.rts_bits);
  emit_if_i("cts_bits", cfg.phy.cts_bits, dphy.cts_bits);
  emit_if_i("service_field_bits", cfg.phy.service_field_bits, dphy.service_field_bits);
  emit_if_i("mac_header_bits", cfg.phy.mac_header_bits, dphy.mac_header_bits);
  emit_if_i("cw", cfg.phy.contention_window, dphy.contention_window);
  emit_if("capture_effect_db", cfg.phy.capture_effect_db, dphy.capture_effect_db);
  emit_if("path_loss_intercept_db", cfg.channel_model.path_loss_intercept_db,
          dch.path_loss_intercept_db);
  emit_if("path_loss_exponent", cfg.channel_model.path_loss_exponent,
          dch.path_loss_exponent);
  emit_if("wall_attenuation_db", cfg.channel_model.wall_attenuation_db,
          dch.wall_attenuation_db);
  emit_if("walls_per_m", cfg.channel_model.walls_per_m, dch.walls_per_m);
  emit_if("noise_dbm", cfg.channel_model.noise_dbm, dch.noise_dbm);
  emit_if("gain_tx_db", cfg.channel_model.gain_tx_db, dch.gain_tx_db);
  emit_if("gain_rx_db", cfg.channel_model.gain_rx_db, dch.gain_rx_db);
  emit_if("min_distance_m", cfg.channel_model.min_distance_m, dch.min_distance_m);

  for (const WlanSpec& wlan : cfg.deployment.wlans) {
    out << '\n';
    emit("wlan.%d.bss_color = %d", wlan.wlan_id, wlan.bss_color);
    if (wlan.srg_id) emit("wlan.%d.srg_id = %d", wlan.wlan_id, *wlan.srg_id);
    emit("wlan.%d.sr_enabled = %s", wlan.wlan_id, wlan.ap.sr.enabled ? "true" : "false");
    emit("wlan.%d.obss_pd_nonsrg_dbm = %.17g", wlan.wlan_id,
         wlan.ap.sr.obss_pd_nonsrg_dbm);
    emit("wlan.%d.obss_pd_srg_dbm = %.17g", wlan.wlan_id, wlan.ap.sr.obss_pd_srg_dbm);
    emit("wlan.%d.ap.pos = %.17g %.17g", wlan.wlan_id, wlan.ap.pos.x, wlan.ap.pos.y);
    emit("wlan.%d.ap.tx_power_dbm = %.17g", wlan.wlan_id, wlan.ap.tx_power_dbm);
    emit("wlan.%d.ap.cca_cs_dbm = %.17g", wlan.wlan_id, wlan.ap.cca_cs_dbm);
    for (std::size_t s = 0; s < wlan.stas.size(); ++s) {
      const NodeSpec& sta = wlan.stas[s];
      emit("wlan.%d.sta.%zu.pos = %.17g %.17g", wlan.wlan_id, s, sta.pos.x, sta.pos.y);
      emit("wlan.%d.sta.%zu.tx_power_dbm = %.17g", wlan.wlan_id, s, sta.tx_power_dbm);
    }
  }
  return out.str();
}

}  // namespace srsim
