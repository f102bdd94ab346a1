#include "srsim/simulation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <string>

#include "srsim/channel.hpp"
#include "srsim/engine.hpp"
#include "srsim/mac.hpp"

namespace srsim {

namespace {

constexpr int kCtsTimeoutToken = 1;
constexpr int kBackTimeoutToken = 2;
constexpr int kNavToken = 3;

struct ActiveFrame {
  FrameTransmission f;
  double tx_mw = 0.0;
  // Decode candidates: nodes (other than the transmitter) receiving the
  // frame at or above their CCA/CS. SINR is tracked only for them.
  std::vector<int> audience;
  std::vector<double> rx_dbm;
  std::vector<double> rx_mw;
  std::vector<double> min_sinr_lin;
  std::vector<char> tx_violation;  // member transmitted during the frame
};

struct WlanTally {
  TimeNs airtime_ns = 0;
  std::uint64_t delivered_packets = 0;
  std::uint64_t delivered_bits = 0;
  std::vector<double> delays_s;
};

class Simulation {
 public:
  Simulation(const SimulationConfig& cfg, const SimOptions& opts)
      : cfg_(cfg), opts_(opts) {
    if (opts_.force_sr_disabled) {
      for (WlanSpec& w : cfg_.deployment.wlans) {
        w.ap.sr.enabled = false;
        for (NodeSpec& s : w.stas) s.sr.enabled = false;
      }
    }
    sim_end_ns_ = static_cast<TimeNs>(std::llround(cfg_.sim_time_s * 1e9));
    noise_mw_ = dbm_to_mw(cfg_.channel_model.noise_dbm);
    ce_lin_ = dbm_to_mw(cfg_.phy.capture_effect_db);  // dB ratio -> linear
    build_nodes();
  }

  RunResult run();

 private:
  // ---- construction ------------------------------------------------------

  void build_nodes() {
    const DeploymentSpec& dep = cfg_.deployment;
    std::size_t n_nodes = 0;
    for (const WlanSpec& w : dep.wlans) n_nodes += 1 + w.stas.size();
    nodes_.resize(n_nodes);
    tallies_.resize(dep.wlans.size());

    auto place = [&](const NodeSpec& spec, const WlanSpec& wlan) -> Node& {
      if (spec.node_id < 0 || spec.node_id >= static_cast<int>(n_nodes))
        throw SimulationError("node ids must be dense 0..N-1");
      Node& n = nodes_[static_cast<std::size_t>(spec.node_id)];
      n.id = spec.node_id;
      n.wlan_id = wlan.wlan_id;
      n.role = spec.role;
      n.pos = spec.pos;
      n.tx_power_dbm = spec.tx_power_dbm;
      n.cca_cs_dbm = spec.cca_cs_dbm;
      n.sr = spec.sr;
      if (opts_.force_sr_disabled) n.sr.enabled = false;
      n.queue = FifoQueue(cfg_.queue_capacity);
      n.rng = RngStream(dep.seed, static_cast<std::uint64_t>(spec.node_id));
      return n;
    };
    for (const WlanSpec& w : dep.wlans) {
      Node& ap = place(w.ap, w);
      for (const NodeSpec& s : w.stas) {
        place(s, w);
        ap.sta_node_ids.push_back(s.node_id);
      }
    }

    const std::size_t n = nodes_.size();
    gain_db_.assign(n, std::vector<double>(n, 0.0));
    gain_lin_.assign(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const double g = cfg_.channel_model.gain_tx_db + cfg_.channel_model.gain_rx_db -
                         path_loss_db(distance_m(nodes_[i].pos, nodes_[j].pos),
                                      cfg_.channel_model);
        gain_db_[i][j] = g;
        gain_lin_[i][j] = dbm_to_mw(g);  // pure ratio, same 10^(x/10) map
      }
    }
    total_rx_mw_.assign(n, 0.0);
  }

  double rx_dbm(int tx, const Node& at, double tx_power) const {
    return tx_power + gain_db_[static_cast<std::size_t>(tx)][static_cast<std::size_t>(at.id)];
  }

  // ---- tracing -----------------------------------------------------------

  void transition(Node& n, MacState to, EventKind cause) {
    if (n.state == to) return;
    if (opts_.trace != nullptr) {
      char buf[128];
      std::snprintf(buf, sizeof buf, "%.3f %d %s %s %s\n",
                    static_cast<double>(queue_.now()) / 1000.0, n.id,
                    to_string(n.state), to_string(cause), to_string(to));
      *opts_.trace << buf;
    }
    n.state = to;
  }

  // ---- channel bookkeeping ----------------------------------------------

  void rebuild_totals() {
    std::fill(total_rx_mw_.begin(), total_rx_mw_.end(), 0.0);
    for (const auto& [id, af] : active_) {
      const auto& row = gain_lin_[static_cast<std::size_t>(af.f.tx_node)];
      for (std::size_t n = 0; n < total_rx_mw_.size(); ++n)
        total_rx_mw_[n] += af.tx_mw * row[n];
    }
  }

  // Closes the constant-SINR interval [last_eval_, now): folds the current
  // SINR of every on-air frame into its running minimum and accrues the
  // parallel-airtime tallies.
  void fold_sinr_intervals(TimeNs now) {
    if (now <= last_eval_) return;
    const TimeNs span = now - last_eval_;
    if (!active_.empty()) {
      int wlans_any = 0, wlans_data = 0;
      int last_any = -1, last_data = -1;
      for (auto& [id, af] : active_) {
        for (std::size_t i = 0; i < af.audience.size(); ++i) {
          if (af.tx_violation[i]) continue;
          const std::size_t n = static_cast<std::size_t>(af.audience[i]);
          const double denom = noise_mw_ + total_rx_mw_[n] - af.rx_mw[i];
          const double sinr = af.rx_mw[i] / denom;
          if (sinr < af.min_sinr_lin[i]) af.min_sinr_lin[i] = sinr;
        }
        if (af.f.wlan_id != last_any) { ++wlans_any; last_any = af.f.wlan_id; }
        if (af.f.kind == FrameKind::kDataAmpdu && af.f.wlan_id != last_data) {
          ++wlans_data;
          last_data = af.f.wlan_id;
        }
      }
      // frames of one WLAN never overlap each other, so counting distinct
      // consecutive wlan ids over the id-ordered map undercounts only when a
      // WLAN splits around another; use a conservative exact recount then
      if (wlans_any >= 2) overlap_any_ns_ += span;
      if (wlans_data >= 2) overlap_data_ns_ += span;
    }
    last_eval_ = now;
  }

  bool physically_busy(const Node& n) const {
    for (const auto& [id, af] : active_) {
      if (af.f.tx_node == n.id) continue;
      if (rx_dbm(af.f.tx_node, n, af.f.tx_power_dbm) >= sensing_threshold_for(n, af.f))
        return true;
    }
    return false;
  }

  void register_opportunities(Node& n) {
    for (const auto& [id, af] : active_) {
      if (af.f.tx_node == n.id) continue;
      const FrameClassification cls =
          classify_frame(n.sr, af.f.bss_color, af.f.srg_id);
      if (cls == FrameClassification::kIntraBss) continue;
      const double thr = applicable_threshold(n.sr, cls, n.cca_cs_dbm);
      const double rx = rx_dbm(af.f.tx_node, n, af.f.tx_power_dbm);
      if (detect_opportunity(rx, n.cca_cs_dbm, thr) == SrDetection::kOpportunity) {
        merge_power_limits(n.limits, id,
                           max_tx_power(thr, n.sr.tx_pwr_ref_dbm, n.tx_power_dbm));
        n.triggers_on_air.insert(id);
      }
    }
  }

  // ---- contention --------------------------------------------------------

  void start_contention(Node& n, EventKind cause) {
    n.backoff.remaining_slots = draw_backoff(n.rng, cfg_.phy.contention_window);
    n.backoff.frozen = true;
    update_contention(n, cause);
  }

  // Re-evaluates one AP's contention after any channel-state change. A
  // pending tick at exactly `now` is a committed slot-boundary decision and
  // is never cancelled; only strictly-future ticks freeze.
  void update_contention(Node& n, EventKind cause, bool after_tick = false) {
    if (!n.is_contending()) return;
    const TimeNs now = queue_.now();
    const bool nav = now < n.nav_end_ns;
    const bool phys = physically_busy(n);
    if (n.sr.enabled) {
      register_opportunities(n);
      if (!n.limits.empty() && n.triggers_on_air.empty() && phys) {
        // every triggering frame has ended and the channel is busy again:
        // back to the default sensing state
        n.limits.clear();
      }
    }
    if (phys || nav) {
      if (n.tick_ev.valid() && n.tick_ev.at > now) queue_.cancel(n.tick_ev);
      if (!n.tick_ev.valid()) n.backoff.frozen = true;
      if (nav && !n.nav_ev.valid())
        n.nav_ev = queue_.schedule(n.nav_end_ns, {EventKind::kTimeout, n.id, 0, kNavToken});
      transition(n, (nav && !phys) ? MacState::kNavBlocked : MacState::kSensingBackoff,
                 cause);
      return;
    }
    if (!n.tick_ev.valid()) {
      n.backoff.frozen = false;
      const TimeNs delay =
          after_tick ? cfg_.phy.slot_ns()
                     : cfg_.phy.difs_ns() +
                           (n.backoff.remaining_slots > 0 ? cfg_.phy.slot_ns() : 0);
      n.tick_ev = queue_.schedule(now + delay, {EventKind::kSlotTick, n.id});
    }
    transition(n, MacState::kSensingBackoff, cause);
  }

  void update_all_contention(EventKind cause) {
    for (Node& n : nodes_) update_contention(n, cause);
  }

  // ---- frames ------------------------------------------------------------

  void schedule_frame(const FrameTransmission& f) {
    pending_.emplace(f.id, f);
    queue_.schedule(f.start_ns, {EventKind::kFrameStart, f.tx_node, f.id});
  }

  void on_frame_start(std::uint64_t id) {
    const auto pit = pending_.find(id);
    if (pit == pending_.end()) throw SimulationError("FRAME_START for unknown frame");
    const FrameTransmission f = pit->second;
    pending_.erase(pit);
    const TimeNs now = queue_.now();
    fold_sinr_intervals(now);

    Node& tx = nodes_[static_cast<std::size_t>(f.tx_node)];

    // A contention-originated transmission must see an idle channel, under
    // its own thresholds, against every frame that started strictly earlier.
    if (f.kind == FrameKind::kRts) {
      for (const auto& [oid, af] : active_) {
        if (af.f.tx_node == tx.id || af.f.start_ns >= now) continue;
        if (rx_dbm(af.f.tx_node, tx, af.f.tx_power_dbm) >= sensing_threshold_for(tx, af.f))
          throw SimulationError("node " + std::to_string(tx.id) +
                                " transmitted over a channel it senses busy");
      }
    }

    tx.transmitting = true;
    // receptions in flight at this node die: it cannot hear while talking
    for (auto& [oid, af] : active_) {
      for (std::size_t i = 0; i < af.audience.size(); ++i)
        if (af.audience[i] == tx.id) af.tx_violation[i] = 1;
    }

    ActiveFrame af;
    af.f = f;
    af.tx_mw = dbm_to_mw(f.tx_power_dbm);
    for (const Node& n : nodes_) {
      if (n.id == f.tx_node) continue;
      const double rx = rx_dbm(f.tx_node, n, f.tx_power_dbm);
      if (rx < n.cca_cs_dbm) continue;  // cannot decode, power condition
      af.audience.push_back(n.id);
      af.rx_dbm.push_back(rx);
      af.rx_mw.push_back(dbm_to_mw(rx));
      af.min_sinr_lin.push_back(std::numeric_limits<double>::infinity());
      af.tx_violation.push_back(n.transmitting ? 1 : 0);
    }
    active_.emplace(id, std::move(af));
    rebuild_totals();

    tallies_[static_cast<std::size_t>(f.wlan_id)].airtime_ns +=
        std::min(f.end_ns, sim_end_ns_) - f.start_ns;
    queue_.schedule(f.end_ns, {EventKind::kFrameEnd, f.tx_node, id});

    if (f.kind == FrameKind::kDataAmpdu || tx.role == NodeRole::kSta)
      transition(tx, MacState::kTransmittingData, EventKind::kFrameStart);

    Node& dest = nodes_[static_cast<std::size_t>(f.dest_node)];
    if (dest.role == NodeRole::kSta && dest.state == MacState::kIdle &&
        !dest.transmitting &&
        rx_dbm(f.tx_node, dest, f.tx_power_dbm) >= dest.cca_cs_dbm)
      transition(dest, MacState::kReceiving, EventKind::kFrameStart);

    update_all_contention(EventKind::kFrameStart);
  }

  void on_frame_end(std::uint64_t id) {
    const auto ait = active_.find(id);
    if (ait == active_.end()) throw SimulationError("FRAME_END for unknown frame");
    const TimeNs now = queue_.now();
    fold_sinr_intervals(now);

    const ActiveFrame af = std::move(ait->second);
    const FrameTransmission& f = af.f;
    Node& tx = nodes_[static_cast<std::size_t>(f.tx_node)];
    tx.transmitting = false;

    auto audience_index = [&](int node_id) -> int {
      for (std::size_t i = 0; i < af.audience.size(); ++i)
        if (af.audience[i] == node_id) return static_cast<int>(i);
      return -1;
    };
    auto decoded_at = [&](int idx) {
      return idx >= 0 && !af.tx_violation[static_cast<std::size_t>(idx)] &&
             af.min_sinr_lin[static_cast<std::size_t>(idx)] >= ce_lin_;
    };

    const int dest_idx = audience_index(f.dest_node);
    const bool dest_ok = decoded_at(dest_idx);
    Node& dest = nodes_[static_cast<std::size_t>(f.dest_node)];

    // the on-air set changes now; contention below must see it without f
    active_.erase(ait);
    rebuild_totals();
    for (Node& n : nodes_) n.triggers_on_air.erase(id);

    switch (f.kind) {
      case FrameKind::kRts:
        if (dest.role == NodeRole::kSta) {
          if (dest_ok && !dest.transmitting) {
            FrameTransmission cts;
            cts.id = next_frame_id_++;
            cts.kind = FrameKind::kCts;
            cts.tx_node = dest.id;
            cts.dest_node = f.tx_node;
            cts.wlan_id = f.wlan_id;
            cts.bss_color = f.bss_color;
            cts.srg_id = f.srg_id;
            cts.tx_power_dbm = dest.tx_power_dbm;  // responders use their own power
            cts.start_ns = now + cfg_.phy.sifs_ns();
            cts.end_ns = cts.start_ns + t_cts_ns_;
            cts.nav_end_ns = f.nav_end_ns;
            schedule_frame(cts);
          } else if (dest.state == MacState::kReceiving) {
            transition(dest, MacState::kIdle, EventKind::kFrameEnd);
          }
        }
        break;
      case FrameKind::kCts: {
        Node& ap = dest;
        if (ap.role == NodeRole::kAp && ap.txop.active &&
            ap.state == MacState::kWaitCts && f.tx_node == ap.txop.dest_node &&
            dest_ok) {
          queue_.cancel(ap.timeout_ev);
          FrameTransmission data;
          data.id = next_frame_id_++;
          data.kind = FrameKind::kDataAmpdu;
          data.tx_node = ap.id;
          data.dest_node = ap.txop.dest_node;
          data.wlan_id = ap.wlan_id;
          data.bss_color = f.bss_color;
          data.srg_id = f.srg_id;
          data.tx_power_dbm = ap.txop.tx_power_dbm;
          data.start_ns = now + cfg_.phy.sifs_ns();
          data.end_ns = data.start_ns + ap.txop.data_dur_ns;
          data.nav_end_ns = ap.txop.nav_end_ns;
          data.n_agg = ap.txop.n_agg;
          schedule_frame(data);
          ap.timeout_ev = queue_.schedule(
              data.end_ns + cfg_.phy.sifs_ns() + t_back_ns_ + cfg_.phy.difs_ns(),
              {EventKind::kTimeout, ap.id, 0, kBackTimeoutToken});
        }
        break;
      }
      case FrameKind::kDataAmpdu:
        if (dest.role == NodeRole::kSta) {
          if (dest_ok && !dest.transmitting) {
            FrameTransmission back;
            back.id = next_frame_id_++;
            back.kind = FrameKind::kBlockAck;
            back.tx_node = dest.id;
            back.dest_node = f.tx_node;
            back.wlan_id = f.wlan_id;
            back.bss_color = f.bss_color;
            back.srg_id = f.srg_id;
            back.tx_power_dbm = dest.tx_power_dbm;
            back.start_ns = now + cfg_.phy.sifs_ns();
            back.end_ns = back.start_ns + t_back_ns_;
            back.nav_end_ns = back.end_ns;
            schedule_frame(back);
          } else if (dest.state == MacState::kReceiving) {
            transition(dest, MacState::kIdle, EventKind::kFrameEnd);
          }
        }
        break;
      case FrameKind::kBlockAck: {
        Node& ap = dest;
        if (ap.role == NodeRole::kAp && ap.txop.active &&
            ap.state == MacState::kWaitBack && dest_ok) {
          conclude_txop(ap, true, EventKind::kFrameEnd);
        }
        break;
      }
    }

    // transmitter's own post-frame state
    if (tx.role == NodeRole::kSta) {
      transition(tx, MacState::kIdle, EventKind::kFrameEnd);
    } else if (f.kind == FrameKind::kDataAmpdu) {
      transition(tx, MacState::kWaitBack, EventKind::kFrameEnd);
    }

    // NAV at decoded third parties
    for (std::size_t i = 0; i < af.audience.size(); ++i) {
      const int nid = af.audience[i];
      if (nid == f.dest_node || !decoded_at(static_cast<int>(i))) continue;
      set_nav(nodes_[static_cast<std::size_t>(nid)], f, af.rx_dbm[i]);
    }

    update_all_contention(EventKind::kFrameEnd);
  }

  // ---- TXOP --------------------------------------------------------------

  void begin_txop(Node& ap) {
    const TimeNs now = queue_.now();
    const Packet& head = ap.queue.front();

    double power = ap.tx_power_dbm;
    bool sr_based = false;
    if (ap.sr.enabled) {
      if (const auto limit = ap.limits.active_limit_dbm()) {
        power = std::min(power, *limit);
        sr_based = true;
      }
    }

    const Node& sta = nodes_[static_cast<std::size_t>(head.dest_node)];
    const McsEntry* mcs = select_mcs(power + gain_db_[static_cast<std::size_t>(ap.id)]
                                                     [static_cast<std::size_t>(sta.id)]);
    if (mcs == nullptr) {
      // below MCS0 sensitivity at the allowed power: destination unreachable
      ++ap.dropped_no_link;
      ap.queue.pop_front(1);
      if (!ap.queue.empty())
        start_contention(ap, EventKind::kSlotTick);
      else
        transition(ap, MacState::kIdle, EventKind::kSlotTick);
      return;
    }

    ap.txop.active = true;
    ap.txop.dest_node = head.dest_node;
    ap.txop.ampdu = ap.queue.build_ampdu(cfg_.phy.max_ampdu_frames);
    ap.txop.n_agg = static_cast<int>(ap.txop.ampdu.size());
    ap.txop.mcs = mcs;
    ap.txop.tx_power_dbm = power;
    ap.txop.sr_based = sr_based;
    ap.txop.data_dur_ns =
        frame_duration_ns(FrameKind::kDataAmpdu, ap.txop.n_agg, mcs, cfg_.phy);
    const TimeNs rts_end = now + t_rts_ns_;
    ap.txop.nav_end_ns = rts_end + cfg_.phy.sifs_ns() + t_cts_ns_ + cfg_.phy.sifs_ns() +
                         ap.txop.data_dur_ns + cfg_.phy.sifs_ns() + t_back_ns_;

    FrameTransmission rts;
    rts.id = next_frame_id_++;
    rts.kind = FrameKind::kRts;
    rts.tx_node = ap.id;
    rts.dest_node = head.dest_node;
    rts.wlan_id = ap.wlan_id;
    rts.bss_color = ap.sr.bss_color;
    rts.srg_id = ap.sr.srg_id;
    rts.tx_power_dbm = power;
    rts.start_ns = now;
    rts.end_ns = rts_end;
    rts.nav_end_ns = ap.txop.nav_end_ns;
    schedule_frame(rts);

    ap.timeout_ev =
        queue_.schedule(rts_end + cfg_.phy.sifs_ns() + t_cts_ns_ + cfg_.phy.difs_ns(),
                        {EventKind::kTimeout, ap.id, 0, kCtsTimeoutToken});
    transition(ap, MacState::kWaitCts, EventKind::kSlotTick);
  }

  void conclude_txop(Node& ap, bool success, EventKind cause) {
    queue_.cancel(ap.timeout_ev);
    if (success) {
      WlanTally& tally = tallies_[static_cast<std::size_t>(ap.wlan_id)];
      const TimeNs now = queue_.now();
      for (const Packet& p : ap.txop.ampdu) {
        tally.delays_s.push_back(static_cast<double>(now - p.arrival_ns) * 1e-9);
        tally.delivered_bits += static_cast<std::uint64_t>(p.size_bits);
      }
      tally.delivered_packets += ap.txop.ampdu.size();
      ap.queue.pop_front(ap.txop.ampdu.size());
    }
    // SR transmission over: back to default sensing, limits void
    ap.limits.clear();
    ap.triggers_on_air.clear();
    ap.txop = TxopState{};
    if (!ap.queue.empty())
      start_contention(ap, cause);
    else
      transition(ap, MacState::kIdle, cause);
  }

  // ---- event handlers ----------------------------------------------------

  void on_arrival(Node& ap) {
    const TimeNs now = queue_.now();
    ++ap.generated;
    Packet p;
    p.id = ap.generated;
    p.size_bits = cfg_.phy.data_packet_bits;
    p.arrival_ns = now;
    p.dest_node = ap.sta_node_ids[static_cast<std::size_t>(ap.next_sta_rr) %
                                  ap.sta_node_ids.size()];
    ++ap.next_sta_rr;
    const auto outcome = ap.queue.enqueue(p);
    if (outcome == FifoQueue::Enqueue::kAccepted && !ap.txop.active &&
        ap.queue.size() == 1)
      start_contention(ap, EventKind::kPacketArrival);

    const double gap_s =
        next_arrival_gap(ap.rng, cfg_.traffic_load_bps, cfg_.phy.data_packet_bits);
    queue_.schedule(now + static_cast<TimeNs>(std::llround(gap_s * 1e9)),
                    {EventKind::kPacketArrival, ap.id});
  }

  void on_slot_tick(Node& n) {
    n.tick_ev.invalidate();
    if (!n.is_contending()) return;
    if (n.backoff.remaining_slots > 0) --n.backoff.remaining_slots;
    if (n.backoff.remaining_slots == 0) {
      begin_txop(n);
      return;
    }
    update_contention(n, EventKind::kSlotTick, /*after_tick=*/true);
  }

  void on_timeout(Node& n, int token) {
    switch (token) {
      case kCtsTimeoutToken:
      case kBackTimeoutToken:
        n.timeout_ev.invalidate();
        if (n.txop.active) conclude_txop(n, false, EventKind::kTimeout);
        break;
      case kNavToken:
        n.nav_ev.invalidate();
        update_contention(n, EventKind::kTimeout);
        break;
      default:
        throw SimulationError("unknown timeout token");
    }
  }

  bool dispatch(TimeNs, const Event& e) {
    switch (e.kind) {
      case EventKind::kPacketArrival:
        on_arrival(nodes_[static_cast<std::size_t>(e.node_id)]);
        return true;
      case EventKind::kSlotTick:
        on_slot_tick(nodes_[static_cast<std::size_t>(e.node_id)]);
        return true;
      case EventKind::kFrameStart:
        on_frame_start(e.frame_id);
        return true;
      case EventKind::kFrameEnd:
        on_frame_end(e.frame_id);
        return true;
      case EventKind::kTimeout:
        on_timeout(nodes_[static_cast<std::size_t>(e.node_id)], e.token);
        return true;
      case EventKind::kSimEnd:
        fold_sinr_intervals(queue_.now());
        return false;
    }
    throw SimulationError("unknown event kind");
  }

  // ---- state -------------------------------------------------------------

  SimulationConfig cfg_;
  SimOptions opts_;
  EventQueue queue_;
  std::vector<Node> nodes_;
  std::vector<std::vector<double>> gain_db_;
  std::vector<std::vector<double>> gain_lin_;
  std::map<std::uint64_t, FrameTransmission> pending_;
  std::map<std::uint64_t, ActiveFrame> active_;
  std::vector<double> total_rx_mw_;
  std::vector<WlanTally> tallies_;
  double noise_mw_ = 0.0;
  double ce_lin_ = 10.0;
  TimeNs sim_end_ns_ = 0;
  TimeNs last_eval_ = 0;
  TimeNs overlap_any_ns_ = 0;
  TimeNs overlap_data_ns_ = 0;
  TimeNs t_rts_ns_ = 0;
  TimeNs t_cts_ns_ = 0;
  TimeNs t_back_ns_ = 0;
  std::uint64_t next_frame_id_ = 1;
};

RunResult Simulation::run() {
  const auto wall0 = std::chrono::steady_clock::now();
  t_rts_ns_ = frame_duration_ns(FrameKind::kRts, 0, nullptr, cfg_.phy);
  t_cts_ns_ = frame_duration_ns(FrameKind::kCts, 0, nullptr, cfg_.phy);
  t_back_ns_ = frame_duration_ns(FrameKind::kBlockAck, 0, nullptr, cfg_.phy);

  queue_.schedule(sim_end_ns_, {EventKind::kSimEnd});
  for (Node& n : nodes_) {
    if (n.role != NodeRole::kAp) continue;
    for (int i = 0; i < cfg_.preload_packets; ++i) {
      ++n.generated;
      Packet p;
      p.id = n.generated;
      p.size_bits = cfg_.phy.data_packet_bits;
      p.arrival_ns = 0;
      p.dest_node =
          n.sta_node_ids[static_cast<std::size_t>(n.next_sta_rr) % n.sta_node_ids.size()];
      ++n.next_sta_rr;
      n.queue.enqueue(p);
    }
    if (!n.queue.empty()) start_contention(n, EventKind::kPacketArrival);
    const double gap_s =
        next_arrival_gap(n.rng, cfg_.traffic_load_bps, cfg_.phy.data_packet_bits);
    queue_.schedule(static_cast<TimeNs>(std::llround(gap_s * 1e9)),
                    {EventKind::kPacketArrival, n.id});
  }

  queue_.run_until(sim_end_ns_,
                   [this](TimeNs t, const Event& e) { return dispatch(t, e); });

  RunResult r;
  r.fingerprint.map_width_m = cfg_.deployment.map.width_m;
  r.fingerprint.map_height_m = cfg_.deployment.map.height_m;
  r.fingerprint.deployment_seed = cfg_.deployment.seed;
  r.fingerprint.obss_pd_dbm = cfg_.deployment.wlans.front().ap.sr.obss_pd_nonsrg_dbm;
  r.fingerprint.load_bps = cfg_.traffic_load_bps;
  r.final_clock_ns = queue_.now();
  r.events_dispatched = queue_.dispatched();
  r.overlap_any_us = static_cast<double>(overlap_any_ns_) / 1000.0;
  r.overlap_data_us = static_cast<double>(overlap_data_ns_) / 1000.0;

  const double sim_time_s = cfg_.sim_time_s;
  r.wlans.resize(tallies_.size());
  for (const Node& n : nodes_) {
    if (n.role != NodeRole::kAp) continue;
    WlanMetrics& m = r.wlans[static_cast<std::size_t>(n.wlan_id)];
    const WlanTally& tally = tallies_[static_cast<std::size_t>(n.wlan_id)];
    m.delivered_packets = tally.delivered_packets;
    m.throughput_bps =
        throughput(static_cast<double>(tally.delivered_bits), sim_time_s);
    m.airtime_us = static_cast<double>(tally.airtime_ns) / 1000.0;
    m.occupancy = occupancy(m.airtime_us, sim_time_s * 1e6);
    if (!tally.delays_s.empty()) {
      m.mean_delay_s = mean_delay(tally.delays_s);
      m.min_delay_s = *std::min_element(tally.delays_s.begin(), tally.delays_s.end());
    }
    m.generated_packets = n.generated;
    m.dropped_queue = n.queue.drop_count();
    m.dropped_no_link = n.dropped_no_link;
    m.dropped_packets = m.dropped_queue + m.dropped_no_link;
    m.in_flight_packets = n.txop.active ? n.txop.ampdu.size() : 0;
    m.residual_packets = n.queue.size() - m.in_flight_packets;
  }
  r.wallclock_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - wall0).count();
  return r;
}

}  // namespace

RunResult run_scenario(const SimulationConfig& cfg, const SimOptions& opts) {
  Simulation sim(cfg, opts);
  return sim.run();
}

}  // namespace srsim
