#include "mmw/channel/channel_model.hpp"

#include <algorithm>

namespace mmw {

namespace {

bool in_forced_outage(const std::vector<OutageInterval>& forced, SimTime t) {
  return std::any_of(forced.begin(), forced.end(), [t](const OutageInterval& o) { return o.contains(t); });
}

FadingDrawOptions draw_options(const PhyConfig& phy) {
  FadingDrawOptions opts;
  opts.sinusoids_per_cluster = phy.sinusoids_per_cluster;
  opts.rician_k_db = phy.rician_k_db;
  opts.cluster_angular_spread_rad = phy.cluster_angular_spread_rad;
  return opts;
}

}  // namespace

double link_sinr_db(const PhyConfig& phy, double distance_m, LinkState state, double shadowing_db, double fading_db) {
  return phy.tx_power_dbm + phy.beamforming_gain_db() - path_loss_db(distance_m, state, phy.path_loss) - shadowing_db +
         fading_db - phy.noise_power_dbm();
}

GeometricChannel::GeometricChannel(GeometricSetup setup, PhyConfig phy, RngService& rng,
                                   std::vector<OutageInterval> forced_outages, bool fading_enabled)
    : setup_(std::move(setup)), phy_(phy), forced_(std::move(forced_outages)), fading_enabled_(fading_enabled) {
  setup_.route.validate();
  phy_.validate();
  realization_ = draw_realization(rng.register_stream("large_scale"), rng.register_stream("fading"), draw_options(phy_));

  // Walk the route to find LOS<->NLOS transitions, then refine each by bisection.
  auto& shadow_rng = rng.register_stream("shadowing");
  const auto& route = setup_.route;
  const SimTime end = route.duration();
  const SimTime step = std::min(milliseconds(10), seconds(0.01 / route.speed_mps));
  auto state_at = [&](SimTime t) { return los_state(setup_.bs_position, advance_route(route, t), setup_.obstacles); };
  auto draw_shadow = [&](LinkState s) {
    return shadow_rng.normal(0.0, s == LinkState::LOS ? phy_.shadow_sigma_los_db : phy_.shadow_sigma_nlos_db);
  };

  LinkState current = state_at(SimTime{});
  segments_.push_back({SimTime{}, current, draw_shadow(current)});
  SimTime prev{};
  for (SimTime t = step; prev < end; t += step) {
    if (t > end) t = end;
    const LinkState s = state_at(t);
    if (s != current) {
      SimTime lo = prev, hi = t;
      while (hi.ns - lo.ns > 1) {
        const SimTime mid{lo.ns + (hi.ns - lo.ns) / 2};
        if (state_at(mid) == current) lo = mid; else hi = mid;
      }
      current = s;
      segments_.push_back({hi, current, draw_shadow(current)});
    }
    prev = t;
  }
}

const GeometricChannel::Segment& GeometricChannel::segment_at(SimTime t) const {
  auto it = std::upper_bound(segments_.begin(), segments_.end(), t,
                             [](SimTime v, const Segment& s) { return v < s.start; });
  return *std::prev(it);
}

LinkState GeometricChannel::geometric_state(SimTime t) const { return segment_at(t).state; }

ChannelSample GeometricChannel::sample(SimTime t) const {
  const Segment& seg = segment_at(t);
  ChannelSample out;
  out.t = t;
  out.ue_position = advance_route(setup_.route, t);
  const double distance = (out.ue_position - setup_.bs_position).norm();
  double fading_db = 0.0;
  if (fading_enabled_) {
    const SimTime stop = setup_.route.duration();
    fading_db = fading_gain_db(std::min(t, stop), seg.state, realization_, phy_.max_doppler_hz(setup_.route.speed_mps));
  }
  out.sinr_db = link_sinr_db(phy_, distance, seg.state, seg.shadowing_db, fading_db);
  out.state = seg.state;
  out.base_state = seg.state;
  if (out.sinr_db < phy_.outage_threshold_db || in_forced_outage(forced_, t)) out.state = LinkState::OUTAGE;
  return out;
}

TraceChannel::TraceChannel(std::vector<TraceSample> samples, PhyConfig phy, RngService& rng, double speed_mps,
                           std::vector<OutageInterval> forced_outages, bool fading_enabled)
    : replay_(std::move(samples), speed_mps),
      phy_(phy),
      speed_mps_(speed_mps),
      forced_(std::move(forced_outages)),
      fading_enabled_(fading_enabled && speed_mps > 0.0) {
  phy_.validate();
  realization_ = draw_realization(rng.register_stream("large_scale"), rng.register_stream("fading"), draw_options(phy_));
}

ChannelSample TraceChannel::sample(SimTime t) const {
  const auto p = replay_.at(t);
  ChannelSample out;
  out.t = t;
  out.ue_position = Vec3(p.pos_m, 0.0, 0.0);
  out.state = p.state;
  out.base_state = p.state;
  out.sinr_db = p.sinr_db;
  if (fading_enabled_ && p.state != LinkState::OUTAGE) {
    // Once the UE has stopped at the end of the route the channel freezes.
    out.sinr_db += fading_gain_db(std::min(t, replay_.duration()), p.state, realization_, phy_.max_doppler_hz(speed_mps_));
  }
  if (p.state == LinkState::OUTAGE || out.sinr_db < phy_.outage_threshold_db || in_forced_outage(forced_, t)) {
    out.state = LinkState::OUTAGE;
  }
  return out;
}

}  // namespace mmw
