#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "mmw/channel/fading.hpp"
#include "mmw/channel/geometry.hpp"
#include "mmw/channel/pathloss.hpp"
#include "mmw/channel/trace.hpp"
#include "mmw/sim/rng.hpp"

namespace mmw {

struct ChannelSample {
  SimTime t;
  Vec3 ue_position = Vec3::Zero();
  LinkState state = LinkState::LOS;
  /// LOS/NLOS before the outage override (the trace state for replays).
  LinkState base_state = LinkState::LOS;
  double sinr_db = 0.0;
};

/// Half-open interval [start, end) during which the link is forced into outage.
struct OutageInterval {
  SimTime start;
  SimTime end;
  bool contains(SimTime t) const { return start <= t && t < end; }
};

/// Link budget: P_tx + G_bf - PL - shadowing + fading - P_noise (no interference).
double link_sinr_db(const PhyConfig& phy, double distance_m, LinkState state, double shadowing_db, double fading_db);

/// Source of per-slot channel samples. Sampling is side-effect free.
class ChannelModel {
 public:
  virtual ~ChannelModel() = default;
  virtual ChannelSample sample(SimTime t) const = 0;
};

struct GeometricSetup {
  Vec3 bs_position = Vec3(0.0, 0.0, 10.0);
  std::vector<Obstacle> obstacles;
  RouteSpec route;
};

/// Semi-statistical model: geometric LOS test along a route, path loss,
/// per-segment log-normal shadowing, and sum-of-sinusoids fading.
class GeometricChannel final : public ChannelModel {
 public:
  GeometricChannel(GeometricSetup setup, PhyConfig phy, RngService& rng, std::vector<OutageInterval> forced_outages = {},
                   bool fading_enabled = true);

  ChannelSample sample(SimTime t) const override;

  /// Geometric LOS/NLOS state at t (ignores outage).
  LinkState geometric_state(SimTime t) const;

  struct Segment {
    SimTime start;
    LinkState state;
    double shadowing_db;
  };
  const std::vector<Segment>& segments() const { return segments_; }
  const LargeScaleRealization& realization() const { return realization_; }

 private:
  const Segment& segment_at(SimTime t) const;

  GeometricSetup setup_;
  PhyConfig phy_;
  std::vector<OutageInterval> forced_;
  bool fading_enabled_;
  LargeScaleRealization realization_;
  std::vector<Segment> segments_;
};

/// Replays an ingested SINR/state trace, optionally with small-scale fading on top.
class TraceChannel final : public ChannelModel {
 public:
  /// `speed_mps` > 0 replays on a position axis at that speed and sets the
  /// Doppler of the added fading; 0 replays trace time without fading.
  TraceChannel(std::vector<TraceSample> samples, PhyConfig phy, RngService& rng, double speed_mps,
               std::vector<OutageInterval> forced_outages = {}, bool fading_enabled = true);

  ChannelSample sample(SimTime t) const override;
  const TraceReplay& replay() const { return replay_; }

 private:
  TraceReplay replay_;
  PhyConfig phy_;
  double speed_mps_;
  std::vector<OutageInterval> forced_;
  bool fading_enabled_;
  LargeScaleRealization realization_;
};

}  // namespace mmw
