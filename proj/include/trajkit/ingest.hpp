#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "trajkit/scene.hpp"

namespace trajkit {

struct DatasetConfig {
  double dt_raw = 0.1;        // s
  int downsample_factor = 1;  // >= 1
  int t_h = 10;               // observation steps
  int t_f = 30;               // prediction steps
  double threshold_D = 30.0;  // m
  double max_speed = 100.0;   // m/s, sanity limit
  double max_accel = 50.0;    // m/s^2, sanity limit

  double dt() const { return dt_raw * downsample_factor; }
};

/// One parsed trajectory row. Heading is optional in the CSV; when absent
/// it is derived from velocity (zero-velocity rows inherit the previous
/// heading of the same track).
struct TrackRow {
  int64_t frame = 0;
  AgentId id = 0;
  Vec2 position;
  double heading = 0.0;
  Vec2 velocity;
  Vec2 acceleration;
  std::optional<LaneId> lane_id;
};

struct TrackTable {
  std::vector<TrackRow> rows;  // ordered by (frame, id)
  /// Row-numbered diagnostics for rows rejected by the sanity limits.
  std::vector<std::string> rejected;
};

/// Parse the trajectory CSV (columns frame,id,x,y,heading,vx,vy,ax,ay with
/// heading and lane_id optional; header row required). Throws
/// InvalidInputError for missing columns, non-numeric cells, or duplicate
/// (frame, id) pairs. Rows exceeding the sanity limits are rejected with a
/// diagnostic, not fatal.
TrackTable load_trajectories(const std::string& path,
                             const DatasetConfig& cfg);
TrackTable parse_trajectories(const std::string& text,
                              const DatasetConfig& cfg);

/// Serialize states back to the trajectory CSV schema (full precision).
std::string tracks_to_csv(const TrackTable& table);

/// Sliding windows where the target exists in every one of the T_h + T_f
/// downsampled steps. Downsampling takes every k-th frame; no interpolation.
/// Lane assignments are not computed here (see assign_lanes).
std::vector<Sample> window_scenes(const TrackTable& tracks,
                                  const DatasetConfig& cfg,
                                  AgentId target_id,
                                  const LaneGraph& graph);

/// Fill in every agent's per-step lane assignment via predict_lanes with a
/// CA rollout of rollout_horizon steps.
void assign_lanes(SceneHistory& scene, int rollout_horizon);

/// A loaded or synthesized dataset: lane graph plus windowed samples.
struct SceneSet {
  LaneGraph graph;
  std::vector<Sample> samples;
  DatasetConfig cfg;

  /// Re-point every scene at this set's lane graph (needed after copy/move).
  void rebind_graph();
};

}  // namespace trajkit
