#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "trajkit/geometry.hpp"

namespace trajkit {

using LaneId = int64_t;

struct Lane {
  LaneId lane_id = 0;
  double width = 0.0;                // m, > 0
  std::vector<Vec2> centerline;      // >= 2 points, consecutive points distinct
};

struct LaneAssignment {
  std::optional<LaneId> current_lane;
  std::optional<LaneId> future_lane;

  bool operator==(const LaneAssignment&) const = default;
};

class LaneGraph {
 public:
  LaneGraph() = default;
  explicit LaneGraph(std::vector<Lane> lanes);

  const std::map<LaneId, Lane>& lanes() const { return lanes_; }
  bool empty() const { return lanes_.empty(); }

  /// Lane whose centerline is nearest to p, provided the distance is within
  /// width/2 + slack. Equidistant lanes break ties toward the smaller id.
  std::optional<LaneId> map_point_to_lane(Vec2 p, double slack = 0.5) const;

  static LaneGraph from_json_file(const std::string& path);
  static LaneGraph from_json(const std::string& text);
  std::string to_json() const;

 private:
  std::map<LaneId, Lane> lanes_;
};

/// Distance from p to the polyline (segments, not vertices only).
double point_to_polyline_distance(Vec2 p, const std::vector<Vec2>& polyline);

/// Current lane of the first trajectory point plus the first subsequently
/// visited distinct lane (skipping off-road gaps). If the trajectory never
/// leaves its current lane, future_lane = current_lane.
LaneAssignment extract_future_lane(const LaneGraph& graph,
                                   const std::vector<Vec2>& trajectory);

struct AgentState;  // scene.hpp

/// Per-history-step lane assignments from a constant-acceleration rollout:
/// at each step t, roll the CA model forward rollout_horizon steps and map
/// the rollout through extract_future_lane.
std::vector<LaneAssignment> predict_lanes(const LaneGraph& graph,
                                          const std::vector<AgentState>& history,
                                          int rollout_horizon, double dt);

}  // namespace trajkit
