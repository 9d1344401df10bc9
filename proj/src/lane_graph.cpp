#include "trajkit/lane_graph.hpp"

#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "trajkit/scene.hpp"

namespace trajkit {

LaneGraph::LaneGraph(std::vector<Lane> lanes) {
  for (auto& lane : lanes) {
    if (lane.width <= 0.0) {
      throw InvalidInputError("lane " + std::to_string(lane.lane_id) +
                              ": width must be positive");
    }
    if (lane.centerline.size() < 2) {
      throw InvalidInputError("lane " + std::to_string(lane.lane_id) +
                              ": centerline needs at least 2 points");
    }
    for (size_t i = 1; i < lane.centerline.size(); ++i) {
      if ((lane.centerline[i] - lane.centerline[i - 1]).norm_sq() == 0.0) {
        throw InvalidInputError("lane " + std::to_string(lane.lane_id) +
                                ": repeated centerline point");
      }
    }
    const LaneId id = lane.lane_id;
    if (!lanes_.emplace(id, std::move(lane)).second) {
      throw InvalidInputError("duplicate lane_id " + std::to_string(id));
    }
  }
}

double point_to_polyline_distance(Vec2 p, const std::vector<Vec2>& polyline) {
  double best = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i + 1 < polyline.size(); ++i) {
    const Vec2 a = polyline[i], b = polyline[i + 1];
    const Vec2 ab = b - a;
    const double len_sq = ab.norm_sq();
    double t = len_sq > 0.0 ? (p - a).dot(ab) / len_sq : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    const Vec2 proj = a + ab * t;
    best = std::min(best, (p - proj).norm());
  }
  return best;
}

std::optional<LaneId> LaneGraph::map_point_to_lane(Vec2 p, double slack) const {
  std::optional<LaneId> best_id;
  double best_dist = std::numeric_limits<double>::infinity();
  // lanes_ iterates in ascending id order, so strict < breaks ties toward
  // the smaller lane_id.
  for (const auto& [id, lane] : lanes_) {
    const double d = point_to_polyline_distance(p, lane.centerline);
    if (d > lane.width / 2.0 + slack) continue;
    if (d < best_dist) {
      best_dist = d;
      best_id = id;
    }
  }
  return best_id;
}

LaneAssignment extract_future_lane(const LaneGraph& graph,
                                   const std::vector<Vec2>& trajectory) {
  if (trajectory.empty()) {
    throw InvalidInputError("extract_future_lane: empty trajectory");
  }
  LaneAssignment out;
  out.current_lane = graph.map_point_to_lane(trajectory.front());
  for (size_t i = 1; i < trajectory.size(); ++i) {
    const auto lane = graph.map_point_to_lane(trajectory[i]);
    if (!lane) continue;  // off-road gap
    if (lane != out.current_lane) {
      out.future_lane = lane;
      return out;
    }
  }
  out.future_lane = out.current_lane;
  return out;
}

std::vector<LaneAssignment> predict_lanes(const LaneGraph& graph,
                                          const std::vector<AgentState>& history,
                                          int rollout_horizon, double dt) {
  if (history.empty()) {
    throw InvalidInputError("predict_lanes: empty history");
  }
  if (!(dt > 0.0)) {
    throw InvalidInputError("predict_lanes: dt must be positive");
  }
  std::vector<LaneAssignment> out;
  out.reserve(history.size());
  std::vector<Vec2> rollout(static_cast<size_t>(rollout_horizon) + 1);
  for (const AgentState& state : history) {
    const CaState ca = state.ca();
    rollout[0] = ca.position;
    for (int k = 1; k <= rollout_horizon; ++k) {
      rollout[static_cast<size_t>(k)] = ca_propagate(ca, k * dt);
    }
    out.push_back(extract_future_lane(graph, rollout));
  }
  return out;
}

LaneGraph LaneGraph::from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInputError(std::string("lane graph JSON: ") + e.what());
  }
  if (!doc.is_array()) {
    throw InvalidInputError("lane graph JSON: top level must be an array");
  }
  std::vector<Lane> lanes;
  for (const auto& item : doc) {
    Lane lane;
    try {
      lane.lane_id = item.at("lane_id").get<LaneId>();
      lane.width = item.at("width").get<double>();
      for (const auto& pt : item.at("centerline")) {
        lane.centerline.push_back({pt.at(0).get<double>(),
                                   pt.at(1).get<double>()});
      }
    } catch (const nlohmann::json::exception& e) {
      throw InvalidInputError(std::string("lane graph JSON: ") + e.what());
    }
    lanes.push_back(std::move(lane));
  }
  return LaneGraph(std::move(lanes));
}

LaneGraph LaneGraph::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInputError("cannot open lane graph file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return from_json(buf.str());
}

std::string LaneGraph::to_json() const {
  nlohmann::json doc = nlohmann::json::array();
  for (const auto& [id, lane] : lanes_) {
    nlohmann::json centerline = nlohmann::json::array();
    for (Vec2 p : lane.centerline) centerline.push_back({p.x, p.y});
    doc.push_back({{"lane_id", id},
                   {"width", lane.width},
                   {"centerline", std::move(centerline)}});
  }
  return doc.dump(2);
}

}  // namespace trajkit
