#include "trajkit/synth.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace trajkit {

namespace {

constexpr double kLaneWidth = 3.5;

// Uniform in [lo, hi) from the top 53 bits; keeps the byte stream
// independent of the standard library's distribution implementation.
double uniform(std::mt19937_64& rng, double lo, double hi) {
  const double u = static_cast<double>(rng() >> 11) / 9007199254740992.0;
  return lo + u * (hi - lo);
}

LaneGraph make_lane_graph(LaneLayout layout) {
  std::vector<Lane> lanes;
  switch (layout) {
    case LaneLayout::kStraightMultilane:
      for (int i = 0; i < 3; ++i) {
        lanes.push_back({i + 1,
                         kLaneWidth,
                         {{-300.0, i * kLaneWidth}, {500.0, i * kLaneWidth}}});
      }
      break;
    case LaneLayout::kMerge:
      lanes.push_back({1, kLaneWidth, {{-300.0, 0.0}, {500.0, 0.0}}});
      // Ramp descending into the main lane at x = 40.
      lanes.push_back({2,
                       kLaneWidth,
                       {{-120.0, 6.0}, {0.0, 6.0}, {40.0, 0.0}, {140.0, 0.0}}});
      break;
    case LaneLayout::kIntersectionCross:
      lanes.push_back({1, kLaneWidth, {{-300.0, 0.0}, {300.0, 0.0}}});
      lanes.push_back({2, kLaneWidth, {{0.0, -300.0}, {0.0, 300.0}}});
      break;
  }
  return LaneGraph(std::move(lanes));
}

struct AgentInit {
  AgentId id;
  Vec2 p0;
  Vec2 v0;
  Vec2 a0;
};

AgentState state_at(const AgentInit& init, double t) {
  AgentState s;
  s.agent_id = init.id;
  s.position = init.p0 + init.v0 * t + init.a0 * (0.5 * t * t);
  s.velocity = init.v0 + init.a0 * t;
  s.acceleration = init.a0;
  s.heading = s.velocity.norm_sq() > 0.0
                  ? std::atan2(s.velocity.y, s.velocity.x)
                  : 0.0;
  return s;
}

}  // namespace

LaneLayout lane_layout_from_string(const std::string& s) {
  if (s == "straight-multilane") return LaneLayout::kStraightMultilane;
  if (s == "merge") return LaneLayout::kMerge;
  if (s == "intersection-cross") return LaneLayout::kIntersectionCross;
  throw InvalidInputError("unknown lane layout: " + s);
}

MotionKind motion_kind_from_string(const std::string& s) {
  if (s == "cv") return MotionKind::kCv;
  if (s == "ca") return MotionKind::kCa;
  if (s == "lane-change") return MotionKind::kLaneChange;
  throw InvalidInputError("unknown motion kind: " + s);
}

SceneSet synthesize(const SynthSpec& spec) {
  if (spec.n_agents < 1) {
    throw InvalidInputError("synthesize: n_agents must be >= 1");
  }
  SceneSet set;
  set.cfg = spec.cfg;
  set.graph = make_lane_graph(spec.lane_layout);
  std::mt19937_64 rng(spec.seed);

  const double dt = spec.cfg.dt();
  const int window = spec.cfg.t_h + spec.cfg.t_f;

  for (int scene_idx = 0; scene_idx < spec.n_scenes; ++scene_idx) {
    std::vector<AgentInit> agents;

    // Target drives along the first lane.
    const double target_speed = uniform(rng, 6.0, 14.0);
    AgentInit target{0, {uniform(rng, -30.0, 10.0), 0.0},
                     {target_speed, 0.0}, {0.0, 0.0}};
    if (spec.lane_layout == LaneLayout::kMerge) {
      target.p0.x = uniform(rng, 10.0, 20.0);
    }
    agents.push_back(target);

    for (int i = 1; i < spec.n_agents; ++i) {
      AgentInit a;
      a.id = i;
      const double speed = uniform(rng, 4.0, 14.0);
      if (spec.lane_layout == LaneLayout::kMerge && i == 1) {
        // One agent descends the ramp ahead of the target, so its CA
        // rollout maps onto the main lane and it qualifies as ML.
        const double dir = std::atan2(0.0 - 6.0, 40.0 - 0.0);
        const double ramp_speed = uniform(rng, 9.0, 14.0);
        a.p0.x = target.p0.x + uniform(rng, 5.0, 10.0);
        a.p0.y = 6.0 * (40.0 - a.p0.x) / 40.0;  // on the descending segment
        a.v0 = {ramp_speed * std::cos(dir), ramp_speed * std::sin(dir)};
        a.a0 = {0.0, 0.0};
      } else {
        const int lane_row =
            spec.lane_layout == LaneLayout::kStraightMultilane
                ? static_cast<int>(uniform(rng, 0.0, 3.0))
                : 0;
        const double offset = uniform(rng, -spec.density_radius,
                                      spec.density_radius);
        a.p0 = {target.p0.x + offset,
                lane_row * kLaneWidth + uniform(rng, -0.5, 0.5)};
        a.v0 = {speed, 0.0};
        a.a0 = {0.0, 0.0};
      }
      if (spec.motion == MotionKind::kCa) {
        a.a0 = {uniform(rng, -1.5, 1.5), 0.0};
      }
      if (spec.motion == MotionKind::kLaneChange && i == 1 &&
          spec.lane_layout == LaneLayout::kStraightMultilane) {
        a.p0.y = 0.0;
        a.v0 = {speed, 1.2};  // lateral drift into the adjacent lane
      }
      agents.push_back(a);
    }
    if (spec.motion == MotionKind::kCa) {
      agents[0].a0 = {uniform(rng, -1.5, 1.5), 0.0};
    }

    Sample sample;
    sample.scene.dt = dt;
    for (int k = 0; k < spec.cfg.t_h; ++k) {
      Frame f;
      f.timestep = k - spec.cfg.t_h + 1;
      for (const AgentInit& a : agents) {
        f.states.push_back(state_at(a, k * dt));
      }
      sample.scene.frames.push_back(std::move(f));
    }
    const double t_last = (spec.cfg.t_h - 1) * dt;
    for (int k = 1; k <= spec.cfg.t_f; ++k) {
      sample.future.push_back(state_at(agents[0], t_last + k * dt).position);
    }
    (void)window;
    set.samples.push_back(std::move(sample));
  }

  set.rebind_graph();
  for (Sample& s : set.samples) {
    assign_lanes(s.scene, spec.cfg.t_f);
  }
  return set;
}

std::string scene_set_to_csv(const SceneSet& set) {
  TrackTable table;
  const int window = set.cfg.t_h + set.cfg.t_f;
  // Scenes are separated by a frame gap so windowing never spans scenes.
  const int64_t stride =
      int64_t(window + 2) * set.cfg.downsample_factor;
  for (size_t si = 0; si < set.samples.size(); ++si) {
    const Sample& sample = set.samples[si];
    const int64_t base = static_cast<int64_t>(si) * stride;
    for (size_t k = 0; k < sample.scene.frames.size(); ++k) {
      for (const AgentState& s : sample.scene.frames[k].states) {
        table.rows.push_back({base + int64_t(k) * set.cfg.downsample_factor,
                              s.agent_id, s.position, s.heading, s.velocity,
                              s.acceleration, std::nullopt});
      }
    }
    // Future target rows, extrapolated states for round-trip fidelity.
    const Frame& last = sample.scene.frames.back();
    const AgentState& target = last.target();
    for (size_t k = 0; k < sample.future.size(); ++k) {
      AgentState s = target;
      const double t = (double(k) + 1.0) * sample.scene.dt;
      s.position = sample.future[k];
      s.velocity = target.velocity + target.acceleration * t;
      s.heading = s.velocity.norm_sq() > 0.0
                      ? std::atan2(s.velocity.y, s.velocity.x)
                      : target.heading;
      table.rows.push_back(
          {base + int64_t(set.cfg.t_h + int(k)) * set.cfg.downsample_factor,
           s.agent_id, s.position, s.heading, s.velocity, s.acceleration,
           std::nullopt});
      // Non-target agents keep moving so the window is fully populated.
      for (const AgentState& o : last.states) {
        if (o.agent_id == target.agent_id) continue;
        AgentState os = o;
        os.position = ca_propagate(o.ca(), t);
        os.velocity = o.velocity + o.acceleration * t;
        os.heading = os.velocity.norm_sq() > 0.0
                         ? std::atan2(os.velocity.y, os.velocity.x)
                         : o.heading;
        table.rows.push_back(
            {base + int64_t(set.cfg.t_h + int(k)) * set.cfg.downsample_factor,
             os.agent_id, os.position, os.heading, os.velocity,
             os.acceleration, std::nullopt});
      }
    }
  }
  return tracks_to_csv(table);
}

}  // namespace trajkit
