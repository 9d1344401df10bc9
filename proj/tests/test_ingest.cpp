#include <doctest.h>

#include <cmath>
#include <sstream>

#include "test_util.hpp"
#include "trajkit/ingest.hpp"

using namespace trajkit;

namespace {

const char* kHeader = "frame,id,x,y,heading,vx,vy,ax,ay\n";

LaneGraph two_lane_graph() {
  Lane a{1, 3.5, {{-100, 0}, {100, 0}}};
  Lane b{2, 3.5, {{-100, 3.5}, {100, 3.5}}};
  return LaneGraph({a, b});
}

std::string track_csv(int frames, AgentId id, double x0, double v,
                      double y = 0.0, int64_t frame0 = 0, int stride = 1) {
  std::ostringstream os;
  for (int k = 0; k < frames; ++k) {
    os << (frame0 + int64_t(k) * stride) << "," << id << ","
       << (x0 + v * 0.1 * k * stride) << "," << y << ",0," << v << ",0,0,0\n";
  }
  return os.str();
}

}  // namespace

TEST_CASE("parse_trajectories reads and sorts rows") {
  const std::string text = std::string(kHeader) +
                           "1,7,10,0,0.5,5,0,0.1,0\n"
                           "0,7,9.5,0,0.5,5,0,0.1,0\n"
                           "0,3,0,3.5,0,4,0,0,0\n";
  const auto t = parse_trajectories(text, {});
  REQUIRE(t.rows.size() == 3);
  CHECK(t.rejected.empty());
  CHECK(t.rows[0].frame == 0);
  CHECK(t.rows[0].id == 3);
  CHECK(t.rows[1].id == 7);
  CHECK(t.rows[2].frame == 1);
  CHECK(t.rows[2].position.x == 10.0);
  CHECK(t.rows[2].heading == 0.5);
  CHECK(t.rows[2].acceleration.x == 0.1);
}

TEST_CASE("heading column is optional and derived from velocity") {
  const std::string text =
      "frame,id,x,y,vx,vy,ax,ay\n"
      "0,1,0,0,1,1,0,0\n"
      "1,1,0,0,0,0,0,0\n"   // zero velocity inherits previous heading
      "0,2,0,0,0,0,0,0\n";  // no previous heading -> 0
  const auto t = parse_trajectories(text, {});
  REQUIRE(t.rows.size() == 3);
  CHECK(t.rows[0].heading == doctest::Approx(std::atan2(1.0, 1.0)));
  CHECK(t.rows[1].heading == 0.0);
  CHECK(t.rows[2].heading == doctest::Approx(std::atan2(1.0, 1.0)));
}

TEST_CASE("lane_id column is optional, empty cells allowed") {
  const std::string text =
      "frame,id,x,y,heading,vx,vy,ax,ay,lane_id\n"
      "0,1,0,0,0,1,0,0,0,5\n"
      "1,1,0,0,0,1,0,0,0,\n";
  const auto t = parse_trajectories(text, {});
  REQUIRE(t.rows.size() == 2);
  CHECK(t.rows[0].lane_id == LaneId{5});
  CHECK(!t.rows[1].lane_id.has_value());
}

TEST_CASE("parser errors") {
  CHECK_THROWS_AS(parse_trajectories("", {}), InvalidInputError);
  CHECK_THROWS_AS(parse_trajectories("frame,id,x,y,vx,vy,ax\n", {}),
                  InvalidInputError);
  CHECK_THROWS_AS(
      parse_trajectories(std::string(kHeader) + "0,1,oops,0,0,0,0,0,0\n", {}),
      InvalidInputError);
  CHECK_THROWS_AS(
      parse_trajectories(std::string(kHeader) + "0,1,0,0\n", {}),
      InvalidInputError);
  // duplicate (frame, id)
  CHECK_THROWS_AS(parse_trajectories(std::string(kHeader) +
                                         "0,1,0,0,0,0,0,0,0\n"
                                         "0,1,1,0,0,0,0,0,0\n",
                                     {}),
                  InvalidInputError);
  CHECK_THROWS_AS(load_trajectories("/nonexistent/path.csv", {}),
                  InvalidInputError);
}

TEST_CASE("sanity limits reject rows with diagnostics") {
  DatasetConfig cfg;
  cfg.max_speed = 10.0;
  cfg.max_accel = 5.0;
  const std::string text = std::string(kHeader) +
                           "0,1,0,0,0,9,0,0,0\n"
                           "1,1,0,0,0,11,0,0,0\n"
                           "2,1,0,0,0,9,0,0,6\n"
                           "3,1,0,0,0,inf,0,0,0\n";
  const auto t = parse_trajectories(text, cfg);
  REQUIRE(t.rows.size() == 1);
  REQUIRE(t.rejected.size() == 3);
  CHECK(t.rejected[0].find("row 3") != std::string::npos);
  CHECK(t.rejected[0].find("speed") != std::string::npos);
  CHECK(t.rejected[1].find("acceleration") != std::string::npos);
  CHECK(t.rejected[2].find("non-finite") != std::string::npos);
}

TEST_CASE("CSV round trip preserves doubles bit-exactly") {
  TrackTable t;
  TrackRow r;
  r.frame = 3;
  r.id = 42;
  r.position = {0.1 + 0.2, -1.0 / 3.0};
  r.heading = std::acos(-1.0) / 7.0;
  r.velocity = {1e-17, 12.3456789012345678};
  r.acceleration = {-0.0, 2.5};
  t.rows.push_back(r);

  const auto back = parse_trajectories(tracks_to_csv(t), {});
  REQUIRE(back.rows.size() == 1);
  const auto& b = back.rows[0];
  CHECK(b.position.x == r.position.x);
  CHECK(b.position.y == r.position.y);
  CHECK(b.heading == r.heading);
  CHECK(b.velocity.x == r.velocity.x);
  CHECK(b.velocity.y == r.velocity.y);
  CHECK(b.acceleration.y == r.acceleration.y);
}

TEST_CASE("window_scenes produces sliding windows with the target first") {
  DatasetConfig cfg;
  cfg.t_h = 2;
  cfg.t_f = 2;
  cfg.dt_raw = 0.1;
  const auto graph = two_lane_graph();
  // Target id 1 over 5 frames, a neighbor id 9 present only at frames 0-1.
  const std::string text = std::string(kHeader) + track_csv(5, 1, 0.0, 5.0) +
                           track_csv(2, 9, 20.0, 5.0, 3.5);
  const auto tracks = parse_trajectories(text, cfg);
  const auto samples = window_scenes(tracks, cfg, 1, graph);
  REQUIRE(samples.size() == 2);  // windows starting at frames 0 and 1

  const auto& s0 = samples[0];
  CHECK(s0.scene.t_h() == 2);
  CHECK(s0.scene.frames[0].timestep == -1);
  CHECK(s0.scene.frames[1].timestep == 0);
  CHECK(s0.scene.dt == doctest::Approx(0.1));
  CHECK(s0.scene.frames[0].target().agent_id == 1);
  CHECK(s0.scene.frames[0].states.size() == 2);
  CHECK(s0.scene.frames[0].states[1].agent_id == 9);
  REQUIRE(s0.future.size() == 2);
  CHECK(s0.future[0].x == doctest::Approx(1.0));  // frame 2: 5 m/s * 0.2 s
  CHECK(s0.future[1].x == doctest::Approx(1.5));

  // The second window has no neighbor rows after frame 1.
  CHECK(samples[1].scene.frames[1].states.size() == 1);
}

TEST_CASE("windows never span frame gaps") {
  DatasetConfig cfg;
  cfg.t_h = 2;
  cfg.t_f = 1;
  const auto graph = two_lane_graph();
  // Frames 0,1,2 then a gap, then 10,11,12.
  const std::string text = std::string(kHeader) + track_csv(3, 1, 0.0, 5.0) +
                           track_csv(3, 1, 50.0, 5.0, 0.0, 10);
  const auto tracks = parse_trajectories(text, cfg);
  const auto samples = window_scenes(tracks, cfg, 1, graph);
  CHECK(samples.size() == 2);  // one per contiguous run of 3 frames
}

TEST_CASE("downsampling keeps every k-th frame only") {
  DatasetConfig cfg;
  cfg.t_h = 2;
  cfg.t_f = 1;
  cfg.downsample_factor = 2;
  cfg.dt_raw = 0.1;
  const auto graph = two_lane_graph();
  const std::string text = std::string(kHeader) + track_csv(7, 1, 0.0, 5.0);
  const auto tracks = parse_trajectories(text, cfg);
  const auto samples = window_scenes(tracks, cfg, 1, graph);
  REQUIRE(samples.size() == 2);  // downsampled frames 0,2,4,6 -> two windows
  CHECK(samples[0].scene.dt == doctest::Approx(0.2));
  // Consecutive downsampled steps are 0.2 s apart: x moves 1 m at 5 m/s.
  CHECK(samples[0].scene.frames[1].target().position.x -
            samples[0].scene.frames[0].target().position.x ==
        doctest::Approx(1.0));

  CHECK_THROWS_AS(window_scenes(tracks, [&] {
    auto bad = cfg;
    bad.downsample_factor = 0;
    return bad;
  }(), 1, graph), InvalidInputError);
}

TEST_CASE("windows require the target at every step") {
  DatasetConfig cfg;
  cfg.t_h = 2;
  cfg.t_f = 1;
  const auto graph = two_lane_graph();
  // Target absent at frame 2 of 5; other agents keep the frame populated.
  std::string text = std::string(kHeader) + track_csv(5, 9, 0.0, 5.0, 3.5);
  text += track_csv(2, 1, 0.0, 5.0);
  text += track_csv(2, 1, 1.5, 5.0, 0.0, 3);
  const auto tracks = parse_trajectories(text, cfg);
  CHECK(window_scenes(tracks, cfg, 1, graph).empty());
  CHECK(window_scenes(tracks, cfg, 9, graph).size() == 3);
}

TEST_CASE("assign_lanes fills per-step lane assignments") {
  DatasetConfig cfg;
  cfg.t_h = 3;
  cfg.t_f = 1;
  const auto graph = two_lane_graph();
  // Driving along lane 1 while drifting up toward lane 2.
  const std::string text =
      std::string(kHeader) +
      "0,1,0,0,0,10,1.2,0,0\n"
      "1,1,1,0.12,0,10,1.2,0,0\n"
      "2,1,2,0.24,0,10,1.2,0,0\n"
      "3,1,3,0.36,0,10,1.2,0,0\n";
  const auto tracks = parse_trajectories(text, cfg);
  auto samples = window_scenes(tracks, cfg, 1, graph);
  REQUIRE(samples.size() == 1);
  assign_lanes(samples[0].scene, 30);
  for (const Frame& f : samples[0].scene.frames) {
    CHECK(f.target().lanes.current_lane == LaneId{1});
    CHECK(f.target().lanes.future_lane == LaneId{2});
  }

  SceneHistory detached = samples[0].scene;
  detached.lane_graph = nullptr;
  CHECK_THROWS_AS(assign_lanes(detached, 30), InvalidInputError);
}
