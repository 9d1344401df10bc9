#include "trajkit/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace trajkit {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

double parse_double(const std::string& cell, int row, const std::string& col) {
  double v = 0.0;
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end) {
    throw InvalidInputError("row " + std::to_string(row) +
                            ": non-numeric value '" + cell + "' in column " +
                            col);
  }
  return v;
}

int64_t parse_int(const std::string& cell, int row, const std::string& col) {
  int64_t v = 0;
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end) {
    throw InvalidInputError("row " + std::to_string(row) +
                            ": non-integer value '" + cell + "' in column " +
                            col);
  }
  return v;
}

std::string format_g17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

TrackTable parse_trajectories(const std::string& text,
                              const DatasetConfig& cfg) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) {
    throw InvalidInputError("trajectory CSV: empty file");
  }
  const std::vector<std::string> header = split_csv_line(line);
  std::map<std::string, size_t> col;
  for (size_t i = 0; i < header.size(); ++i) col[header[i]] = i;

  for (const char* required : {"frame", "id", "x", "y", "vx", "vy", "ax", "ay"}) {
    if (!col.count(required)) {
      throw InvalidInputError(std::string("trajectory CSV: missing column '") +
                              required + "'");
    }
  }
  const bool has_heading = col.count("heading") > 0;
  const bool has_lane = col.count("lane_id") > 0;

  TrackTable table;
  std::set<std::pair<int64_t, AgentId>> seen;
  std::map<AgentId, double> last_heading;
  int row_num = 1;
  while (std::getline(in, line)) {
    ++row_num;
    if (line.empty() || line == "\r") continue;
    const auto cells = split_csv_line(line);
    if (cells.size() < header.size()) {
      throw InvalidInputError("row " + std::to_string(row_num) +
                              ": expected " + std::to_string(header.size()) +
                              " cells, got " + std::to_string(cells.size()));
    }
    auto cell = [&](const char* name) -> const std::string& {
      return cells[col.at(name)];
    };
    TrackRow r;
    r.frame = parse_int(cell("frame"), row_num, "frame");
    r.id = parse_int(cell("id"), row_num, "id");
    r.position = {parse_double(cell("x"), row_num, "x"),
                  parse_double(cell("y"), row_num, "y")};
    r.velocity = {parse_double(cell("vx"), row_num, "vx"),
                  parse_double(cell("vy"), row_num, "vy")};
    r.acceleration = {parse_double(cell("ax"), row_num, "ax"),
                      parse_double(cell("ay"), row_num, "ay")};
    if (has_heading) {
      r.heading = wrap_angle(parse_double(cell("heading"), row_num, "heading"));
    } else if (r.velocity.norm_sq() > 0.0) {
      r.heading = std::atan2(r.velocity.y, r.velocity.x);
    } else if (auto it = last_heading.find(r.id); it != last_heading.end()) {
      r.heading = it->second;  // zero-velocity row inherits previous heading
    }
    last_heading[r.id] = r.heading;
    if (has_lane && !cell("lane_id").empty()) {
      r.lane_id = parse_int(cell("lane_id"), row_num, "lane_id");
    }

    if (!seen.emplace(r.frame, r.id).second) {
      throw InvalidInputError("row " + std::to_string(row_num) +
                              ": duplicate (frame, id) = (" +
                              std::to_string(r.frame) + ", " +
                              std::to_string(r.id) + ")");
    }
    if (!r.position.finite() || !r.velocity.finite() ||
        !r.acceleration.finite()) {
      table.rejected.push_back("row " + std::to_string(row_num) +
                               ": non-finite state");
      continue;
    }
    if (r.velocity.norm() > cfg.max_speed) {
      table.rejected.push_back("row " + std::to_string(row_num) + ": speed " +
                               format_g17(r.velocity.norm()) +
                               " m/s exceeds sanity limit");
      continue;
    }
    if (r.acceleration.norm() > cfg.max_accel) {
      table.rejected.push_back("row " + std::to_string(row_num) +
                               ": acceleration " +
                               format_g17(r.acceleration.norm()) +
                               " m/s^2 exceeds sanity limit");
      continue;
    }
    table.rows.push_back(std::move(r));
  }
  std::stable_sort(table.rows.begin(), table.rows.end(),
                   [](const TrackRow& a, const TrackRow& b) {
                     return std::tie(a.frame, a.id) < std::tie(b.frame, b.id);
                   });
  return table;
}

TrackTable load_trajectories(const std::string& path,
                             const DatasetConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw InvalidInputError("cannot open trajectory file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_trajectories(buf.str(), cfg);
}

std::string tracks_to_csv(const TrackTable& table) {
  std::ostringstream os;
  os << "frame,id,x,y,heading,vx,vy,ax,ay\n";
  for (const TrackRow& r : table.rows) {
    os << r.frame << "," << r.id << "," << format_g17(r.position.x) << ","
       << format_g17(r.position.y) << "," << format_g17(r.heading) << ","
       << format_g17(r.velocity.x) << "," << format_g17(r.velocity.y) << ","
       << format_g17(r.acceleration.x) << "," << format_g17(r.acceleration.y)
       << "\n";
  }
  return os.str();
}

std::vector<Sample> window_scenes(const TrackTable& tracks,
                                  const DatasetConfig& cfg,
                                  AgentId target_id,
                                  const LaneGraph& graph) {
  if (cfg.downsample_factor < 1 || cfg.t_h < 1 || cfg.t_f < 1) {
    throw InvalidInputError("window_scenes: bad dataset config");
  }
  // Group rows by frame, then downsample by taking every k-th frame index
  // relative to the first (no interpolation).
  std::map<int64_t, std::vector<const TrackRow*>> by_frame;
  for (const TrackRow& r : tracks.rows) by_frame[r.frame].push_back(&r);
  if (by_frame.empty()) return {};

  const int64_t first = by_frame.begin()->first;
  std::vector<std::pair<int64_t, const std::vector<const TrackRow*>*>> steps;
  for (const auto& [frame, rows] : by_frame) {
    if ((frame - first) % cfg.downsample_factor == 0) {
      steps.emplace_back(frame, &rows);
    }
  }

  const int window = cfg.t_h + cfg.t_f;
  std::vector<Sample> samples;
  for (size_t start = 0; start + window <= steps.size(); ++start) {
    bool ok = true;
    for (int k = 0; k < window && ok; ++k) {
      // Steps must be consecutive downsampled frames and contain the target.
      const auto& [frame, rows] = steps[start + static_cast<size_t>(k)];
      if (frame != steps[start].first + int64_t(k) * cfg.downsample_factor) {
        ok = false;
        break;
      }
      ok = std::any_of(rows->begin(), rows->end(),
                       [&](const TrackRow* r) { return r->id == target_id; });
    }
    if (!ok) continue;

    Sample sample;
    sample.scene.dt = cfg.dt();
    sample.scene.lane_graph = &graph;
    for (int k = 0; k < cfg.t_h; ++k) {
      Frame f;
      f.timestep = k - cfg.t_h + 1;
      const auto& rows = *steps[start + static_cast<size_t>(k)].second;
      for (const TrackRow* r : rows) {
        AgentState s;
        s.agent_id = r->id;
        s.position = r->position;
        s.heading = r->heading;
        s.velocity = r->velocity;
        s.acceleration = r->acceleration;
        if (r->lane_id) s.lanes.current_lane = *r->lane_id;
        if (r->id == target_id) {
          f.states.insert(f.states.begin(), s);
        } else {
          f.states.push_back(s);
        }
      }
      sample.scene.frames.push_back(std::move(f));
    }
    for (int k = cfg.t_h; k < window; ++k) {
      const auto& rows = *steps[start + static_cast<size_t>(k)].second;
      for (const TrackRow* r : rows) {
        if (r->id == target_id) {
          sample.future.push_back(r->position);
          break;
        }
      }
    }
    samples.push_back(std::move(sample));
  }
  return samples;
}

void assign_lanes(SceneHistory& scene, int rollout_horizon) {
  if (scene.lane_graph == nullptr) {
    throw InvalidInputError("assign_lanes: scene has no lane graph");
  }
  for (Frame& f : scene.frames) {
    for (AgentState& s : f.states) {
      s.lanes = predict_lanes(*scene.lane_graph, {s}, rollout_horizon,
                              scene.dt)[0];
    }
  }
}

void SceneSet::rebind_graph() {
  for (Sample& s : samples) s.scene.lane_graph = &graph;
}

}  // namespace trajkit
