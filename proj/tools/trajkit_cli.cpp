// Command-line front end; talks to the core exclusively through the C API.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "trajkit/trajkit_c.h"

namespace {

struct SceneSetDeleter {
  void operator()(tk_scene_set* s) const { tk_scene_set_free(s); }
};
using SceneSetPtr = std::unique_ptr<tk_scene_set, SceneSetDeleter>;

struct InputOptions {
  // Synthetic source.
  uint64_t seed = 0;
  std::string layout = "straight-multilane";
  std::string motion = "cv";
  int n_agents = 5;
  int n_scenes = 1;
  double density_radius = 30.0;
  // Dataset source.
  std::string trajectories;
  std::string lanes;
  int64_t target_id = 0;
  double dt_raw = 0.1;
  int downsample = 1;
  // Shared.
  int t_h = 10;
  int t_f = 30;
  double dt = 0.1;
  double threshold_D = 30.0;
};

void add_input_flags(CLI::App* cmd, InputOptions& in) {
  cmd->fallthrough();  // lets globals like --seed/--out follow the subcommand
  cmd->add_option("--trajectories", in.trajectories,
                  "Trajectory CSV (synthetic scenes are generated when omitted)");
  cmd->add_option("--lanes", in.lanes, "Lane-graph JSON (with --trajectories)");
  cmd->add_option("--target", in.target_id, "Target agent id");
  cmd->add_option("--dt-raw", in.dt_raw, "Raw dataset timestep (s)");
  cmd->add_option("--downsample", in.downsample, "Downsample factor");
  cmd->add_option("--layout", in.layout,
                  "straight-multilane|merge|intersection-cross");
  cmd->add_option("--motion", in.motion, "cv|ca|lane-change");
  cmd->add_option("--agents", in.n_agents, "Agents per synthetic scene");
  cmd->add_option("--scenes", in.n_scenes, "Number of synthetic scenes");
  cmd->add_option("--radius", in.density_radius, "Synthetic spawn radius (m)");
  cmd->add_option("--t-h", in.t_h, "Observation steps");
  cmd->add_option("--t-f", in.t_f, "Prediction steps");
  cmd->add_option("--dt", in.dt, "Timestep for synthetic scenes (s)");
  cmd->add_option("--threshold", in.threshold_D, "Selection threshold D (m)");
}

std::string synth_spec_json(const InputOptions& in) {
  std::ostringstream os;
  os << "{\"seed\":" << in.seed << ",\"lane_layout\":\"" << in.layout
     << "\",\"n_agents\":" << in.n_agents << ",\"density_radius\":"
     << in.density_radius << ",\"motion\":\"" << in.motion
     << "\",\"n_scenes\":" << in.n_scenes << ",\"t_h\":" << in.t_h
     << ",\"t_f\":" << in.t_f << ",\"dt\":" << in.dt
     << ",\"threshold_D\":" << in.threshold_D << "}";
  return os.str();
}

int make_scene_set(const InputOptions& in, SceneSetPtr& out) {
  tk_scene_set* raw = nullptr;
  tk_status st;
  if (!in.trajectories.empty()) {
    if (in.lanes.empty()) {
      std::cerr << "error: --trajectories requires --lanes\n";
      return 1;
    }
    std::ostringstream cfg;
    cfg << "{\"dt_raw\":" << in.dt_raw << ",\"downsample_factor\":"
        << in.downsample << ",\"t_h\":" << in.t_h << ",\"t_f\":" << in.t_f
        << ",\"threshold_D\":" << in.threshold_D << "}";
    st = tk_scene_set_load(in.trajectories.c_str(), in.lanes.c_str(),
                           cfg.str().c_str(), in.target_id, &raw);
  } else {
    st = tk_synthesize(synth_spec_json(in).c_str(), &raw);
  }
  if (st != TK_OK) {
    std::cerr << "error: " << tk_last_error() << "\n";
    return static_cast<int>(st);
  }
  out.reset(raw);
  return 0;
}

int write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write " << out_path << "\n";
    return 1;
  }
  out << text;
  return 0;
}

int emit(tk_status st, char** result, const std::string& out_path) {
  if (st != TK_OK) {
    std::cerr << "error: " << tk_last_error() << "\n";
    return static_cast<int>(st);
  }
  const int rc = write_output(*result, out_path);
  tk_string_free(*result);
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"trajkit: lane-topology agent selection, physical attention, "
               "kinematic prediction, and latency benchmarks"};
  app.require_subcommand(1);

  std::string out_path;
  uint64_t seed = 0;
  app.add_option("--out", out_path, "Output file (stdout when omitted)");
  app.add_option("--seed", seed, "Seed for synthetic scenes");
  app.set_config("--config", "", "INI config file");

  InputOptions in;

  auto* select = app.add_subcommand("select", "Per-timestep neighbor report");
  std::string select_mode = "all";
  add_input_flags(select, in);
  select->add_option("--mode", select_mode, "all|current");

  auto* attn = app.add_subcommand("attn", "Physical attention matrix CSV");
  std::string attn_mode = "all";
  std::string part = "ab";
  double horizon_T = 30.0, epsilon = 1.0;
  add_input_flags(attn, in);
  attn->add_option("--mode", attn_mode, "all|current");
  attn->add_option("--part", part, "Coefficient variant: a|b|ab");
  attn->add_option("--horizon-T", horizon_T, "Upper bound T (s)");
  attn->add_option("--epsilon", epsilon, "Extra item epsilon");

  auto* predict = app.add_subcommand("predict", "Kinematic baseline rollout");
  std::string predict_model = "cv";
  add_input_flags(predict, in);
  predict->add_option("--model", predict_model, "cv|ca");

  auto* eval = app.add_subcommand("eval", "Metrics report (JSON)");
  std::string eval_model = "cv";
  bool per_sample = false;
  add_input_flags(eval, in);
  eval->add_option("--model", eval_model, "cv|ca");
  eval->add_flag("--per-sample", per_sample, "Per-sample error CSV instead");

  auto* bench = app.add_subcommand("bench", "LP/AS/TP latency table");
  int reps = 20;
  std::vector<std::string> strategies = {"alg1", "radius-all", "k-nearest"};
  add_input_flags(bench, in);
  bench->add_option("--reps", reps, "Repetitions");
  bench->add_option("--strategy", strategies, "alg1|radius-all|k-nearest");

  auto* synth = app.add_subcommand("synth", "Write synthetic scenes as CSV");
  std::string lanes_out;
  add_input_flags(synth, in);
  synth->add_option("--lanes-out", lanes_out,
                    "Lane-graph JSON output path (default <out>.lanes.json)");

  CLI11_PARSE(app, argc, argv);
  in.seed = seed;

  try {
    SceneSetPtr set;
    if (const int rc = make_scene_set(in, set); rc != 0) return rc;

    char* result = nullptr;
    if (select->parsed()) {
      const std::string opts = "{\"mode\":\"" + select_mode +
                               "\",\"threshold_D\":" +
                               std::to_string(in.threshold_D) + "}";
      return emit(tk_run_select(set.get(), opts.c_str(), &result), &result,
                  out_path);
    }
    if (attn->parsed()) {
      std::ostringstream opts;
      opts << "{\"mode\":\"" << attn_mode << "\",\"part\":\"" << part
           << "\",\"horizon_T\":" << horizon_T << ",\"epsilon\":" << epsilon
           << ",\"threshold_D\":" << in.threshold_D << "}";
      return emit(tk_run_attn(set.get(), opts.str().c_str(), &result), &result,
                  out_path);
    }
    if (predict->parsed()) {
      const std::string opts = "{\"model\":\"" + predict_model + "\"}";
      return emit(tk_run_predict(set.get(), opts.c_str(), &result), &result,
                  out_path);
    }
    if (eval->parsed()) {
      const std::string opts = "{\"model\":\"" + eval_model +
                               "\",\"per_sample\":" +
                               (per_sample ? "true" : "false") + "}";
      return emit(tk_run_eval(set.get(), opts.c_str(), &result), &result,
                  out_path);
    }
    if (bench->parsed()) {
      std::ostringstream opts;
      opts << "{\"repetitions\":" << reps << ",\"threshold_D\":"
           << in.threshold_D << ",\"strategies\":[";
      for (size_t i = 0; i < strategies.size(); ++i) {
        opts << (i ? "," : "") << "\"" << strategies[i] << "\"";
      }
      opts << "]}";
      return emit(tk_run_bench(set.get(), opts.str().c_str(), &result), &result,
                  out_path);
    }
    if (synth->parsed()) {
      char* csv = nullptr;
      tk_status st = tk_scene_set_to_csv(set.get(), &csv);
      if (st != TK_OK) {
        std::cerr << "error: " << tk_last_error() << "\n";
        return static_cast<int>(st);
      }
      int rc = write_output(csv, out_path);
      tk_string_free(csv);
      if (rc != 0) return rc;

      char* lanes_json = nullptr;
      st = tk_scene_set_lanes_json(set.get(), &lanes_json);
      if (st != TK_OK) {
        std::cerr << "error: " << tk_last_error() << "\n";
        return static_cast<int>(st);
      }
      std::string lanes_path = lanes_out;
      if (lanes_path.empty() && !out_path.empty()) {
        lanes_path = out_path + ".lanes.json";
      }
      if (!lanes_path.empty()) {
        rc = write_output(lanes_json, lanes_path);
      }
      tk_string_free(lanes_json);
      return rc;
    }
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
