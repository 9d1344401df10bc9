#include "trajkit/trajkit_c.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>

#include <json.hpp>

#include "trajkit/bench.hpp"
#include "trajkit/reports.hpp"
#include "trajkit/synth.hpp"

struct tk_scene_set {
  trajkit::SceneSet set;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

tk_status fail(tk_status code, const std::string& msg) {
  g_last_error = msg;
  return code;
}

template <typename Fn>
tk_status guarded(Fn&& fn) {
  try {
    fn();
    return TK_OK;
  } catch (const trajkit::InvalidInputError& e) {
    return fail(TK_ERR_INPUT, e.what());
  } catch (const trajkit::DegenerateGeometryError& e) {
    return fail(TK_ERR_INPUT, e.what());
  } catch (const std::exception& e) {
    return fail(TK_ERR_INTERNAL, e.what());
  }
}

nlohmann::json parse_opts(const char* json) {
  if (json == nullptr || json[0] == '\0') return nlohmann::json::object();
  try {
    return nlohmann::json::parse(json);
  } catch (const nlohmann::json::exception& e) {
    throw trajkit::InvalidInputError(std::string("options JSON: ") + e.what());
  }
}

trajkit::SelectTimestep mode_from(const nlohmann::json& opts) {
  const std::string mode = opts.value("mode", "all");
  if (mode == "all") return trajkit::SelectTimestep::kAll;
  if (mode == "current") return trajkit::SelectTimestep::kCurrent;
  throw trajkit::InvalidInputError("mode must be 'all' or 'current'");
}

trajkit::CoefficientConfig coeff_from(const nlohmann::json& opts) {
  trajkit::CoefficientConfig cfg;
  cfg.horizon_T = opts.value("horizon_T", 30.0);
  cfg.epsilon = opts.value("epsilon", 1.0);
  const std::string part = opts.value("part", "ab");
  if (part == "a") {
    cfg.variant = trajkit::CoefficientVariant::kDistanceOnly;
  } else if (part == "b") {
    cfg.variant = trajkit::CoefficientVariant::kApproachOnly;
  } else if (part == "ab") {
    cfg.variant = trajkit::CoefficientVariant::kFull;
  } else {
    throw trajkit::InvalidInputError("part must be 'a', 'b', or 'ab'");
  }
  return cfg;
}

}  // namespace

extern "C" {

const char* tk_last_error(void) { return g_last_error.c_str(); }

void tk_string_free(char* s) { std::free(s); }

void tk_scene_set_free(tk_scene_set* set) { delete set; }

tk_status tk_synthesize(const char* spec_json, tk_scene_set** out) {
  if (out == nullptr) return fail(TK_ERR_INPUT, "out is null");
  return guarded([&] {
    const nlohmann::json opts = parse_opts(spec_json);
    trajkit::SynthSpec spec;
    spec.seed = opts.value("seed", uint64_t{0});
    spec.lane_layout = trajkit::lane_layout_from_string(
        opts.value("lane_layout", "straight-multilane"));
    spec.n_agents = opts.value("n_agents", 5);
    spec.density_radius = opts.value("density_radius", 30.0);
    spec.motion = trajkit::motion_kind_from_string(opts.value("motion", "cv"));
    spec.n_scenes = opts.value("n_scenes", 1);
    spec.cfg.t_h = opts.value("t_h", 10);
    spec.cfg.t_f = opts.value("t_f", 30);
    spec.cfg.dt_raw = opts.value("dt", 0.1);
    spec.cfg.threshold_D = opts.value("threshold_D", 30.0);
    auto handle = std::make_unique<tk_scene_set>();
    handle->set = trajkit::synthesize(spec);
    handle->set.rebind_graph();
    *out = handle.release();
  });
}

tk_status tk_scene_set_load(const char* trajectory_csv_path,
                            const char* lane_graph_json_path,
                            const char* cfg_json, int64_t target_id,
                            tk_scene_set** out) {
  if (out == nullptr || trajectory_csv_path == nullptr ||
      lane_graph_json_path == nullptr) {
    return fail(TK_ERR_INPUT, "null argument");
  }
  return guarded([&] {
    const nlohmann::json opts = parse_opts(cfg_json);
    trajkit::DatasetConfig cfg;
    cfg.dt_raw = opts.value("dt_raw", 0.1);
    cfg.downsample_factor = opts.value("downsample_factor", 1);
    cfg.t_h = opts.value("t_h", 10);
    cfg.t_f = opts.value("t_f", 30);
    cfg.threshold_D = opts.value("threshold_D", 30.0);

    auto handle = std::make_unique<tk_scene_set>();
    handle->set.cfg = cfg;
    handle->set.graph = trajkit::LaneGraph::from_json_file(lane_graph_json_path);
    const trajkit::TrackTable table =
        trajkit::load_trajectories(trajectory_csv_path, cfg);
    handle->set.samples =
        trajkit::window_scenes(table, cfg, target_id, handle->set.graph);
    handle->set.rebind_graph();
    for (trajkit::Sample& s : handle->set.samples) {
      trajkit::assign_lanes(s.scene, cfg.t_f);
    }
    *out = handle.release();
  });
}

tk_status tk_scene_set_size(const tk_scene_set* set, int64_t* out) {
  if (set == nullptr || out == nullptr) return fail(TK_ERR_INPUT, "null argument");
  *out = static_cast<int64_t>(set->set.samples.size());
  return TK_OK;
}

tk_status tk_scene_set_to_csv(const tk_scene_set* set, char** out) {
  if (set == nullptr || out == nullptr) return fail(TK_ERR_INPUT, "null argument");
  return guarded([&] { *out = dup_string(trajkit::scene_set_to_csv(set->set)); });
}

tk_status tk_scene_set_lanes_json(const tk_scene_set* set, char** out) {
  if (set == nullptr || out == nullptr) return fail(TK_ERR_INPUT, "null argument");
  return guarded([&] { *out = dup_string(set->set.graph.to_json()); });
}

tk_status tk_run_select(const tk_scene_set* set, const char* opts_json,
                        char** out_csv) {
  if (set == nullptr || out_csv == nullptr) {
    return fail(TK_ERR_INPUT, "null argument");
  }
  return guarded([&] {
    const nlohmann::json opts = parse_opts(opts_json);
    const double d = opts.value("threshold_D", set->set.cfg.threshold_D);
    *out_csv = dup_string(
        trajkit::select_report_csv(set->set, d, mode_from(opts)));
  });
}

tk_status tk_run_attn(const tk_scene_set* set, const char* opts_json,
                      char** out_csv) {
  if (set == nullptr || out_csv == nullptr) {
    return fail(TK_ERR_INPUT, "null argument");
  }
  return guarded([&] {
    const nlohmann::json opts = parse_opts(opts_json);
    const double d = opts.value("threshold_D", set->set.cfg.threshold_D);
    *out_csv = dup_string(trajkit::attn_report_csv(
        set->set, d, mode_from(opts), coeff_from(opts)));
  });
}

tk_status tk_run_predict(const tk_scene_set* set, const char* opts_json,
                         char** out_csv) {
  if (set == nullptr || out_csv == nullptr) {
    return fail(TK_ERR_INPUT, "null argument");
  }
  return guarded([&] {
    const nlohmann::json opts = parse_opts(opts_json);
    *out_csv = dup_string(
        trajkit::predict_report_csv(set->set, opts.value("model", "cv")));
  });
}

tk_status tk_run_eval(const tk_scene_set* set, const char* opts_json,
                      char** out_json) {
  if (set == nullptr || out_json == nullptr) {
    return fail(TK_ERR_INPUT, "null argument");
  }
  return guarded([&] {
    const nlohmann::json opts = parse_opts(opts_json);
    const std::string model = opts.value("model", "cv");
    if (opts.value("per_sample", false)) {
      *out_json = dup_string(trajkit::eval_per_sample_csv(set->set, model));
    } else {
      *out_json = dup_string(trajkit::eval_report_json(set->set, model));
    }
  });
}

tk_status tk_run_bench(const tk_scene_set* set, const char* opts_json,
                       char** out_csv) {
  if (set == nullptr || out_csv == nullptr) {
    return fail(TK_ERR_INPUT, "null argument");
  }
  return guarded([&] {
    const nlohmann::json opts = parse_opts(opts_json);
    trajkit::BenchConfig cfg;
    cfg.repetitions = opts.value("repetitions", 20);
    cfg.threshold_D = opts.value("threshold_D", set->set.cfg.threshold_D);
    std::vector<trajkit::SelectionStrategy> strategies;
    if (opts.contains("strategies")) {
      for (const auto& s : opts.at("strategies")) {
        const std::string name = s.get<std::string>();
        if (name == "alg1") {
          strategies.push_back(trajkit::SelectionStrategy::kAlg1);
        } else if (name == "radius-all") {
          strategies.push_back(trajkit::SelectionStrategy::kRadiusAll);
        } else if (name == "k-nearest") {
          strategies.push_back(trajkit::SelectionStrategy::kKNearest);
        } else {
          throw trajkit::InvalidInputError("unknown strategy: " + name);
        }
      }
    } else {
      strategies = {trajkit::SelectionStrategy::kAlg1,
                    trajkit::SelectionStrategy::kRadiusAll,
                    trajkit::SelectionStrategy::kKNearest};
    }
    *out_csv = dup_string(trajkit::bench_to_csv(
        trajkit::run_benchmark(set->set, cfg, strategies)));
  });
}

}  // extern "C"
