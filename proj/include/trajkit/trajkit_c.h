/* C API for the trajkit interaction-modeling library.
 *
 * All functions return tk_status; outputs are heap strings released with
 * tk_string_free. Handles are opaque and freed with their _free function.
 * On error, tk_last_error() holds a message for the calling thread.
 */
#ifndef TRAJKIT_C_H
#define TRAJKIT_C_H

#include <stdint.h>

#if defined(_WIN32)
#define TK_API __declspec(dllexport)
#else
#define TK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tk_status {
  TK_OK = 0,
  TK_ERR_INPUT = 1,    /* bad arguments, malformed files */
  TK_ERR_INTERNAL = 2, /* invariant violation */
} tk_status;

/* A lane graph plus windowed scenes (loaded or synthesized). */
typedef struct tk_scene_set tk_scene_set;

TK_API const char* tk_last_error(void);
TK_API void tk_string_free(char* s);
TK_API void tk_scene_set_free(tk_scene_set* set);

/* Synthesize scenes from a JSON spec:
 * {"seed":7,"lane_layout":"straight-multilane|merge|intersection-cross",
 *  "n_agents":5,"density_radius":30.0,"motion":"cv|ca|lane-change",
 *  "n_scenes":1,"t_h":10,"t_f":30,"dt":0.1,"threshold_D":30.0} */
TK_API tk_status tk_synthesize(const char* spec_json, tk_scene_set** out);

/* Load a trajectory CSV + lane-graph JSON and window around target_id.
 * cfg_json: {"dt_raw":0.1,"downsample_factor":1,"t_h":10,"t_f":30,
 *            "threshold_D":30.0} */
TK_API tk_status tk_scene_set_load(const char* trajectory_csv_path,
                                   const char* lane_graph_json_path,
                                   const char* cfg_json, int64_t target_id,
                                   tk_scene_set** out);

TK_API tk_status tk_scene_set_size(const tk_scene_set* set, int64_t* out);

/* Trajectory CSV / lane-graph JSON for the set (synth output). */
TK_API tk_status tk_scene_set_to_csv(const tk_scene_set* set, char** out);
TK_API tk_status tk_scene_set_lanes_json(const tk_scene_set* set, char** out);

/* opts_json for the pipeline reports:
 * {"threshold_D":30.0,"mode":"all|current","part":"a|b|ab",
 *  "horizon_T":30.0,"epsilon":1.0,"model":"cv|ca",
 *  "per_sample":false} — unknown keys ignored, all optional. */
TK_API tk_status tk_run_select(const tk_scene_set* set, const char* opts_json,
                               char** out_csv);
TK_API tk_status tk_run_attn(const tk_scene_set* set, const char* opts_json,
                             char** out_csv);
TK_API tk_status tk_run_predict(const tk_scene_set* set, const char* opts_json,
                                char** out_csv);
TK_API tk_status tk_run_eval(const tk_scene_set* set, const char* opts_json,
                             char** out_json);

/* opts_json: {"repetitions":20,"threshold_D":30.0,
 *             "strategies":["alg1","radius-all","k-nearest"]} */
TK_API tk_status tk_run_bench(const tk_scene_set* set, const char* opts_json,
                              char** out_csv);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* TRAJKIT_C_H */
