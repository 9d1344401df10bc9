#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "trajkit/trajkit_c.h"

namespace {

struct SceneSetHandle {
  tk_scene_set* p = nullptr;
  ~SceneSetHandle() { tk_scene_set_free(p); }
};

std::string take(char* s) {
  std::string out = s ? s : "";
  tk_string_free(s);
  return out;
}

SceneSetHandle synth(const char* spec) {
  SceneSetHandle h;
  REQUIRE(tk_synthesize(spec, &h.p) == TK_OK);
  REQUIRE(h.p != nullptr);
  return h;
}

}  // namespace

TEST_CASE("synthesize and query a scene set") {
  auto h = synth(R"({"seed":7,"n_scenes":2,"n_agents":4,"t_h":5,"t_f":10})");
  int64_t n = 0;
  CHECK(tk_scene_set_size(h.p, &n) == TK_OK);
  CHECK(n == 2);

  char* csv = nullptr;
  REQUIRE(tk_scene_set_to_csv(h.p, &csv) == TK_OK);
  const std::string text = take(csv);
  CHECK(text.rfind("frame,id,", 0) == 0);

  char* lanes = nullptr;
  REQUIRE(tk_scene_set_lanes_json(h.p, &lanes) == TK_OK);
  CHECK(take(lanes).find("lane_id") != std::string::npos);
}

TEST_CASE("synthesis is deterministic per seed") {
  auto a = synth(R"({"seed":11,"n_scenes":1,"t_h":5,"t_f":5})");
  auto b = synth(R"({"seed":11,"n_scenes":1,"t_h":5,"t_f":5})");
  auto c = synth(R"({"seed":12,"n_scenes":1,"t_h":5,"t_f":5})");
  char *sa = nullptr, *sb = nullptr, *sc = nullptr;
  REQUIRE(tk_scene_set_to_csv(a.p, &sa) == TK_OK);
  REQUIRE(tk_scene_set_to_csv(b.p, &sb) == TK_OK);
  REQUIRE(tk_scene_set_to_csv(c.p, &sc) == TK_OK);
  const std::string ta = take(sa), tb = take(sb), tc = take(sc);
  CHECK(ta == tb);
  CHECK(ta != tc);
}

TEST_CASE("error paths set codes and messages") {
  tk_scene_set* p = nullptr;
  CHECK(tk_synthesize(R"({"lane_layout":"bogus"})", &p) == TK_ERR_INPUT);
  CHECK(std::string(tk_last_error()).find("bogus") != std::string::npos);
  CHECK(tk_synthesize("{not json", &p) == TK_ERR_INPUT);
  CHECK(tk_synthesize("{}", nullptr) == TK_ERR_INPUT);

  CHECK(tk_scene_set_load("/no/such.csv", "/no/such.json", "{}", 0, &p) ==
        TK_ERR_INPUT);

  auto h = synth("{}");
  char* out = nullptr;
  CHECK(tk_run_select(h.p, R"({"mode":"sideways"})", &out) == TK_ERR_INPUT);
  CHECK(tk_run_attn(h.p, R"({"part":"c"})", &out) == TK_ERR_INPUT);
  CHECK(tk_run_bench(h.p, R"({"strategies":["warp"]})", &out) == TK_ERR_INPUT);
  CHECK(tk_run_select(nullptr, "{}", &out) == TK_ERR_INPUT);
}

TEST_CASE("pipeline reports over a synthetic set") {
  auto h = synth(R"({"seed":3,"n_scenes":2,"n_agents":6,"t_h":6,"t_f":10})");

  char* out = nullptr;
  REQUIRE(tk_run_select(h.p, R"({"mode":"all"})", &out) == TK_OK);
  std::string select_all = take(out);
  CHECK(select_all.rfind("scene,timestep,sl,fl,ff,ml", 0) == 0);

  REQUIRE(tk_run_select(h.p, R"({"mode":"current"})", &out) == TK_OK);
  CHECK(take(out).size() < select_all.size());

  REQUIRE(tk_run_attn(h.p, R"({"part":"ab"})", &out) == TK_OK);
  CHECK(take(out).find("SL") != std::string::npos);

  REQUIRE(tk_run_predict(h.p, R"({"model":"ca"})", &out) == TK_OK);
  CHECK(take(out).rfind("scene,", 0) == 0);

  REQUIRE(tk_run_eval(h.p, R"({"model":"cv"})", &out) == TK_OK);
  const std::string eval = take(out);
  CHECK(eval.find("\"rmse\"") != std::string::npos);
  CHECK(eval.find("\"min_ade\"") != std::string::npos);

  REQUIRE(tk_run_eval(h.p, R"({"model":"cv","per_sample":true})", &out) ==
          TK_OK);
  CHECK(take(out).rfind("scene,ade,fde", 0) == 0);

  REQUIRE(tk_run_bench(h.p, R"({"repetitions":3})", &out) == TK_OK);
  const std::string bench = take(out);
  CHECK(bench.find("alg1") != std::string::npos);
  CHECK(bench.find("radius-all") != std::string::npos);
  CHECK(bench.find("k-nearest") != std::string::npos);
}

TEST_CASE("CSV round trip: synthesized scenes reload identically") {
  auto h = synth(R"({"seed":21,"n_scenes":2,"n_agents":5,"t_h":6,"t_f":8})");
  char* csv = nullptr;
  char* lanes = nullptr;
  REQUIRE(tk_scene_set_to_csv(h.p, &csv) == TK_OK);
  REQUIRE(tk_scene_set_lanes_json(h.p, &lanes) == TK_OK);

  const std::string csv_path = "capi_roundtrip.csv";
  const std::string lanes_path = "capi_roundtrip.lanes.json";
  { std::ofstream(csv_path) << take(csv); }
  { std::ofstream(lanes_path) << take(lanes); }

  SceneSetHandle reloaded;
  REQUIRE(tk_scene_set_load(csv_path.c_str(), lanes_path.c_str(),
                            R"({"t_h":6,"t_f":8})", 0, &reloaded.p) == TK_OK);
  int64_t n_orig = 0, n_back = 0;
  CHECK(tk_scene_set_size(h.p, &n_orig) == TK_OK);
  CHECK(tk_scene_set_size(reloaded.p, &n_back) == TK_OK);
  CHECK(n_orig == n_back);

  // Selection over the reloaded set must match the original scene set.
  char *sel_a = nullptr, *sel_b = nullptr;
  REQUIRE(tk_run_select(h.p, "{}", &sel_a) == TK_OK);
  REQUIRE(tk_run_select(reloaded.p, "{}", &sel_b) == TK_OK);
  CHECK(take(sel_a) == take(sel_b));

  std::remove(csv_path.c_str());
  std::remove(lanes_path.c_str());
}
