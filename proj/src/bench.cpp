#include "trajkit/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "trajkit/agent_selection.hpp"
#include "trajkit/prediction.hpp"

namespace trajkit {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

StageStats stats_of(std::vector<double> samples) {
  std::sort(samples.begin(), samples.end());
  StageStats s;
  const size_t n = samples.size();
  s.median_ms = n % 2 == 1 ? samples[n / 2]
                           : 0.5 * (samples[n / 2 - 1] + samples[n / 2]);
  const size_t p95_idx =
      std::min(n - 1, static_cast<size_t>(std::ceil(0.95 * n)) - 1);
  s.p95_ms = samples[p95_idx];
  return s;
}

// The classical baseline: gather all agents within D, then assemble the
// nearest four into fixed slots. Returns a checksum so the work is not
// optimized out.
double radius_all_select(const Frame& frame, double threshold_D) {
  const AgentState& target = frame.target();
  std::vector<std::pair<double, size_t>> in_range;
  in_range.reserve(frame.states.size());
  for (size_t i = 1; i < frame.states.size(); ++i) {
    const double d = (frame.states[i].position - target.position).norm();
    if (d < threshold_D) in_range.emplace_back(d, i);
  }
  const size_t slots = std::min<size_t>(4, in_range.size());
  std::partial_sort(in_range.begin(), in_range.begin() + slots,
                    in_range.end());
  double checksum = 0.0;
  for (size_t i = 0; i < slots; ++i) checksum += in_range[i].first;
  return checksum;
}

double k_nearest_select(const Frame& frame, int k) {
  const AgentState& target = frame.target();
  std::vector<std::pair<double, size_t>> all;
  all.reserve(frame.states.size());
  for (size_t i = 1; i < frame.states.size(); ++i) {
    all.emplace_back((frame.states[i].position - target.position).norm(), i);
  }
  const size_t slots = std::min<size_t>(static_cast<size_t>(k), all.size());
  std::partial_sort(all.begin(), all.begin() + slots, all.end());
  double checksum = 0.0;
  for (size_t i = 0; i < slots; ++i) checksum += all[i].first;
  return checksum;
}

}  // namespace

std::string to_string(SelectionStrategy s) {
  switch (s) {
    case SelectionStrategy::kAlg1:
      return "alg1";
    case SelectionStrategy::kRadiusAll:
      return "radius-all";
    case SelectionStrategy::kKNearest:
      return "k-nearest";
  }
  return "?";
}

std::vector<BenchResult> run_benchmark(
    const SceneSet& set, const BenchConfig& cfg,
    const std::vector<SelectionStrategy>& strategies) {
  if (set.samples.empty()) {
    throw InvalidInputError("run_benchmark: no scenes");
  }
  std::vector<BenchResult> results;
  volatile double sink = 0.0;

  for (SelectionStrategy strategy : strategies) {
    std::vector<double> lp_ms, as_ms, tp_ms, total_ms;
    // Work on a mutable copy so the LP stage re-runs lane assignment.
    SceneSet work = set;
    work.rebind_graph();

    for (int rep = 0; rep < cfg.repetitions; ++rep) {
      const auto t0 = Clock::now();
      for (Sample& s : work.samples) {
        assign_lanes(s.scene, work.cfg.t_f);
      }
      const double lp = ms_since(t0);

      const auto t1 = Clock::now();
      double checksum = 0.0;
      for (const Sample& s : work.samples) {
        for (const Frame& f : s.scene.frames) {
          switch (strategy) {
            case SelectionStrategy::kAlg1: {
              const NeighborSet n = select_neighbors(f, cfg.threshold_D);
              for (const auto& id : n.ids) {
                checksum += id ? static_cast<double>(*id) : 0.0;
              }
              break;
            }
            case SelectionStrategy::kRadiusAll:
              checksum += radius_all_select(f, cfg.threshold_D);
              break;
            case SelectionStrategy::kKNearest:
              checksum += k_nearest_select(f, cfg.k_nearest);
              break;
          }
        }
      }
      sink = sink + checksum;
      const double as = ms_since(t1);

      const auto t2 = Clock::now();
      for (const Sample& s : work.samples) {
        std::vector<AgentState> history;
        history.reserve(s.scene.frames.size());
        for (const Frame& f : s.scene.frames) history.push_back(f.target());
        const PredictionSet p =
            predict_ca(history, work.cfg.t_f, s.scene.dt);
        sink = sink + p.modes[0].back().x;
      }
      const double tp = ms_since(t2);

      lp_ms.push_back(lp);
      as_ms.push_back(as);
      tp_ms.push_back(tp);
      total_ms.push_back(lp + as + tp);
    }

    BenchResult r;
    r.strategy = strategy;
    r.lane_prediction = stats_of(lp_ms);
    r.agent_selection = stats_of(as_ms);
    r.trajectory_prediction = stats_of(tp_ms);
    r.total = stats_of(total_ms);
    results.push_back(r);
  }
  return results;
}

std::string bench_to_csv(const std::vector<BenchResult>& results) {
  std::ostringstream os;
  os << "strategy,lp_median_ms,lp_p95_ms,as_median_ms,as_p95_ms,"
        "tp_median_ms,tp_p95_ms,total_median_ms,total_p95_ms\n";
  os.precision(6);
  os << std::fixed;
  for (const BenchResult& r : results) {
    os << to_string(r.strategy) << "," << r.lane_prediction.median_ms << ","
       << r.lane_prediction.p95_ms << "," << r.agent_selection.median_ms << ","
       << r.agent_selection.p95_ms << "," << r.trajectory_prediction.median_ms
       << "," << r.trajectory_prediction.p95_ms << "," << r.total.median_ms
       << "," << r.total.p95_ms << "\n";
  }
  return os.str();
}

}  // namespace trajkit
