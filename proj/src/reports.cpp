#include "trajkit/reports.hpp"

#include <sstream>

#include <json.hpp>

#include "trajkit/prediction.hpp"

namespace trajkit {

namespace {

std::string id_or_empty(const std::optional<AgentId>& id) {
  return id ? std::to_string(*id) : std::string();
}

std::vector<AgentState> target_history(const SceneHistory& scene) {
  std::vector<AgentState> history;
  history.reserve(scene.frames.size());
  for (const Frame& f : scene.frames) history.push_back(f.target());
  return history;
}

PredictionSet run_model(const Sample& sample, const std::string& model) {
  const auto history = target_history(sample.scene);
  const int t_f = static_cast<int>(sample.future.size());
  if (model == "cv") return predict_cv(history, t_f, sample.scene.dt);
  if (model == "ca") return predict_ca(history, t_f, sample.scene.dt);
  throw InvalidInputError("unknown prediction model: " + model);
}

}  // namespace

std::string select_report_csv(const SceneSet& set, double threshold_D,
                              SelectTimestep mode) {
  std::ostringstream os;
  os << "scene,timestep,sl,fl,ff,ml\n";
  for (size_t si = 0; si < set.samples.size(); ++si) {
    const SceneHistory& scene = set.samples[si].scene;
    if (mode == SelectTimestep::kAll) {
      for (const Frame& f : scene.frames) {
        const NeighborSet n = select_neighbors(f, threshold_D);
        os << si << "," << f.timestep << "," << id_or_empty(n[Category::SL])
           << "," << id_or_empty(n[Category::FL]) << ","
           << id_or_empty(n[Category::FF]) << ","
           << id_or_empty(n[Category::ML]) << "\n";
      }
    } else {
      const Frame& f = scene.frames.back();
      const NeighborSet n = select_neighbors(f, threshold_D);
      os << si << "," << f.timestep << "," << id_or_empty(n[Category::SL])
         << "," << id_or_empty(n[Category::FL]) << ","
         << id_or_empty(n[Category::FF]) << "," << id_or_empty(n[Category::ML])
         << "\n";
    }
  }
  return os.str();
}

std::string attn_report_csv(const SceneSet& set, double threshold_D,
                            SelectTimestep mode,
                            const CoefficientConfig& cfg) {
  std::ostringstream os;
  for (size_t si = 0; si < set.samples.size(); ++si) {
    const auto tensor =
        build_interaction_tensor(set.samples[si].scene, threshold_D, mode);
    os << "scene " << si << "\n" << attention_to_csv(attention_matrix(tensor, cfg));
  }
  return os.str();
}

std::string predict_report_csv(const SceneSet& set, const std::string& model) {
  std::ostringstream os;
  os << "scene,mode,step,x,y\n";
  os.precision(17);
  for (size_t si = 0; si < set.samples.size(); ++si) {
    const PredictionSet pred = run_model(set.samples[si], model);
    for (int k = 0; k < pred.k(); ++k) {
      for (int t = 0; t < pred.t_f; ++t) {
        const Vec2 p = pred.modes[static_cast<size_t>(k)][static_cast<size_t>(t)];
        os << si << "," << k << "," << (t + 1) << "," << p.x << "," << p.y
           << "\n";
      }
    }
  }
  return os.str();
}

std::string eval_report_json(const SceneSet& set, const std::string& model) {
  if (set.samples.empty()) {
    throw InvalidInputError("eval: no samples");
  }
  std::vector<PredictionSet> preds;
  std::vector<std::vector<Vec2>> gts;
  double sum_ade = 0.0, sum_fde = 0.0, sum_loss = 0.0;
  for (const Sample& sample : set.samples) {
    PredictionSet pred = run_model(sample, model);
    sum_ade += min_ade(pred, sample.future);
    sum_fde += min_fde(pred, sample.future);
    sum_loss += loss_distance(pred, sample.future);
    preds.push_back(std::move(pred));
    gts.push_back(sample.future);
  }
  const double n = static_cast<double>(set.samples.size());
  nlohmann::json doc;
  doc["model"] = model;
  doc["n_samples"] = set.samples.size();
  doc["min_ade"] = sum_ade / n;
  doc["min_fde"] = sum_fde / n;
  doc["loss_distance"] = sum_loss / n;
  doc["rmse"] = rmse(preds, gts);
  doc["rmse_buckets"] = rmse_bucketed(preds, gts, set.samples[0].scene.dt);
  return doc.dump(2);
}

std::string eval_per_sample_csv(const SceneSet& set, const std::string& model) {
  std::ostringstream os;
  os << "scene,ade,fde\n";
  os.precision(17);
  for (size_t si = 0; si < set.samples.size(); ++si) {
    const PredictionSet pred = run_model(set.samples[si], model);
    os << si << "," << min_ade(pred, set.samples[si].future) << ","
       << min_fde(pred, set.samples[si].future) << "\n";
  }
  return os.str();
}

}  // namespace trajkit
