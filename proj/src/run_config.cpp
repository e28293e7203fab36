#include "chpeed/casedata/run_config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "chpeed/casedata/case_io.hpp"

namespace chpeed {

using nlohmann::json;

std::string to_string(Algorithm a) {
  return a == Algorithm::kThetaDea ? "theta-dea" : "nsga-ii";
}

Algorithm algorithm_from_string(const std::string& s) {
  if (s == "theta-dea") return Algorithm::kThetaDea;
  if (s == "nsga-ii") return Algorithm::kNsga2;
  throw ValidationError("algorithm: expected 'theta-dea' or 'nsga-ii', got '" +
                        s + "'");
}

void RunConfig::validate() const {
  if (population_size < 4 || population_size % 2 != 0)
    throw ValidationError("population_size: must be even and >= 4");
  if (max_iterations < 0)
    throw ValidationError("max_iterations: must be >= 0");
  if (theta <= 0.0) throw ValidationError("theta: must be > 0");
  if (fcm.n_clusters < 1)
    throw ValidationError("fcm.n_clusters: must be >= 1");
  if (fcm.fuzziness <= 1.0)
    throw ValidationError("fcm.fuzziness: must be > 1");
  if (fcm.epsilon <= 0.0) throw ValidationError("fcm.epsilon: must be > 0");
  if (fcm.max_iter < 1) throw ValidationError("fcm.max_iter: must be >= 1");
  if (grp.weights.size() != 2)
    throw ValidationError("grp.weights: expected one weight per objective");
  Scalar wsum = 0.0;
  for (Scalar w : grp.weights) {
    if (w < 0.0) throw ValidationError("grp.weights: must be nonnegative");
    wsum += w;
  }
  if (wsum == 0.0) throw ValidationError("grp.weights: must not all be zero");
  if (grp.resolution <= 0.0)
    throw ValidationError("grp.resolution: must be > 0");
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file: " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  json j;
  try {
    j = json::parse(ss.str());
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  if (!j.is_object()) throw ValidationError("config: expected an object");

  RunConfig cfg;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& k = it.key();
    const json& v = it.value();
    if (k == "population_size") cfg.population_size = v.get<int>();
    else if (k == "max_iterations") cfg.max_iterations = v.get<int>();
    else if (k == "seed") cfg.seed = v.get<std::uint64_t>();
    else if (k == "theta") cfg.theta = v.get<Scalar>();
    else if (k == "reference_divisions") cfg.reference_divisions = v.get<int>();
    else if (k == "algorithm")
      cfg.algorithm = algorithm_from_string(v.get<std::string>());
    else if (k == "fcm_n_clusters") cfg.fcm.n_clusters = v.get<int>();
    else if (k == "fcm_fuzziness") cfg.fcm.fuzziness = v.get<Scalar>();
    else if (k == "fcm_epsilon") cfg.fcm.epsilon = v.get<Scalar>();
    else if (k == "fcm_max_iter") cfg.fcm.max_iter = v.get<int>();
    else if (k == "grp_weights")
      cfg.grp.weights = v.get<std::vector<Scalar>>();
    else if (k == "grp_resolution") cfg.grp.resolution = v.get<Scalar>();
    else
      throw ValidationError("config." + k + ": unknown field");
  }
  cfg.validate();
  return cfg;
}

std::string run_config_to_json(const RunConfig& cfg) {
  json j{{"population_size", cfg.population_size},
         {"max_iterations", cfg.max_iterations},
         {"seed", cfg.seed},
         {"theta", cfg.theta},
         {"reference_divisions", cfg.reference_divisions},
         {"algorithm", to_string(cfg.algorithm)},
         {"fcm_n_clusters", cfg.fcm.n_clusters},
         {"fcm_fuzziness", cfg.fcm.fuzziness},
         {"fcm_epsilon", cfg.fcm.epsilon},
         {"fcm_max_iter", cfg.fcm.max_iter},
         {"grp_weights", cfg.grp.weights},
         {"grp_resolution", cfg.grp.resolution}};
  return j.dump(2) + "\n";
}

}  // namespace chpeed
