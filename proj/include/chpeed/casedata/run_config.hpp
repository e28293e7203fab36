#ifndef CHPEED_CASEDATA_RUN_CONFIG_HPP
#define CHPEED_CASEDATA_RUN_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "chpeed/types.hpp"

namespace chpeed {

enum class Algorithm { kThetaDea, kNsga2 };

std::string to_string(Algorithm a);
Algorithm algorithm_from_string(const std::string& s);

struct FcmConfig {
  int n_clusters = 2;
  Scalar fuzziness = 2.0;  // m > 1
  Scalar epsilon = 1e-6;
  int max_iter = 300;
};

struct GrpConfig {
  std::vector<Scalar> weights = {0.5, 0.5};  // r_i per objective
  Scalar resolution = 0.5;                   // rho of the Deng coefficient
};

struct RunConfig {
  int population_size = 100;
  int max_iterations = 100;
  std::uint64_t seed = 1;
  Scalar theta = 5.0;
  // Simplex-lattice density; <= 0 means population_size - 1 (two objectives).
  int reference_divisions = 0;
  FcmConfig fcm;
  GrpConfig grp;
  Algorithm algorithm = Algorithm::kThetaDea;

  int effective_divisions() const {
    return reference_divisions > 0 ? reference_divisions
                                   : population_size - 1;
  }
  void validate() const;  // throws ValidationError naming the field
};

RunConfig load_run_config(const std::filesystem::path& path);
std::string run_config_to_json(const RunConfig& cfg);

}  // namespace chpeed

#endif
