#ifndef CHPEED_CASEDATA_CASE_IO_HPP
#define CHPEED_CASEDATA_CASE_IO_HPP

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "chpeed/model/units.hpp"

namespace chpeed {

// Loader failure classes; each carries the offending field path or file.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SchemaVersionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr int kCaseSchemaVersion = 1;

// Loads and fully validates a dispatch case from the JSON case-file format
// (docs/case_format.md). Unknown fields are rejected with their path named.
DispatchCase load_case(const std::filesystem::path& path);
DispatchCase parse_case(const std::string& json_text,
                        const std::string& origin = "<string>");

// Inverse of load_case; numerics are preserved to full precision so that
// load(save(x)) == x exactly.
void save_case(const DispatchCase& cs, const std::filesystem::path& path);
std::string case_to_json(const DispatchCase& cs);

// Archive CSV: one header line plus one row per solution, sorted by
// ascending cost. Columns: objectives, loss, residuals, feasible flag, then
// all decision variables.
void save_archive_csv(const DispatchCase& cs,
                      const std::vector<DispatchSolution>& solutions,
                      const std::filesystem::path& path);
std::vector<DispatchSolution> load_archive_csv(
    const DispatchCase& cs, const std::filesystem::path& path);

}  // namespace chpeed

#endif
