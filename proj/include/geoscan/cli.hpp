#ifndef GEOSCAN_CLI_HPP_
#define GEOSCAN_CLI_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "geoscan/normalsurface.hpp"

namespace geoscan {

/// Exit codes of the command-line tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitNegative = 1,
    kExitInput = 2,
    kExitIncomplete = 3,
    kExitInconsistent = 4,
};

struct RunConfig {
    double threshold_im = 0.01;
    double surface_timeout_s = 5000;
    std::optional<int> euler_bound_override;
    int num_points = 10000;
    int max_word = 2000;
    std::uint64_t seed = 1;
    int threads = 1;
    bool strict = false;
    /// Require exact shape data and certified realness.
    bool exact = false;
    /// Where SVG, CSV and report files go; empty means stdout only.
    std::string out_dir;
};

const char* tool_version();

/// --threads if given, else GEOSCAN_THREADS, else the hardware concurrency.
int resolve_threads(std::optional<int> flag);

/// Either a JSON array / {"coordinates": [...]} or integers separated by
/// commas or whitespace. A single run of digits is read one digit per entry.
NormalCoordinates parse_coordinates(std::string_view text);

/// Each command prints a JSON report on `out`, diagnostics on `err`, and
/// returns an ExitCode.
int cmd_validate(const std::string& tri_file, const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_check(const std::string& tri_file, const std::string& surface_file, const RunConfig& config, std::ostream& out,
              std::ostream& err);
int cmd_scan(const std::string& tri_file, const RunConfig& config, std::ostream& out, std::ostream& err);
/// `file` is a generator set, or a triangulation when `surface_file` is given.
int cmd_limitset(const std::string& file, const std::optional<std::string>& surface_file, const RunConfig& config,
                 std::ostream& out, std::ostream& err);

}  // namespace geoscan

#endif  // GEOSCAN_CLI_HPP_
