#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "trigspline/series_core.hpp"
#include "trigspline/verification.hpp"

namespace trigspline::cli {

/// Sample set used by the figures: N = 9 nodes.
inline const std::vector<double> kDefaultValues{2, 1, 3, 2, 4, 1, 3, 1, 3};

enum class OutputFormat { csv, json };

/// Invalid command-line configuration; the message names the offending flag.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    int N = 9;
    std::vector<double> values = kDefaultValues;
    int r = 3;
    int j = 1;
    std::string variant;  ///< empty selects the subcommand's default
    bool starred = false;
    int m_max = 2048;
    int sample_count = 512;
    std::string output_path = "-";
    OutputFormat format = OutputFormat::csv;
    std::string suite = "all";
    double perturb_h = 0.0;
};

/// Parses "1,2.5,3" into numbers; throws ConfigError naming --values.
[[nodiscard]] std::vector<double> parse_values(const std::string& text);

[[nodiscard]] OutputFormat parse_format(const std::string& text);

/// Checks every field against the preconditions of the library calls.
void validate(const RunConfig& config);

/// Resolves subcommand + --variant + --starred to a canonical curve name:
/// spline, br, br-star, kr0, kr1, kr0-star, kr1-star, st0, st1, st0-star, st1-star.
[[nodiscard]] std::string resolve_curve(const std::string& subcommand, const RunConfig& config);

/// Builds the series for a canonical curve name. Notes about conditionally
/// convergent choices go to `warnings`.
[[nodiscard]] FourierSeries build_curve(const std::string& curve, const RunConfig& config, std::ostream& warnings);

void write_curve_csv(std::ostream& out, std::span<const double> ts, std::span<const double> values);
void write_curve_json(std::ostream& out, std::span<const double> ts, std::span<const double> values);
void write_report_json(std::ostream& out, const VerificationReport& report);

/// Each command writes its artifact to `out` and returns the process exit code.
int cmd_coeffs(const RunConfig& config, std::ostream& out);
int cmd_curve(const std::string& subcommand, const RunConfig& config, std::ostream& out, std::ostream& warnings);
int cmd_verify(const RunConfig& config, std::ostream& out);

/// Writes the CSV files behind figures 1-6 into `directory`; each figure-4
/// spline also gets a *_nodes.csv with its values at the grid nodes.
/// Returns the written paths.
std::vector<std::filesystem::path> cmd_figures(const RunConfig& config, const std::filesystem::path& directory,
                                               std::ostream& warnings);

}  // namespace trigspline::cli
