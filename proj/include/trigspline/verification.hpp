#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "trigspline/series_core.hpp"

namespace trigspline {

struct CheckResult {
    std::string name;
    double deviation = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::map<std::string, double> metadata;
};

/// Ordered list of identity checks; pass is always deviation <= tolerance.
class VerificationReport {
public:
    void add(std::string name, double deviation, double tolerance, std::map<std::string, double> metadata = {});

    [[nodiscard]] const std::vector<CheckResult>& checks() const { return checks_; }
    [[nodiscard]] bool all_pass() const;
    [[nodiscard]] const CheckResult* find(std::string_view name) const;

private:
    std::vector<CheckResult> checks_;
};

/// Check groups, one per acceptance criterion A1..A8.
enum class Suite {
    interpolation,  // A1
    convolution,    // A2
    quadrature,     // A3
    sigma,          // A4
    box,            // A5
    bspline,        // A6
    cubic,          // A7
    structure,      // A8
    all,
};

[[nodiscard]] Suite parse_suite(std::string_view name);
[[nodiscard]] std::string_view suite_name(Suite suite);

/// Truncation depths per check group, and a debugging knob that scales the
/// interpolation multiplier H_1 of the A1 splines by (1 + multiplier_perturbation).
struct VerificationSettings {
    int interpolation_m_max = 2048;
    int convolution_m_max = 4096;
    int quadrature_m_max = 8;
    int quadrature_panels = 4096;
    int box_m_max = 100000;
    int bspline_m_max = 100000;
    int cubic_m_max = 2048;
    int structure_m_max = 256;
    double multiplier_perturbation = 0.0;
};

/// Runs the selected check group on the given data. The coefficients are
/// taken as given (they are not recomputed from the samples), so a corrupted
/// coefficient set shows up as failed interpolation checks.
[[nodiscard]] VerificationReport verify_identities(const GridSpec& grid, const SampleSet& samples,
                                                   const HarmonicCoeffs& coeffs, Suite suite,
                                                   const VerificationSettings& settings = {});

}  // namespace trigspline
