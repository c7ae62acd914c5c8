#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace trigspline {

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Uniform periodic grid of N = 2n+1 nodes t_i = 2*pi*i/N on [0, 2*pi).
struct GridSpec {
    int N = 0;
    int n = 0;
    std::vector<double> nodes;
    double h = 0.0;       ///< node spacing 2*pi/N
    double lambda = 0.0;  ///< half spacing pi/N
};

/// Function values at the grid nodes, in node order.
struct SampleSet {
    std::vector<double> values;
};

/// Coefficients of the interpolating trigonometric polynomial
/// a0/2 + sum_{k=1}^{n} (a_k cos kt + b_k sin kt). a[k-1] holds a_k.
struct HarmonicCoeffs {
    double a0 = 0.0;
    std::vector<double> a;
    std::vector<double> b;
};

struct SeriesTerm {
    std::int64_t frequency = 0;
    double cos_coeff = 0.0;
    double sin_coeff = 0.0;
};

/// Truncated real Fourier series
///   constant + sum_J (c_J cos Jt + s_J sin Jt)
/// with strictly increasing positive frequencies. The constant is stored
/// already halved (a0/2 convention folded in).
class FourierSeries {
public:
    FourierSeries() = default;

    /// Sorts terms by frequency, merges duplicates and drops exact zeros.
    /// Throws std::invalid_argument on non-positive frequencies.
    FourierSeries(double constant, std::vector<SeriesTerm> terms, int m_max = 0,
                  std::optional<double> tail_estimate = std::nullopt);

    [[nodiscard]] double constant() const { return constant_; }
    [[nodiscard]] std::span<const SeriesTerm> terms() const { return terms_; }
    [[nodiscard]] int m_max() const { return m_max_; }

    /// Upper bound on the summed magnitude of discarded coefficients;
    /// nullopt when no absolute bound exists (order-0 components).
    [[nodiscard]] std::optional<double> tail_estimate() const { return tail_estimate_; }
    [[nodiscard]] bool tail_bounded() const { return tail_estimate_.has_value(); }

    [[nodiscard]] std::int64_t max_frequency() const {
        return terms_.empty() ? 0 : terms_.back().frequency;
    }

    /// Term at frequency J, or nullopt when J is not in the support.
    [[nodiscard]] std::optional<SeriesTerm> term_at(std::int64_t frequency) const;

    void set_tail_estimate(std::optional<double> tail) { tail_estimate_ = tail; }

private:
    double constant_ = 0.0;
    std::vector<SeriesTerm> terms_;
    int m_max_ = 0;
    std::optional<double> tail_estimate_;
};

/// Alias-index cutoff for every infinite sum over m; sums run m = 1..m_max.
struct TruncationPolicy {
    int m_max = 2048;
    double tail_tol = 0.0;  ///< 0 disables the tolerance check

    TruncationPolicy() = default;
    explicit TruncationPolicy(int m_max_in, double tail_tol_in = 0.0);
};

/// True when the series carries a finite tail bound not exceeding
/// policy.tail_tol, or when the policy requests no tolerance.
[[nodiscard]] bool within_tolerance(const FourierSeries& series, const TruncationPolicy& policy);

[[nodiscard]] GridSpec make_grid(int N);

[[nodiscard]] HarmonicCoeffs dft_coeffs(const GridSpec& grid, const SampleSet& samples);

[[nodiscard]] double eval_trig_poly(const HarmonicCoeffs& coeffs, double t);

/// Riemann convergence factor (sin(J*pi/N)/J)^(1+r) with the signed sine.
/// Exactly zero when N divides J. Throws for J < 1 or r < 0.
[[nodiscard]] double sigma(int r, const GridSpec& grid, std::int64_t J);

/// Reduces an angle into [0, 2*pi).
[[nodiscard]] double wrap_angle(double t);

[[nodiscard]] double eval_series(const FourierSeries& series, double t);

/// Evaluates at every point; the point set is split across hardware threads.
[[nodiscard]] std::vector<double> eval_series_many(const FourierSeries& series,
                                                   std::span<const double> ts);

/// sample_count points 2*pi*i/sample_count, i = 0..sample_count-1.
[[nodiscard]] std::vector<double> uniform_points(int sample_count);

}  // namespace trigspline
