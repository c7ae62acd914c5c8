#include "trigspline/reference_oracles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace trigspline {

namespace {

void require_degree(int degree, const char* where) {
    if (degree < 0 || degree > kMaxOracleDegree) {
        throw std::invalid_argument(std::string(where) + ": degree must be in [0, " +
                                    std::to_string(kMaxOracleDegree) + "], got " + std::to_string(degree));
    }
}

double bspline_recurrence(int degree, double x) {
    const double half_width = 0.5 * (degree + 1);
    if (std::abs(x) > half_width) {
        return 0.0;
    }
    if (degree == 0) {
        return std::abs(x) == 0.5 ? 0.5 : 1.0;
    }
    return ((x + half_width) * bspline_recurrence(degree - 1, x + 0.5) +
            (half_width - x) * bspline_recurrence(degree - 1, x - 0.5)) /
           degree;
}

}  // namespace

double cardinal_bspline(int degree, double x) {
    require_degree(degree, "cardinal_bspline");
    return bspline_recurrence(degree, x);
}

double periodized_bspline(int degree, const GridSpec& grid, double t) {
    require_degree(degree, "periodized_bspline");
    const double density = grid.N / kTwoPi;
    double centered = wrap_angle(t);
    if (centered >= kPi) {
        centered -= kTwoPi;
    }
    const double half_width = 0.5 * (degree + 1);
    const int periods = static_cast<int>(std::ceil(half_width / grid.N)) + 1;
    double value = 0.0;
    for (int p = -periods; p <= periods; ++p) {
        value += cardinal_bspline(degree, (centered - kTwoPi * p) * density);
    }
    return value * density;
}

std::vector<double> solve_cyclic_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                                             std::span<const double> upper, std::span<const double> rhs) {
    const std::size_t n = diag.size();
    if (n < 3 || lower.size() != n || upper.size() != n || rhs.size() != n) {
        throw std::invalid_argument("solve_cyclic_tridiagonal: need n >= 3 and equal lengths");
    }
    // Corner entries: A[0][n-1] = lower[0], A[n-1][0] = upper[n-1].
    const double alpha = upper[n - 1];
    const double beta = lower[0];
    const double gamma = -diag[0];

    std::vector<double> b(diag.begin(), diag.end());
    b[0] -= gamma;
    b[n - 1] -= alpha * beta / gamma;

    auto thomas = [&](std::span<const double> r) {
        std::vector<double> c_prime(n);
        std::vector<double> x(n);
        double pivot = b[0];
        if (std::abs(pivot) < 1e-300) {
            throw std::runtime_error("solve_cyclic_tridiagonal: singular system");
        }
        x[0] = r[0] / pivot;
        for (std::size_t i = 1; i < n; ++i) {
            c_prime[i] = upper[i - 1] / pivot;
            pivot = b[i] - lower[i] * c_prime[i];
            if (std::abs(pivot) < 1e-300) {
                throw std::runtime_error("solve_cyclic_tridiagonal: singular system");
            }
            x[i] = (r[i] - lower[i] * x[i - 1]) / pivot;
        }
        for (std::size_t i = n - 1; i-- > 0;) {
            x[i] -= c_prime[i + 1] * x[i + 1];
        }
        return x;
    };

    const std::vector<double> x = thomas(rhs);
    std::vector<double> u(n, 0.0);
    u[0] = gamma;
    u[n - 1] = alpha;
    const std::vector<double> z = thomas(u);

    const double denom = 1.0 + z[0] + beta * z[n - 1] / gamma;
    if (std::abs(denom) < 1e-300) {
        throw std::runtime_error("solve_cyclic_tridiagonal: singular system");
    }
    const double fact = (x[0] + beta * x[n - 1] / gamma) / denom;
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = x[i] - fact * z[i];
    }
    return out;
}

PeriodicCubicSpline::PeriodicCubicSpline(const GridSpec& grid, const SampleSet& samples)
    : h_(grid.h), values_(samples.values) {
    const std::size_t n = static_cast<std::size_t>(grid.N);
    if (grid.N < 3) {
        throw std::invalid_argument("PeriodicCubicSpline: N must be >= 3");
    }
    if (values_.size() != n) {
        throw std::invalid_argument("PeriodicCubicSpline: expected " + std::to_string(n) + " samples, got " +
                                    std::to_string(values_.size()));
    }
    // M[i-1] + 4 M[i] + M[i+1] = 6/h^2 (f[i+1] - 2 f[i] + f[i-1])
    const std::vector<double> ones(n, 1.0);
    const std::vector<double> fours(n, 4.0);
    std::vector<double> rhs(n);
    const double scale = 6.0 / (h_ * h_);
    for (std::size_t i = 0; i < n; ++i) {
        rhs[i] = scale * (values_[(i + 1) % n] - 2.0 * values_[i] + values_[(i + n - 1) % n]);
    }
    moments_ = solve_cyclic_tridiagonal(ones, fours, ones, rhs);
}

double PeriodicCubicSpline::operator()(double t) const {
    const std::size_t n = values_.size();
    const double tw = wrap_angle(t);
    std::size_t i = std::min(static_cast<std::size_t>(tw / h_), n - 1);
    const std::size_t next = (i + 1) % n;
    const double x = tw - static_cast<double>(i) * h_;
    const double y = h_ - x;
    const double mi = moments_[i];
    const double mj = moments_[next];
    return (mi * y * y * y + mj * x * x * x) / (6.0 * h_) + (values_[i] - mi * h_ * h_ / 6.0) * y / h_ +
           (values_[next] - mj * h_ * h_ / 6.0) * x / h_;
}

double periodic_cubic_interp(const GridSpec& grid, const SampleSet& samples, double t) {
    return PeriodicCubicSpline(grid, samples)(t);
}

AffineFit affine_fit(std::span<const double> reference, std::span<const double> candidate) {
    if (reference.size() != candidate.size()) {
        throw std::invalid_argument("affine_fit: reference and candidate lengths differ");
    }
    if (reference.size() < 2) {
        throw std::invalid_argument("affine_fit: need at least 2 points");
    }
    const double count = static_cast<double>(reference.size());
    double mean_x = 0.0;
    double mean_y = 0.0;
    for (std::size_t i = 0; i < reference.size(); ++i) {
        mean_x += reference[i];
        mean_y += candidate[i];
    }
    mean_x /= count;
    mean_y /= count;
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < reference.size(); ++i) {
        const double dx = reference[i] - mean_x;
        sxx += dx * dx;
        sxy += dx * (candidate[i] - mean_y);
    }
    if (sxx == 0.0) {
        throw std::invalid_argument("affine_fit: reference is constant");
    }
    AffineFit fit;
    fit.scale = sxy / sxx;
    fit.offset = mean_y - fit.scale * mean_x;
    for (std::size_t i = 0; i < reference.size(); ++i) {
        fit.residual = std::max(fit.residual, std::abs(candidate[i] - (fit.scale * reference[i] + fit.offset)));
    }
    return fit;
}

}  // namespace trigspline
