#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "trigspline/cli_frontend.hpp"

namespace cli = trigspline::cli;

namespace {

struct RawOptions {
    std::string values;
    std::string format;
};

void add_common(CLI::App* sub, cli::RunConfig& config, RawOptions& raw) {
    sub->add_option("--n", config.N, "Number of grid nodes (odd, >= 3)");
    sub->add_option("--values", raw.values, "Comma-separated node values");
    sub->add_option("--m-max", config.m_max, "Alias index cutoff for every infinite sum");
    sub->add_option("--out", config.output_path, "Output file, '-' for stdout");
    sub->add_option("--format", raw.format, "csv or json");
}

void add_curve_options(CLI::App* sub, cli::RunConfig& config) {
    sub->add_option("--r", config.r, "Spline / B-spline order");
    sub->add_option("--j", config.j, "Kernel / convolution index j >= 1");
    sub->add_option("--variant", config.variant, "Curve variant");
    sub->add_flag("--starred", config.starred, "Use the starred (BR*, KR*) construction");
    sub->add_option("--samples", config.sample_count, "Number of output points on [0, 2pi)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Trigonometric Riemann B-splines, kernels and interpolation splines"};
    app.require_subcommand(1);

    cli::RunConfig config;
    RawOptions raw;

    auto* coeffs = app.add_subcommand("coeffs", "Discrete Fourier coefficients of the samples (JSON)");
    auto* curve = app.add_subcommand("curve", "Sample any curve: spline, br, br-star, kr0, kr1, kr0-star, kr1-star, st0, st1, st0-star, st1-star");
    auto* bspline = app.add_subcommand("bspline", "Sample the B-spline BR(r) or BR*(r)");
    auto* kernel = app.add_subcommand("kernel", "Sample a Riemann kernel KR0, KR1 or a starred kernel");
    auto* convolve = app.add_subcommand("convolve", "Sample a kernel * B-spline convolution spline (even | odd)");
    auto* verify = app.add_subcommand("verify", "Run the identity checks and write a JSON report");
    auto* figures = app.add_subcommand("figures", "Write the CSV data behind figures 1-6");

    for (auto* sub : {coeffs, curve, bspline, kernel, convolve, verify, figures}) {
        add_common(sub, config, raw);
    }
    for (auto* sub : {curve, bspline, kernel, convolve, figures}) {
        add_curve_options(sub, config);
    }
    verify->add_option("--suite", config.suite,
                       "all, interpolation, convolution, quadrature, sigma, box, bspline, cubic, structure");
    verify->add_option("--debug-perturb-h", config.perturb_h, "Scale H_1 by (1 + value) in the interpolation checks");

    CLI11_PARSE(app, argc, argv);

    try {
        if (!raw.values.empty()) {
            config.values = cli::parse_values(raw.values);
        }
        const bool json_default = coeffs->parsed() || verify->parsed();
        config.format = cli::parse_format(raw.format.empty() ? (json_default ? "json" : "csv") : raw.format);

        if (figures->parsed()) {
            const std::string dir = config.output_path == "-" ? "figures" : config.output_path;
            const auto written = cli::cmd_figures(config, dir, std::cerr);
            for (const auto& path : written) {
                std::cout << path.string() << '\n';
            }
            return 0;
        }

        std::ofstream file;
        std::ostream* out = &std::cout;
        if (config.output_path != "-") {
            file.open(config.output_path, std::ios::binary);
            if (!file) {
                std::cerr << "error: --out: cannot open " << config.output_path << '\n';
                return 2;
            }
            out = &file;
        }

        if (coeffs->parsed()) return cli::cmd_coeffs(config, *out);
        if (verify->parsed()) return cli::cmd_verify(config, *out);
        for (auto* sub : {curve, bspline, kernel, convolve}) {
            if (sub->parsed()) return cli::cmd_curve(sub->get_name(), config, *out, std::cerr);
        }
    } catch (const cli::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
