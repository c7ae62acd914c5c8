#include "trigspline/cli_frontend.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "trigspline/convolution_engine.hpp"
#include "trigspline/spline_builder.hpp"

namespace trigspline::cli {

namespace {

using nlohmann::json;

struct ConvChoice {
    Parity parity;
    bool starred;
};

bool is_conv_curve(const std::string& curve) { return curve.rfind("st", 0) == 0; }

ConvChoice conv_choice(const std::string& curve) {
    return {curve.rfind("st0", 0) == 0 ? Parity::even : Parity::odd, curve.ends_with("-star")};
}

SampleSet samples_of(const RunConfig& config) { return SampleSet{config.values}; }

std::string format_number(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", x);
    return buf;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    }
    file << text;
    if (!file) {
        throw std::runtime_error("failed writing " + path.string());
    }
}

}  // namespace

std::vector<double> parse_values(const std::string& text) {
    std::vector<double> values;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        std::size_t used = 0;
        double value = 0.0;
        try {
            value = std::stod(item, &used);
        } catch (const std::exception&) {
            throw ConfigError("--values: cannot parse '" + item + "' as a number");
        }
        if (item.find_first_not_of(" \t", used) != std::string::npos) {
            throw ConfigError("--values: cannot parse '" + item + "' as a number");
        }
        values.push_back(value);
    }
    if (values.empty()) {
        throw ConfigError("--values: no numbers given");
    }
    return values;
}

OutputFormat parse_format(const std::string& text) {
    if (text == "csv") return OutputFormat::csv;
    if (text == "json") return OutputFormat::json;
    throw ConfigError("--format: expected csv or json, got '" + text + "'");
}

void validate(const RunConfig& config) {
    if (config.N < 3 || config.N % 2 == 0) {
        throw ConfigError("--n: must be an odd integer >= 3, got " + std::to_string(config.N));
    }
    if (config.values.size() != static_cast<std::size_t>(config.N)) {
        throw ConfigError("--values: expected " + std::to_string(config.N) + " values for --n " +
                          std::to_string(config.N) + ", got " + std::to_string(config.values.size()));
    }
    if (config.r < 0) {
        throw ConfigError("--r: must be >= 0, got " + std::to_string(config.r));
    }
    if (config.j < 1) {
        throw ConfigError("--j: must be >= 1, got " + std::to_string(config.j));
    }
    if (config.m_max < 1) {
        throw ConfigError("--m-max: must be >= 1, got " + std::to_string(config.m_max));
    }
    if (config.sample_count < 1) {
        throw ConfigError("--samples: must be >= 1, got " + std::to_string(config.sample_count));
    }
}

std::string resolve_curve(const std::string& subcommand, const RunConfig& config) {
    const std::string star = config.starred ? "-star" : "";
    const std::string& v = config.variant;
    if (subcommand == "bspline") {
        if (v.empty() || v == "br") return "br" + star;
        if (v == "br-star") return v;
    } else if (subcommand == "kernel") {
        if (v.empty() || v == "kr0") return "kr0" + star;
        if (v == "kr1") return "kr1" + star;
        if (v == "kr0-star" || v == "kr1-star") return v;
    } else if (subcommand == "convolve") {
        if (v.empty() || v == "even" || v == "st0") return "st0" + star;
        if (v == "odd" || v == "st1") return "st1" + star;
        if (v == "st0-star" || v == "st1-star") return v;
    } else if (subcommand == "curve") {
        static const char* const kNames[] = {"spline", "br",  "br-star", "kr0",      "kr1",     "kr0-star",
                                             "kr1-star", "st0", "st1",   "st0-star", "st1-star"};
        if (v.empty()) return "spline";
        for (const char* name : kNames) {
            if (v == name) {
                const bool already_starred = v.ends_with("-star");
                return (config.starred && !already_starred && v != "spline") ? v + "-star" : v;
            }
        }
    } else {
        throw ConfigError("unknown subcommand '" + subcommand + "'");
    }
    throw ConfigError("--variant: '" + v + "' is not valid for " + subcommand);
}

FourierSeries build_curve(const std::string& curve, const RunConfig& config, std::ostream& warnings) {
    validate(config);
    const GridSpec grid = make_grid(config.N);
    const HarmonicCoeffs coeffs = dft_coeffs(grid, samples_of(config));
    const TruncationPolicy trunc(config.m_max);

    if (curve == "spline") {
        if (config.r <= 1) {
            warnings << "warning: spline order " << config.r
                     << " does not converge uniformly; expect Gibbs oscillation between nodes\n";
        }
        return build_spline(coeffs, config.r, grid, trunc, Convergence::allow_conditional);
    }
    if (curve == "br" || curve == "br-star") {
        if (config.r == 0) {
            warnings << "warning: order-0 B-spline converges conditionally\n";
        }
        return build_bspline(curve == "br" ? BSplineVariant::br : BSplineVariant::br_star, config.r, grid, trunc);
    }
    if (curve == "kr0") return build_kernel(KernelVariant::kr0, config.j, coeffs, grid, trunc);
    if (curve == "kr1") return build_kernel(KernelVariant::kr1, config.j, coeffs, grid, trunc);
    if (curve == "kr0-star") return build_kernel(KernelVariant::kr0_star, config.j, coeffs, grid, trunc);
    if (curve == "kr1-star") return build_kernel(KernelVariant::kr1_star, config.j, coeffs, grid, trunc);
    if (is_conv_curve(curve)) {
        const auto choice = conv_choice(curve);
        if (choice.parity == Parity::odd && config.j == 1) {
            warnings << "warning: odd convolution spline with j = 1 uses an order-0 B-spline\n";
        }
        return build_conv_spline(choice.parity, config.j, choice.starred, coeffs, grid, trunc,
                                 Convergence::allow_conditional);
    }
    throw ConfigError("--variant: unknown curve '" + curve + "'");
}

void write_curve_csv(std::ostream& out, std::span<const double> ts, std::span<const double> values) {
    std::string text = "t,value\n";
    for (std::size_t i = 0; i < ts.size(); ++i) {
        text += format_number(ts[i]);
        text += ',';
        text += format_number(values[i]);
        text += '\n';
    }
    out << text;
}

void write_curve_json(std::ostream& out, std::span<const double> ts, std::span<const double> values) {
    json doc;
    doc["t"] = std::vector<double>(ts.begin(), ts.end());
    doc["value"] = std::vector<double>(values.begin(), values.end());
    out << doc.dump(2) << '\n';
}

void write_report_json(std::ostream& out, const VerificationReport& report) {
    json checks = json::array();
    for (const auto& check : report.checks()) {
        json meta = json::object();
        for (const auto& [key, value] : check.metadata) {
            meta[key] = value;
        }
        checks.push_back({{"name", check.name},
                          {"deviation", check.deviation},
                          {"tolerance", check.tolerance},
                          {"pass", check.pass},
                          {"metadata", meta}});
    }
    json doc{{"all_pass", report.all_pass()}, {"checks", checks}};
    out << doc.dump(2) << '\n';
}

int cmd_coeffs(const RunConfig& config, std::ostream& out) {
    validate(config);
    if (config.format != OutputFormat::json) {
        throw ConfigError("--format: coeffs only writes json");
    }
    const GridSpec grid = make_grid(config.N);
    const HarmonicCoeffs coeffs = dft_coeffs(grid, samples_of(config));
    json doc{{"N", grid.N}, {"n", grid.n}, {"a0", coeffs.a0}, {"a", coeffs.a}, {"b", coeffs.b}};
    out << doc.dump(2) << '\n';
    return 0;
}

int cmd_curve(const std::string& subcommand, const RunConfig& config, std::ostream& out, std::ostream& warnings) {
    validate(config);
    const FourierSeries series = build_curve(resolve_curve(subcommand, config), config, warnings);
    const auto ts = uniform_points(config.sample_count);
    const auto values = eval_series_many(series, ts);
    if (config.format == OutputFormat::json) {
        write_curve_json(out, ts, values);
    } else {
        write_curve_csv(out, ts, values);
    }
    return 0;
}

int cmd_verify(const RunConfig& config, std::ostream& out) {
    validate(config);
    Suite suite;
    try {
        suite = parse_suite(config.suite);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("--suite: ") + e.what());
    }
    const GridSpec grid = make_grid(config.N);
    const SampleSet samples = samples_of(config);
    VerificationSettings settings;
    settings.multiplier_perturbation = config.perturb_h;
    const VerificationReport report = verify_identities(grid, samples, dft_coeffs(grid, samples), suite, settings);
    write_report_json(out, report);
    return report.all_pass() ? 0 : 1;
}

std::vector<std::filesystem::path> cmd_figures(const RunConfig& config, const std::filesystem::path& directory,
                                               std::ostream& warnings) {
    validate(config);
    std::filesystem::create_directories(directory);
    const GridSpec grid = make_grid(config.N);
    const auto ts = uniform_points(config.sample_count);
    std::vector<std::filesystem::path> written;

    const auto emit = [&](const std::string& stem, const std::string& curve, RunConfig cfg, bool with_nodes) {
        const FourierSeries series = build_curve(curve, cfg, warnings);
        std::ostringstream text;
        write_curve_csv(text, ts, eval_series_many(series, ts));
        written.push_back(directory / (stem + ".csv"));
        write_file(written.back(), text.str());
        if (with_nodes) {
            std::ostringstream nodes;
            write_curve_csv(nodes, grid.nodes, eval_series_many(series, grid.nodes));
            written.push_back(directory / (stem + "_nodes.csv"));
            write_file(written.back(), nodes.str());
        }
    };

    RunConfig cfg = config;
    cfg.variant.clear();
    cfg.starred = false;
    for (int r : {0, 1, 2}) {
        cfg.r = r;
        emit("fig1_br_r" + std::to_string(r), "br", cfg, false);
    }
    for (int j : {1, 2, 3}) {
        cfg.j = j;
        emit("fig2_kr0_j" + std::to_string(j), "kr0", cfg, false);
    }
    for (int j : {1, 2, 3}) {
        cfg.j = j;
        emit("fig3_kr1_j" + std::to_string(j), "kr1", cfg, false);
    }
    for (int j : {1, 2, 3}) {
        cfg.j = j;
        emit("fig4_st0_j" + std::to_string(j), "st0", cfg, true);
        emit("fig4_st1_j" + std::to_string(j), "st1", cfg, true);
    }
    for (int r : {0, 1, 2}) {
        cfg.r = r;
        emit("fig5_brstar_r" + std::to_string(r), "br-star", cfg, false);
    }
    emit("fig6_kr0star", "kr0-star", cfg, false);
    emit("fig6_kr1star", "kr1-star", cfg, false);
    return written;
}

}  // namespace trigspline::cli
