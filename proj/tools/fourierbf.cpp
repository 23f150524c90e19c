// Command-line front end: parameter optimization, lookup-table management,
// filtering, and brute-vs-fast comparison.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fourierbf/approx.hpp"
#include "fourierbf/filter.hpp"
#include "fourierbf/imageio.hpp"
#include "fourierbf/kernels.hpp"
#include "fourierbf/lut.hpp"
#include "fourierbf/metrics.hpp"
#include "fourierbf/synthetic.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

struct GlobalOptions {
    std::string border = "symmetric";
    int threads = 1;
    uint64_t seed = 1;

    fbf::BorderPolicy border_policy() const {
        if (border == "symmetric")
            return fbf::BorderPolicy::symmetric;
        if (border == "replicate")
            return fbf::BorderPolicy::replicate;
        return fbf::BorderPolicy::zero;
    }
};

// "gaussian" | "exponential" | "cauchy" need --sigma; "table:<path>" carries
// its own lattice.
fbf::RangeKernelSamples make_range_kernel(const std::string& kind, double sigma,
                                          int dynamic_range) {
    if (kind.rfind("table:", 0) == 0) {
        const auto values = fbf::read_kernel_table(kind.substr(6));
        return fbf::sample_range_kernel(fbf::RangeKernelSpec::tabulated(values));
    }
    if (kind == "gaussian")
        return fbf::sample_range_kernel(fbf::RangeKernelSpec::gaussian(sigma, dynamic_range));
    if (kind == "exponential")
        return fbf::sample_range_kernel(
            fbf::RangeKernelSpec::exponential(sigma, dynamic_range));
    if (kind == "cauchy")
        return fbf::sample_range_kernel(fbf::RangeKernelSpec::cauchy(sigma, dynamic_range));
    throw CLI::ValidationError("--kernel", "unknown kernel kind '" + kind + "'");
}

// image sources: a PGM path or "synth:WxH" (deterministic scene from --seed)
fbf::GrayImage load_image(const std::string& source, uint64_t seed) {
    if (source.rfind("synth:", 0) == 0) {
        const std::string dims = source.substr(6);
        const size_t x = dims.find('x');
        if (x == std::string::npos)
            throw CLI::ValidationError("--in", "synth spec must look like synth:320x240");
        const int w = std::stoi(dims.substr(0, x));
        const int h = std::stoi(dims.substr(x + 1));
        return fbf::scene_image(w, h, seed);
    }
    return fbf::read_pgm(source);
}

void write_clamped(const fbf::GrayImage& img, const std::string& path) {
    fbf::GrayImage clamped = img;
    for (double& p : clamped.pixels)
        p = std::min(255.0, std::max(0.0, p));
    fbf::write_pgm(clamped, path);
}

// ---- optimize ---------------------------------------------------------------

struct OptimizeArgs {
    double sigma = 0.0;
    double eps = 0.0;
    int range = 255;
    int t_max = 0;
    int k_max = 0;
    std::string kernel = "gaussian";
    std::string surface_csv;
};

int run_optimize(const OptimizeArgs& args, const GlobalOptions& global) {
    const auto samples = make_range_kernel(args.kernel, args.sigma, args.range);

    fbf::OptimizeOptions opt;
    opt.t_max = args.t_max;
    opt.k_max = args.k_max;
    opt.threads = global.threads;
    opt.record_surface = !args.surface_csv.empty();

    const auto t0 = Clock::now();
    fbf::OptimizationReport report;
    bool reached = true;
    try {
        report = fbf::optimize_parameters(samples, args.eps, opt);
    } catch (const fbf::ToleranceUnreachable& e) {
        std::cerr << "error: " << e.what() << "\n";
        report = e.best_found;
        reached = false;
    }
    std::cerr << "timing: fit " << ms_since(t0) << " ms\n";

    std::cout << report.to_text();
    const auto errors = fbf::scan_period_errors(report.best_terms, samples, report.t_max,
                                                global.threads);
    std::cout << "local minima along T at K=" << report.best_terms << ": "
              << fbf::count_local_minima(errors) << "\n";

    if (!args.surface_csv.empty()) {
        std::ofstream out(args.surface_csv, std::ios::binary);
        if (!out)
            throw std::runtime_error("cannot open " + args.surface_csv);
        out << fbf::surface_to_csv(report.surface);
    }
    return reached ? 0 : 1;
}

// ---- build-lut / query-lut --------------------------------------------------

struct BuildLutArgs {
    std::vector<double> sigmas;
    std::vector<double> epsilons;
    int range = 255;
    int t_max = 0;
    std::string out;
};

int run_build_lut(const BuildLutArgs& args, const GlobalOptions& global) {
    const auto t0 = Clock::now();
    const auto table =
        fbf::build_lut(args.sigmas, args.epsilons, args.range, args.t_max, global.threads);
    std::cerr << "timing: build " << ms_since(t0) << " ms\n";
    fbf::save_lut(table, args.out);
    std::cout << "wrote " << table.rows() << "x" << table.cols() << " table to " << args.out
              << "\n";
    const auto violations = fbf::check_monotone_trends(table);
    std::cout << "trend check: " << violations.size()
              << " deviation(s) from the monotone K*/T* trend\n";
    for (const auto& v : violations)
        std::cout << "  " << v.axis << " at sigma-row " << v.row << ", eps-col " << v.col
                  << ": " << v.detail << "\n";
    return 0;
}

struct QueryLutArgs {
    std::string lut;
    double sigma = 0.0;
    double eps = 0.0;
};

int run_query_lut(const QueryLutArgs& args) {
    const auto table = fbf::load_lut(args.lut);
    const auto q = fbf::query_lut(table, args.sigma, args.eps);
    std::cout << "K = " << q.terms << "\nT = " << q.half_period << "\n";
    return 0;
}

// ---- filter -----------------------------------------------------------------

struct FilterArgs {
    std::string in, out;
    double theta = 0.0;
    double sigma = 0.0;
    std::optional<double> eps;
    std::optional<int> terms;       // --K
    std::optional<int> half_period; // --T
    std::string method = "fast";
    std::string lut;
    std::string kernel = "gaussian";
    int range = 255;
};

fbf::FourierApproximation select_parameters(const FilterArgs& args,
                                            const fbf::RangeKernelSamples& samples,
                                            const GlobalOptions& global) {
    const int R = samples.dynamic_range;
    if (args.eps && (args.terms || args.half_period))
        throw CLI::ValidationError("--eps", "--eps and --K/--T are mutually exclusive");

    if (args.method == "fbf") {
        // fixed-period baseline: T = R, order given directly or matched via
        // the tolerance
        int K = 0;
        if (args.terms) {
            K = *args.terms;
        } else if (args.eps) {
            fbf::OptimizeOptions opt;
            opt.threads = global.threads;
            K = fbf::optimize_parameters(samples, *args.eps, opt).best_terms;
        } else {
            throw CLI::ValidationError("--method", "fbf needs --K or --eps");
        }
        return fbf::fit_fixed_period(samples, K, R);
    }

    if (args.terms) {
        // explicit order; the period is given or chosen by the scan
        const int T = args.half_period
                          ? *args.half_period
                          : fbf::min_error_over_period(*args.terms, samples, 10 * R,
                                                       global.threads)
                                .best_half_period;
        return fbf::fit_fixed_period(samples, *args.terms, T);
    }
    if (args.half_period)
        throw CLI::ValidationError("--T", "--T needs --K");
    if (!args.eps)
        throw CLI::ValidationError("--eps", "need --eps or --K");

    if (!args.lut.empty()) {
        const auto table = fbf::load_lut(args.lut);
        if (table.dynamic_range != R)
            throw std::runtime_error("LUT was built for R=" +
                                     std::to_string(table.dynamic_range));
        const auto q = fbf::query_lut(table, args.sigma, *args.eps);
        return fbf::fit_fixed_period(samples, q.terms, q.half_period);
    }

    fbf::OptimizeOptions opt;
    opt.threads = global.threads;
    return fbf::optimize_parameters(samples, *args.eps, opt).approximation(R);
}

int run_filter(const FilterArgs& args, const GlobalOptions& global) {
    const auto img = load_image(args.in, global.seed);
    const auto spatial = fbf::build_spatial_kernel(args.theta);
    const auto samples = make_range_kernel(args.kernel, args.sigma, args.range);
    const auto border = global.border_policy();

    fbf::GrayImage result;
    fbf::FilterDiagnostics diag;
    if (args.method == "brute") {
        const auto t0 = Clock::now();
        result = fbf::brute_bilateral(img, spatial, samples, border, &diag, global.threads);
        std::cerr << "timing: brute filter " << ms_since(t0) << " ms\n";
    } else {
        const auto t_fit = Clock::now();
        const auto approx = select_parameters(args, samples, global);
        const double fit_ms = ms_since(t_fit);
        std::cerr << "params: K=" << approx.terms << " T=" << approx.half_period
                  << " kernel_error=" << fbf::kernel_error(samples, approx) << "\n";

        fbf::StageTimings stages;
        result = fbf::fast_bilateral(img, spatial, approx, border, &diag, global.threads,
                                     &stages);
        std::cerr << "timing: fit " << fit_ms << " ms, auxiliary "
                  << stages.auxiliary_seconds * 1e3 << " ms, convolutions "
                  << stages.convolution_seconds * 1e3 << " ms, combine "
                  << stages.combine_seconds * 1e3 << " ms\n";
    }
    if (diag.fallback_pixels > 0)
        std::cerr << "note: " << diag.fallback_pixels
                  << " pixel(s) fell back to their input value\n";

    write_clamped(result, args.out);
    std::cout << "wrote " << args.out << "\n";
    return 0;
}

// ---- compare ----------------------------------------------------------------

struct CompareArgs {
    std::string in;
    double theta = 0.0;
    double sigma = 0.0;
    double eps = 0.0;
    std::string report_csv;
    std::string kernel = "gaussian";
    int range = 255;
};

int run_compare(const CompareArgs& args, const GlobalOptions& global) {
    const auto img = load_image(args.in, global.seed);
    const auto spatial = fbf::build_spatial_kernel(args.theta);
    const auto samples = make_range_kernel(args.kernel, args.sigma, args.range);
    const auto border = global.border_policy();

    fbf::OptimizeOptions opt;
    opt.threads = global.threads;
    const auto report = fbf::optimize_parameters(samples, args.eps, opt);
    const auto approx = report.approximation(samples.dynamic_range);
    const double achieved = fbf::kernel_error(samples, approx);
    std::cerr << "params: K=" << report.best_terms << " T=" << report.best_half_period
              << " kernel_error=" << achieved << "\n";

    const auto t0 = Clock::now();
    const auto brute = fbf::brute_bilateral(img, spatial, samples, border, nullptr,
                                            global.threads);
    const double brute_ms = ms_since(t0);
    const auto t1 = Clock::now();
    const auto fast = fbf::fast_bilateral(img, spatial, approx, border, nullptr,
                                          global.threads);
    std::cerr << "timing: brute " << brute_ms << " ms, fast " << ms_since(t1) << " ms\n";

    const auto cmp =
        fbf::compare_with_bound(brute, fast, achieved, samples.dynamic_range, 1.0);
    const std::string csv = fbf::ComparisonResult::csv_header() + "\n" + cmp.to_csv() + "\n";
    std::cout << csv;
    if (!args.report_csv.empty()) {
        std::ofstream out(args.report_csv, std::ios::binary);
        if (!out)
            throw std::runtime_error("cannot open " + args.report_csv);
        out << csv;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bilateral filtering via optimized Fourier range-kernel approximation"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions global;
    app.add_option("--border", global.border, "border policy")
        ->check(CLI::IsMember({"symmetric", "replicate", "zero"}))
        ->capture_default_str();
    app.add_option("--threads", global.threads, "worker thread cap")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--seed", global.seed, "seed for synthetic images")
        ->capture_default_str();

    OptimizeArgs opt_args;
    auto* opt_cmd = app.add_subcommand("optimize", "find the smallest order meeting a tolerance");
    opt_cmd->add_option("--sigma", opt_args.sigma, "range kernel width");
    opt_cmd->add_option("--eps", opt_args.eps, "kernel error tolerance")->required();
    opt_cmd->add_option("--range", opt_args.range, "dynamic range R")->capture_default_str();
    opt_cmd->add_option("--tmax", opt_args.t_max, "period scan limit (default 10R)");
    opt_cmd->add_option("--kmax", opt_args.k_max, "order limit (default 2R+1)");
    opt_cmd->add_option("--kernel", opt_args.kernel,
                        "gaussian|exponential|cauchy|table:<path>")
        ->capture_default_str();
    opt_cmd->add_option("--dump-surface", opt_args.surface_csv, "write the (K,T,E) surface CSV");

    BuildLutArgs build_args;
    auto* build_cmd = app.add_subcommand("build-lut", "tabulate optimal (K*,T*) over a grid");
    build_cmd->add_option("--sigmas", build_args.sigmas, "sigma grid (comma separated)")
        ->required()
        ->delimiter(',');
    build_cmd->add_option("--epsilons", build_args.epsilons, "eps grid (comma separated)")
        ->required()
        ->delimiter(',');
    build_cmd->add_option("--range", build_args.range, "dynamic range R")->capture_default_str();
    build_cmd->add_option("--tmax", build_args.t_max, "period scan limit (default 10R)");
    build_cmd->add_option("--out", build_args.out, "output table path")->required();

    QueryLutArgs query_args;
    auto* query_cmd = app.add_subcommand("query-lut", "interpolate (K,T) from a table");
    query_cmd->add_option("--lut", query_args.lut, "table path")->required();
    query_cmd->add_option("--sigma", query_args.sigma, "range kernel width")->required();
    query_cmd->add_option("--eps", query_args.eps, "kernel error tolerance")->required();

    FilterArgs filter_args;
    auto* filter_cmd = app.add_subcommand("filter", "bilateral-filter an image");
    filter_cmd->add_option("--in", filter_args.in, "input PGM or synth:WxH")->required();
    filter_cmd->add_option("--out", filter_args.out, "output PGM")->required();
    filter_cmd->add_option("--theta", filter_args.theta, "spatial kernel width")->required();
    filter_cmd->add_option("--sigma", filter_args.sigma, "range kernel width");
    filter_cmd->add_option("--eps", filter_args.eps, "kernel error tolerance");
    filter_cmd->add_option("--K", filter_args.terms, "order override");
    filter_cmd->add_option("--T", filter_args.half_period, "period override");
    filter_cmd->add_option("--method", filter_args.method, "fast|brute|fbf")
        ->check(CLI::IsMember({"fast", "brute", "fbf"}))
        ->capture_default_str();
    filter_cmd->add_option("--lut", filter_args.lut, "lookup table for (K,T) selection");
    filter_cmd->add_option("--kernel", filter_args.kernel,
                           "gaussian|exponential|cauchy|table:<path>")
        ->capture_default_str();
    filter_cmd->add_option("--range", filter_args.range, "dynamic range R")
        ->capture_default_str();

    CompareArgs cmp_args;
    auto* cmp_cmd = app.add_subcommand("compare", "run brute and fast, report the error");
    cmp_cmd->add_option("--in", cmp_args.in, "input PGM or synth:WxH")->required();
    cmp_cmd->add_option("--theta", cmp_args.theta, "spatial kernel width")->required();
    cmp_cmd->add_option("--sigma", cmp_args.sigma, "range kernel width")->required();
    cmp_cmd->add_option("--eps", cmp_args.eps, "kernel error tolerance")->required();
    cmp_cmd->add_option("--report", cmp_args.report_csv, "also write the CSV here");
    cmp_cmd->add_option("--kernel", cmp_args.kernel,
                        "gaussian|exponential|cauchy|table:<path>")
        ->capture_default_str();
    cmp_cmd->add_option("--range", cmp_args.range, "dynamic range R")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (opt_cmd->parsed())
            return run_optimize(opt_args, global);
        if (build_cmd->parsed())
            return run_build_lut(build_args, global);
        if (query_cmd->parsed())
            return run_query_lut(query_args);
        if (filter_cmd->parsed())
            return run_filter(filter_args, global);
        if (cmp_cmd->parsed())
            return run_compare(cmp_args, global);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
