// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Runs everything from scratch; no external inputs.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "fourierbf/approx.hpp"
#include "fourierbf/filter.hpp"
#include "fourierbf/kernels.hpp"
#include "fourierbf/lut.hpp"
#include "fourierbf/metrics.hpp"
#include "fourierbf/synthetic.hpp"

using namespace fbf;

namespace {

using Clock = std::chrono::steady_clock;

struct CriterionFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& detail) {
    if (!ok)
        throw CriterionFailure(detail);
}

std::string fmt(const char* format, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, format);
    std::vsnprintf(buf, sizeof buf, format, ap);
    va_end(ap);
    return buf;
}

double max_abs_diff(const GrayImage& a, const GrayImage& b) {
    double m = 0.0;
    for (size_t i = 0; i < a.pixels.size(); ++i)
        m = std::max(m, std::abs(a.pixels[i] - b.pixels[i]));
    return m;
}

RangeKernelSamples gaussian_samples(double sigma, int R = 255) {
    return sample_range_kernel(RangeKernelSpec::gaussian(sigma, R));
}

void enforce_budget(double elapsed, double budget) {
    require(elapsed < budget,
            fmt("runtime %.1f s exceeded the %.0f s budget", elapsed, budget));
}

// shared between criteria 4 and 5
struct EquivalenceCase {
    double theta, sigma;
    uint64_t seed;
    double max_err_vs_substitute; // fast vs brute with the fitted kernel
    double max_err_vs_true;       // fast vs brute with the exact kernel
    double achieved_error;        // kernel error of the fit
};

std::vector<EquivalenceCase> equivalence_results;

std::string criterion1() {
    const auto t0 = Clock::now();
    const auto report = optimize_parameters(gaussian_samples(50.0), 0.1, {});
    const double elapsed = std::chrono::duration<double>(Clock::now() - t0).count();

    require(report.best_terms == 4, fmt("K* = %d, expected 4", report.best_terms));
    if (report.best_half_period != 203) {
        // +-1 is admissible only when the error surface shows an exact tie
        require(std::abs(report.best_half_period - 203) <= 1,
                fmt("T* = %d, expected 203", report.best_half_period));
        const auto errors = scan_period_errors(4, gaussian_samples(50.0), report.t_max);
        const double tie = std::abs(errors[static_cast<size_t>(report.best_half_period - 1)] -
                                    errors[202]);
        require(tie <= 1e-12, fmt("T* = %d without a 1e-12 tie against T = 203",
                                  report.best_half_period));
    }
    enforce_budget(elapsed, 60.0);
    return fmt("K*=4, T*=203, E=%.4g, %.1f s single-threaded", report.achieved_error,
               elapsed);
}

std::string criterion2() {
    const auto t0 = Clock::now();
    std::ostringstream detail;
    for (double sigma : {15.0, 30.0, 50.0}) {
        const auto samples = gaussian_samples(sigma);
        std::vector<double> e;
        for (int K = 1; K <= 11; ++K)
            e.push_back(min_error_over_period(K, samples, 10 * 255).best_error);
        for (int K = 1; K <= 10; ++K)
            require(e[static_cast<size_t>(K)] <= e[static_cast<size_t>(K - 1)] + 1e-10,
                    fmt("e(%d)=%.6g > e(%d)=%.6g + 1e-10 at sigma=%g", K + 1,
                        e[static_cast<size_t>(K)], K, e[static_cast<size_t>(K - 1)], sigma));
        detail << " sigma=" << sigma << " e(11)=" << e.back();
    }
    const double elapsed = std::chrono::duration<double>(Clock::now() - t0).count();
    enforce_budget(elapsed, 300.0);
    return fmt("nonincreasing e(K), K=1..11, sigma in {15,30,50}; %.1f s", elapsed);
}

std::string criterion3() {
    const auto t0 = Clock::now();
    const auto scan = min_error_over_period(15, gaussian_samples(1.0, 7), 70);
    const double elapsed = std::chrono::duration<double>(Clock::now() - t0).count();
    require(scan.best_error <= 1e-10,
            fmt("e(2R+1) = %.3g > 1e-10 at R=7", scan.best_error));
    enforce_budget(elapsed, 10.0);
    return fmt("e(15) = %.3g at R=7, %.2f s", scan.best_error, elapsed);
}

std::string criterion4() {
    const auto t0 = Clock::now();
    equivalence_results.clear();

    const double thetas[] = {1.0, 3.0, 5.0};
    const double sigmas[] = {15.0, 30.0, 50.0};
    std::vector<std::pair<FourierApproximation, double>> fits; // fit + achieved error
    std::vector<RangeKernelSamples> truths;
    for (double sigma : sigmas) {
        const auto samples = gaussian_samples(sigma);
        const auto approx = optimize_parameters(samples, 0.1, {}).approximation(255);
        fits.emplace_back(approx, kernel_error(samples, approx));
        truths.push_back(samples);
    }

    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        const double theta = thetas[i % 3];
        const size_t si = static_cast<size_t>(i / 3) % 3;
        const auto& [approx, achieved] = fits[si];
        const auto kernel = build_spatial_kernel(theta);
        const auto img = random_image(32, 32, 9000 + static_cast<uint64_t>(i));

        const auto fast = fast_bilateral(img, kernel, approx, BorderPolicy::symmetric);
        const auto substitute =
            brute_bilateral(img, kernel, tabulate_approximation(approx), BorderPolicy::symmetric);
        const auto truth = brute_bilateral(img, kernel, truths[si], BorderPolicy::symmetric);

        EquivalenceCase c;
        c.theta = theta;
        c.sigma = sigmas[si];
        c.seed = 9000 + static_cast<uint64_t>(i);
        c.max_err_vs_substitute = max_abs_diff(fast, substitute);
        c.max_err_vs_true = max_abs_diff(fast, truth);
        c.achieved_error = achieved;
        equivalence_results.push_back(c);

        require(c.max_err_vs_substitute <= 1e-6,
                fmt("image %d (theta=%g, sigma=%g): |fast - brute(phihat)| = %.3g > 1e-6", i,
                    theta, sigmas[si], c.max_err_vs_substitute));
        worst = std::max(worst, c.max_err_vs_substitute);
    }
    const double elapsed = std::chrono::duration<double>(Clock::now() - t0).count();
    enforce_budget(elapsed, 120.0);
    return fmt("20 images, worst |fast - brute(phihat)| = %.3g, %.1f s", worst, elapsed);
}

std::string criterion5() {
    require(!equivalence_results.empty(), "criterion 4 must run first");
    double worst_margin = std::numeric_limits<double>::infinity();
    for (const auto& c : equivalence_results) {
        const double bound = prop1_bound(c.achieved_error, 255, 1.0);
        require(c.max_err_vs_true <= bound,
                fmt("theta=%g sigma=%g seed=%llu: |fast - brute(phi)| = %.4g > bound %.4g",
                    c.theta, c.sigma, static_cast<unsigned long long>(c.seed),
                    c.max_err_vs_true, bound));
        worst_margin = std::min(worst_margin, bound - c.max_err_vs_true);
    }
    return fmt("zero violations on 20 images, smallest bound margin %.3g", worst_margin);
}

std::string criterion6() {
    const GrayImage images[] = {scene_image(192, 128, 11), scene_image(160, 160, 77)};
    const auto kernel = build_spatial_kernel(5.0);
    const double soft_targets[] = {74.7, 91.4, 91.8}; // Montage values, informational
    std::ostringstream detail;

    const double sigmas[] = {15.0, 30.0, 50.0};
    for (size_t si = 0; si < 3; ++si) {
        const auto samples = gaussian_samples(sigmas[si]);
        const auto approx = optimize_parameters(samples, 0.1, {}).approximation(255);
        for (size_t ii = 0; ii < 2; ++ii) {
            const auto brute =
                brute_bilateral(images[ii], kernel, samples, BorderPolicy::symmetric);
            const auto fast =
                fast_bilateral(images[ii], kernel, approx, BorderPolicy::symmetric);
            const double psnr = compare_images(brute, fast).psnr_db;
            require(psnr >= 40.0, fmt("PSNR %.2f dB < 40 dB at sigma=%g, image %zu", psnr,
                                      sigmas[si], ii));
            detail << fmt(" s%g/i%zu=%.1f", sigmas[si], ii, psnr);
        }
        detail << fmt(" (soft %.1f)", soft_targets[si]);
    }
    return "all >= 40 dB:" + detail.str();
}

std::string criterion7() {
    const auto samples = gaussian_samples(40.0);
    const auto scan = min_error_over_period(4, samples, 10 * 255);
    const auto optimized = fit_fixed_period(samples, 4, scan.best_half_period);
    const auto baseline = fit_fixed_period(samples, 4, 255); // T = R
    const double e_opt = kernel_error(samples, optimized);
    const double e_fbf = kernel_error(samples, baseline);

    require(e_opt < e_fbf, fmt("kernel error %.4g not below baseline %.4g", e_opt, e_fbf));
    // frozen regression margin (measured ratio 23.4)
    require(e_fbf / e_opt >= 20.0,
            fmt("kernel error ratio %.2f fell below the frozen margin 20", e_fbf / e_opt));

    const auto img = scene_image(128, 128, 5);
    const auto kernel = build_spatial_kernel(5.0);
    const auto brute = brute_bilateral(img, kernel, samples, BorderPolicy::symmetric);
    const double psnr_opt =
        compare_images(brute, fast_bilateral(img, kernel, optimized, BorderPolicy::symmetric))
            .psnr_db;
    const double psnr_fbf =
        compare_images(brute, fast_bilateral(img, kernel, baseline, BorderPolicy::symmetric))
            .psnr_db;
    require(psnr_opt > psnr_fbf,
            fmt("PSNR %.2f not above baseline %.2f", psnr_opt, psnr_fbf));
    // frozen regression margin (measured gap 14.3 dB)
    require(psnr_opt - psnr_fbf >= 10.0,
            fmt("PSNR gap %.2f dB fell below the frozen margin 10", psnr_opt - psnr_fbf));
    return fmt("kernel error %.4g vs %.4g (x%.1f), PSNR %.1f vs %.1f dB", e_opt, e_fbf,
               e_fbf / e_opt, psnr_opt, psnr_fbf);
}

std::string criterion8() {
    const auto table = build_lut({15.0, 30.0, 50.0, 70.0},
                                 {1e-1, 1e-2, 1e-3, 1e-4, 1e-5}, 255);

    const auto img = scene_image(96, 96, 3);
    const auto kernel = build_spatial_kernel(3.0);
    const struct {
        double sigma, eps;
    } probes[] = {{40.0, 0.05}, {22.5, 0.003}, {60.0, 0.0005}};

    std::ostringstream detail;
    for (const auto& probe : probes) {
        const auto samples = gaussian_samples(probe.sigma);
        const auto brute = brute_bilateral(img, kernel, samples, BorderPolicy::symmetric);

        const auto q = query_lut(table, probe.sigma, probe.eps);
        const auto interp_fit = fit_fixed_period(samples, q.terms, q.half_period);
        const double psnr_interp =
            compare_images(brute,
                           fast_bilateral(img, kernel, interp_fit, BorderPolicy::symmetric))
                .psnr_db;

        const auto full = optimize_parameters(samples, probe.eps, {});
        const auto full_fit = full.approximation(255);
        const double psnr_full =
            compare_images(brute,
                           fast_bilateral(img, kernel, full_fit, BorderPolicy::symmetric))
                .psnr_db;

        const double loss = psnr_full - psnr_interp;
        require(loss <= 2.0,
                fmt("interpolation lost %.2f dB (> 2 dB) at sigma=%g eps=%g "
                    "(interp K=%d T=%d vs full K=%d T=%d)",
                    loss, probe.sigma, probe.eps, q.terms, q.half_period, full.best_terms,
                    full.best_half_period));
        detail << fmt(" (%.1f,%.0e): %.1f vs %.1f dB", probe.sigma, probe.eps, psnr_interp,
                      psnr_full);
    }
    return "losses within 2 dB:" + detail.str();
}

std::string criterion9() {
    // repeated optimization, serial and threaded, must match bit for bit
    const auto samples = gaussian_samples(50.0);
    const auto r1 = optimize_parameters(samples, 0.1, {});
    const auto r2 = optimize_parameters(samples, 0.1, {});
    OptimizeOptions threaded;
    threaded.threads = 4;
    const auto r3 = optimize_parameters(samples, 0.1, threaded);
    require(r1.to_text() == r2.to_text(), "repeated optimization reports differ");
    require(r1.to_text() == r3.to_text(), "threaded optimization report differs");

    // filtering, serial vs threaded
    const auto img = scene_image(64, 64, 21);
    const auto kernel = build_spatial_kernel(3.0);
    const auto approx = r1.approximation(255);
    const auto fast1 = fast_bilateral(img, kernel, approx, BorderPolicy::symmetric, nullptr, 1);
    const auto fast4 = fast_bilateral(img, kernel, approx, BorderPolicy::symmetric, nullptr, 4);
    const auto brute1 = brute_bilateral(img, kernel, samples, BorderPolicy::symmetric, nullptr, 1);
    const auto brute3 = brute_bilateral(img, kernel, samples, BorderPolicy::symmetric, nullptr, 3);
    for (size_t i = 0; i < img.pixels.size(); ++i) {
        require(fast1.pixels[i] == fast4.pixels[i], "fast output differs across thread counts");
        require(brute1.pixels[i] == brute3.pixels[i], "brute output differs across thread counts");
    }

    // LUT build, serial vs threaded
    const auto lut1 = build_lut({30.0, 50.0}, {0.1, 0.01}, 255, 450, 1);
    const auto lut4 = build_lut({30.0, 50.0}, {0.1, 0.01}, 255, 450, 4);
    require(lut1.terms == lut4.terms && lut1.half_period == lut4.half_period,
            "LUT build differs across thread counts");

    // serialized comparison record
    const auto d1 = compare_with_bound(fast1, brute1, r1.achieved_error, 255).to_csv();
    const auto d2 = compare_with_bound(fast4, brute3, r1.achieved_error, 255).to_csv();
    require(d1 == d2, "comparison CSV differs across thread counts");
    return "reports, images, tables and CSV bit-identical across runs and thread counts";
}

} // namespace

int main() {
    const struct {
        int id;
        const char* name;
        std::function<std::string()> run;
    } criteria[] = {
        {1, "optimal-period reproduction (sigma=50, eps=0.1 -> K*=4, T*=203)", criterion1},
        {2, "monotone decay of e(K) for sigma in {15,30,50}", criterion2},
        {3, "vanishing error at full order (R=7)", criterion3},
        {4, "substitute-kernel oracle equivalence (20 random images)", criterion4},
        {5, "pixelwise error bound with the achieved residual", criterion5},
        {6, "PSNR floor of 40 dB on two test images", criterion6},
        {7, "dominance over the fixed-period baseline (sigma=40, K=4)", criterion7},
        {8, "LUT interpolation loses at most 2 dB", criterion8},
        {9, "bit-identical artifacts across runs and thread counts", criterion9},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        try {
            const std::string detail = c.run();
            std::printf("[PASS] criterion %d: %s — %s\n", c.id, c.name, detail.c_str());
        } catch (const std::exception& e) {
            ++failures;
            std::printf("[FAIL] criterion %d: %s — %s\n", c.id, c.name, e.what());
        }
        std::fflush(stdout);
    }
    if (failures > 0) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all %zu criteria passed\n", std::size(criteria));
    return 0;
}
