#include "fourierbf/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace fbf {

ImageDelta compare_images(const GrayImage& a, const GrayImage& b) {
    if (!a.same_shape(b))
        throw std::invalid_argument("compare_images: dimension mismatch");
    double sum_sq = 0.0;
    double max_abs = 0.0;
    for (size_t i = 0; i < a.pixels.size(); ++i) {
        const double d = a.pixels[i] - b.pixels[i];
        sum_sq += d * d;
        max_abs = std::max(max_abs, std::abs(d));
    }
    ImageDelta delta;
    delta.mse = sum_sq / static_cast<double>(a.pixels.size());
    delta.max_abs_err = max_abs;
    delta.psnr_db = delta.mse > 0.0 ? 10.0 * std::log10(255.0 * 255.0 / delta.mse)
                                    : std::numeric_limits<double>::infinity();
    return delta;
}

double prop1_bound(double eps, int dynamic_range, double omega0) {
    if (!(eps > 0.0) || !(eps < omega0))
        throw std::domain_error("prop1_bound: requires 0 < eps < omega(0)");
    return 2.0 * dynamic_range * eps / (omega0 - eps);
}

double kernel_error(const RangeKernelSamples& samples, const FourierApproximation& approx) {
    if (samples.dynamic_range != approx.dynamic_range)
        throw std::invalid_argument("kernel_error: dynamic range mismatch");
    const int R = samples.dynamic_range;
    double sum = 0.0;
    for (int t = -R; t <= R; ++t) {
        const double d = samples.at(t) - approx.evaluate(t);
        sum += d * d;
    }
    return sum;
}

std::string ComparisonResult::csv_header() {
    return "mse,psnr_db,max_abs_err,prop1_bound,bound_satisfied";
}

std::string ComparisonResult::to_csv() const {
    char buf[256];
    if (std::isinf(psnr_db))
        std::snprintf(buf, sizeof buf, "%.17g,inf,%.17g,%.17g,%s", mse, max_abs_err,
                      prop1_bound, bound_satisfied ? "true" : "false");
    else
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%s", mse, psnr_db,
                      max_abs_err, prop1_bound, bound_satisfied ? "true" : "false");
    return buf;
}

ComparisonResult compare_with_bound(const GrayImage& reference, const GrayImage& candidate,
                                    double achieved_kernel_error, int dynamic_range,
                                    double omega0) {
    const ImageDelta delta = compare_images(reference, candidate);
    ComparisonResult result;
    result.mse = delta.mse;
    result.psnr_db = delta.psnr_db;
    result.max_abs_err = delta.max_abs_err;
    result.prop1_bound = fbf::prop1_bound(achieved_kernel_error, dynamic_range, omega0);
    result.bound_satisfied = result.max_abs_err <= result.prop1_bound;
    return result;
}

} // namespace fbf
