#pragma once

#include <string>

#include "fourierbf/approx.hpp"
#include "fourierbf/image.hpp"
#include "fourierbf/kernels.hpp"

namespace fbf {

struct ImageDelta {
    double mse = 0.0;
    double psnr_db = 0.0; // +infinity when mse == 0
    double max_abs_err = 0.0;
};

/// MSE, PSNR = 10 log10(255^2 / MSE) and max absolute difference.
/// Identical images report psnr_db = +infinity.
ImageDelta compare_images(const GrayImage& a, const GrayImage& b);

/// Pixelwise error bound 2 R eps / (omega0 - eps) for a kernel error bound
/// eps with 0 < eps < omega0.
double prop1_bound(double eps, int dynamic_range, double omega0 = 1.0);

/// Discrete kernel error sum_{t in {-R..R}} (phi(t) - phihat(t))^2.
double kernel_error(const RangeKernelSamples& samples, const FourierApproximation& approx);

struct ComparisonResult {
    double mse = 0.0;
    double psnr_db = 0.0;
    double max_abs_err = 0.0;
    double prop1_bound = 0.0;
    bool bound_satisfied = false;

    /// One CSV record "mse,psnr_db,max_abs_err,prop1_bound,bound_satisfied";
    /// infinite PSNR is written as the string "inf".
    std::string to_csv() const;
    static std::string csv_header();
};

/// Bundles the image delta with the pixelwise bound computed from the
/// achieved kernel error (not the requested tolerance).
ComparisonResult compare_with_bound(const GrayImage& reference, const GrayImage& candidate,
                                    double achieved_kernel_error, int dynamic_range,
                                    double omega0 = 1.0);

} // namespace fbf
