#pragma once

#include "fourierbf/approx.hpp"
#include "fourierbf/image.hpp"
#include "fourierbf/kernels.hpp"

namespace fbf {

/// Separable convolution with the truncated Gaussian taps: a horizontal pass
/// followed by a vertical pass, borders handled per policy. The taps are not
/// normalized; callers that need an average divide by a convolution of ones.
GrayImage convolve_separable(const GrayImage& img, const SpatialKernel& kernel,
                             BorderPolicy border, int threads = 1);

struct FilterDiagnostics {
    long long fallback_pixels = 0; // pixels where the denominator gave out
};

struct StageTimings {
    double fit_seconds = 0.0;
    double auxiliary_seconds = 0.0;
    double convolution_seconds = 0.0;
    double combine_seconds = 0.0;
};

/// Windowed bilateral filter evaluated directly from the kernel samples;
/// the oracle the fast path is measured against. Intensity differences are
/// rounded to the nearest lattice point (a no-op for integer-valued images).
/// Neighbors outside the frame follow the border policy; `zero` drops them.
/// A pixel whose denominator is <= 0 falls back to its input value and is
/// counted in `diag`.
GrayImage brute_bilateral(const GrayImage& img, const SpatialKernel& kernel,
                          const RangeKernelSamples& range, BorderPolicy border,
                          FilterDiagnostics* diag = nullptr, int threads = 1);

/// Shiftable-convolution bilateral filter: for each cosine term the range
/// weight splits into products of cos/sin images, so the numerator and
/// denominator of the filter become fixed spatial convolutions of modulated
/// images (at most 4K-2 convolutions). Output matches brute_bilateral run
/// with the tabulated approximation as the range kernel, any border policy.
/// Terms accumulate in ascending k regardless of thread count. A pixel whose
/// denominator is <= 1e-12 falls back to its input value and is counted.
GrayImage fast_bilateral(const GrayImage& img, const SpatialKernel& kernel,
                         const FourierApproximation& approx, BorderPolicy border,
                         FilterDiagnostics* diag = nullptr, int threads = 1,
                         StageTimings* timings = nullptr);

} // namespace fbf
