#pragma once

#include <string>
#include <vector>

namespace fbf {

enum class RangeKernelKind { gaussian, exponential, cauchy, tabulated };

/// Description of a range kernel phi acting on intensity differences
/// t in {-R,...,R}. Parametric kinds are defined by a width sigma;
/// `tabulated` carries explicit samples (2R+1 values, center = phi(0)).
struct RangeKernelSpec {
    RangeKernelKind kind = RangeKernelKind::gaussian;
    double sigma = 0.0;
    int dynamic_range = 255; // R
    std::vector<double> table; // tabulated kind only

    static RangeKernelSpec gaussian(double sigma, int dynamic_range = 255);
    static RangeKernelSpec exponential(double sigma, int dynamic_range = 255);
    static RangeKernelSpec cauchy(double sigma, int dynamic_range = 255);
    static RangeKernelSpec tabulated(std::vector<double> samples);
};

/// Samples of a range kernel on the integer lattice {-R,...,R}.
/// values[i] = phi(i - R), so the center entry (index R) is phi(0).
struct RangeKernelSamples {
    int dynamic_range = 0; // R
    std::vector<double> values; // length 2R+1, symmetric about the center

    double at(int t) const { return values[static_cast<size_t>(t + dynamic_range)]; }
    int lattice_size() const { return 2 * dynamic_range + 1; }
};

/// Evaluates the kernel on its lattice. The result is exactly symmetric:
/// the half t >= 0 is evaluated and mirrored.
RangeKernelSamples sample_range_kernel(const RangeKernelSpec& spec);

/// Truncated separable Gaussian: taps[radius + j] = exp(-j^2 / (2 theta^2))
/// for j in [-radius, radius], radius = ceil(3 theta). The center tap is 1;
/// the 2-D weight is the outer product of the taps with themselves.
struct SpatialKernel {
    double theta = 0.0;
    int radius = 0;
    std::vector<double> taps;

    double tap(int j) const { return taps[static_cast<size_t>(j + radius)]; }
};

SpatialKernel build_spatial_kernel(double theta);

/// Reads a tabulated kernel: one real per line, 2R+1 lines, center line phi(0).
std::vector<double> read_kernel_table(const std::string& path);

} // namespace fbf
