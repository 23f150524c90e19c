#include "fourierbf/kernels.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fbf {

namespace {

void validate_parametric(double sigma, int dynamic_range) {
    if (!(sigma > 0.0) || !std::isfinite(sigma))
        throw std::invalid_argument("range kernel: sigma must be positive");
    if (dynamic_range < 1)
        throw std::invalid_argument("range kernel: dynamic range must be >= 1");
}

double evaluate_kind(const RangeKernelSpec& spec, int t) {
    const double x = static_cast<double>(t);
    switch (spec.kind) {
    case RangeKernelKind::gaussian:
        return std::exp(-(x * x) / (2.0 * spec.sigma * spec.sigma));
    case RangeKernelKind::exponential:
        return std::exp(-std::abs(x) / spec.sigma);
    case RangeKernelKind::cauchy:
        return 1.0 / (1.0 + (x * x) / (spec.sigma * spec.sigma));
    case RangeKernelKind::tabulated:
        break;
    }
    throw std::logic_error("range kernel: unhandled kind");
}

} // namespace

RangeKernelSpec RangeKernelSpec::gaussian(double sigma, int dynamic_range) {
    validate_parametric(sigma, dynamic_range);
    return {RangeKernelKind::gaussian, sigma, dynamic_range, {}};
}

RangeKernelSpec RangeKernelSpec::exponential(double sigma, int dynamic_range) {
    validate_parametric(sigma, dynamic_range);
    return {RangeKernelKind::exponential, sigma, dynamic_range, {}};
}

RangeKernelSpec RangeKernelSpec::cauchy(double sigma, int dynamic_range) {
    validate_parametric(sigma, dynamic_range);
    return {RangeKernelKind::cauchy, sigma, dynamic_range, {}};
}

RangeKernelSpec RangeKernelSpec::tabulated(std::vector<double> samples) {
    if (samples.size() < 3 || samples.size() % 2 == 0)
        throw std::invalid_argument(
            "tabulated kernel: need an odd number of samples (2R+1), R >= 1");
    const int R = static_cast<int>(samples.size() / 2);
    for (double v : samples)
        if (!std::isfinite(v))
            throw std::invalid_argument("tabulated kernel: non-finite sample");
    const double center = samples[static_cast<size_t>(R)];
    if (!(center > 0.0))
        throw std::invalid_argument("tabulated kernel: center value must be positive");
    for (int k = 1; k <= R; ++k) {
        const double lo = samples[static_cast<size_t>(R - k)];
        const double hi = samples[static_cast<size_t>(R + k)];
        if (std::abs(lo - hi) > 1e-12)
            throw std::invalid_argument("tabulated kernel: samples asymmetric beyond 1e-12");
        if (lo > center || hi > center)
            throw std::invalid_argument("tabulated kernel: center must be the maximum");
    }
    RangeKernelSpec spec;
    spec.kind = RangeKernelKind::tabulated;
    spec.sigma = 0.0;
    spec.dynamic_range = R;
    spec.table = std::move(samples);
    return spec;
}

RangeKernelSamples sample_range_kernel(const RangeKernelSpec& spec) {
    const int R = spec.dynamic_range;
    RangeKernelSamples out;
    out.dynamic_range = R;
    out.values.assign(static_cast<size_t>(2 * R + 1), 0.0);

    if (spec.kind == RangeKernelKind::tabulated) {
        if (spec.table.size() != static_cast<size_t>(2 * R + 1))
            throw std::invalid_argument("tabulated kernel: wrong table length");
        // mirror the t >= 0 half so the output is exactly symmetric
        for (int t = 0; t <= R; ++t) {
            const double v = spec.table[static_cast<size_t>(R + t)];
            out.values[static_cast<size_t>(R + t)] = v;
            out.values[static_cast<size_t>(R - t)] = v;
        }
        return out;
    }

    validate_parametric(spec.sigma, R);
    for (int t = 0; t <= R; ++t) {
        const double v = evaluate_kind(spec, t);
        out.values[static_cast<size_t>(R + t)] = v;
        out.values[static_cast<size_t>(R - t)] = v;
    }
    return out;
}

SpatialKernel build_spatial_kernel(double theta) {
    if (!(theta > 0.0) || !std::isfinite(theta))
        throw std::invalid_argument("spatial kernel: theta must be positive");
    SpatialKernel k;
    k.theta = theta;
    k.radius = static_cast<int>(std::ceil(3.0 * theta));
    k.taps.assign(static_cast<size_t>(2 * k.radius + 1), 0.0);
    for (int j = 0; j <= k.radius; ++j) {
        const double v = std::exp(-(static_cast<double>(j) * j) / (2.0 * theta * theta));
        k.taps[static_cast<size_t>(k.radius + j)] = v;
        k.taps[static_cast<size_t>(k.radius - j)] = v;
    }
    return k;
}

std::vector<double> read_kernel_table(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("kernel table: cannot open " + path);
    std::vector<double> values;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty())
            continue;
        std::istringstream iss(line);
        double v = 0.0;
        if (!(iss >> v))
            throw std::runtime_error("kernel table: bad value at line " +
                                     std::to_string(line_no) + " of " + path);
        values.push_back(v);
    }
    return values;
}

} // namespace fbf
