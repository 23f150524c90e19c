#include "fourierbf/filter.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "fourierbf/parallel.hpp"

namespace fbf {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

void validate_intensities(const GrayImage& img, int dynamic_range) {
    for (double v : img.pixels)
        if (!std::isfinite(v) || v < 0.0 || v > static_cast<double>(dynamic_range))
            throw std::invalid_argument("filter: pixel intensity outside [0, R]");
}

// One separable pass along x. Interior pixels take the unmapped fast path;
// both paths accumulate taps in the same ascending order.
void convolve_rows(const GrayImage& in, const SpatialKernel& kernel, BorderPolicy border,
                   GrayImage& out, int threads) {
    const int w = in.width, h = in.height, r = kernel.radius;
    const double* taps = kernel.taps.data();
    parallel_for(0, h, threads, [&](int y) {
        const double* src = &in.pixels[static_cast<size_t>(y) * w];
        double* dst = &out.pixels[static_cast<size_t>(y) * w];
        for (int x = 0; x < w; ++x) {
            double sum = 0.0;
            if (x >= r && x + r < w) {
                for (int d = -r; d <= r; ++d)
                    sum += taps[r + d] * src[x + d];
            } else {
                for (int d = -r; d <= r; ++d) {
                    const int sx = map_border_index(x + d, w, border);
                    if (sx >= 0)
                        sum += taps[r + d] * src[sx];
                }
            }
            dst[x] = sum;
        }
    });
}

// One separable pass along y; the border offset is resolved once per row.
void convolve_cols(const GrayImage& in, const SpatialKernel& kernel, BorderPolicy border,
                   GrayImage& out, int threads) {
    const int w = in.width, h = in.height, r = kernel.radius;
    const double* taps = kernel.taps.data();
    parallel_for(0, h, threads, [&](int y) {
        double* dst = &out.pixels[static_cast<size_t>(y) * w];
        for (int x = 0; x < w; ++x)
            dst[x] = 0.0;
        for (int d = -r; d <= r; ++d) {
            const int sy = map_border_index(y + d, h, border);
            if (sy < 0)
                continue;
            const double weight = taps[r + d];
            const double* src = &in.pixels[static_cast<size_t>(sy) * w];
            for (int x = 0; x < w; ++x)
                dst[x] += weight * src[x];
        }
    });
}

} // namespace

GrayImage convolve_separable(const GrayImage& img, const SpatialKernel& kernel,
                             BorderPolicy border, int threads) {
    GrayImage tmp(img.width, img.height);
    GrayImage out(img.width, img.height);
    convolve_rows(img, kernel, border, tmp, threads);
    convolve_cols(tmp, kernel, border, out, threads);
    return out;
}

GrayImage brute_bilateral(const GrayImage& img, const SpatialKernel& kernel,
                          const RangeKernelSamples& range, BorderPolicy border,
                          FilterDiagnostics* diag, int threads) {
    validate_intensities(img, range.dynamic_range);
    const int w = img.width, h = img.height, r = kernel.radius;
    const double* taps = kernel.taps.data();
    GrayImage out(w, h);
    std::vector<long long> fallbacks(static_cast<size_t>(h), 0);

    parallel_for(0, h, threads, [&](int y) {
        for (int x = 0; x < w; ++x) {
            const double center = img.at(x, y);
            double num = 0.0;
            double den = 0.0;
            for (int dy = -r; dy <= r; ++dy) {
                const int sy = map_border_index(y + dy, h, border);
                if (sy < 0)
                    continue;
                const double wy = taps[r + dy];
                const double* src = &img.pixels[static_cast<size_t>(sy) * w];
                for (int dx = -r; dx <= r; ++dx) {
                    const int sx = map_border_index(x + dx, w, border);
                    if (sx < 0)
                        continue;
                    const double neighbor = src[sx];
                    const long t = std::lround(neighbor - center);
                    const double weight = wy * taps[r + dx] * range.at(static_cast<int>(t));
                    num += weight * neighbor;
                    den += weight;
                }
            }
            if (den > 0.0) {
                out.at(x, y) = num / den;
            } else {
                out.at(x, y) = center;
                ++fallbacks[static_cast<size_t>(y)];
            }
        }
    });

    if (diag)
        for (long long f : fallbacks)
            diag->fallback_pixels += f;
    return out;
}

GrayImage fast_bilateral(const GrayImage& img, const SpatialKernel& kernel,
                         const FourierApproximation& approx, BorderPolicy border,
                         FilterDiagnostics* diag, int threads, StageTimings* timings) {
    if (approx.terms < 1 ||
        approx.coefficients.size() != static_cast<size_t>(approx.terms))
        throw std::invalid_argument("fast_bilateral: malformed approximation");
    validate_intensities(img, approx.dynamic_range);

    const int w = img.width, h = img.height;
    const int n = w * h;
    const double nu = approx.frequency;

    GrayImage num(w, h), den(w, h);
    GrayImage cos_img(w, h), sin_img(w, h), cos_f(w, h), sin_f(w, h);

    // terms accumulate in ascending k so the per-pixel summation order is
    // fixed for every thread count
    for (int k = 0; k < approx.terms; ++k) {
        const double ck = approx.coefficients[static_cast<size_t>(k)];

        if (k == 0) {
            // cos(0) = 1, sin(0) = 0: only G(f) and G(1) are needed
            auto t0 = Clock::now();
            GrayImage ones(w, h, 1.0);
            const GrayImage g_f = convolve_separable(img, kernel, border, threads);
            const GrayImage g_1 = convolve_separable(ones, kernel, border, threads);
            if (timings)
                timings->convolution_seconds += seconds_since(t0);
            for (int i = 0; i < n; ++i) {
                num.pixels[i] += ck * g_f.pixels[i];
                den.pixels[i] += ck * g_1.pixels[i];
            }
            continue;
        }

        auto t_aux = Clock::now();
        const double omega = nu * k;
        parallel_for(0, h, threads, [&](int y) {
            const size_t off = static_cast<size_t>(y) * w;
            for (int x = 0; x < w; ++x) {
                const double f = img.pixels[off + x];
                const double c = std::cos(omega * f);
                const double s = std::sin(omega * f);
                cos_img.pixels[off + x] = c;
                sin_img.pixels[off + x] = s;
                cos_f.pixels[off + x] = c * f;
                sin_f.pixels[off + x] = s * f;
            }
        });
        if (timings)
            timings->auxiliary_seconds += seconds_since(t_aux);

        auto t_conv = Clock::now();
        const GrayImage g_cos_f = convolve_separable(cos_f, kernel, border, threads);
        const GrayImage g_sin_f = convolve_separable(sin_f, kernel, border, threads);
        const GrayImage g_cos = convolve_separable(cos_img, kernel, border, threads);
        const GrayImage g_sin = convolve_separable(sin_img, kernel, border, threads);
        if (timings)
            timings->convolution_seconds += seconds_since(t_conv);

        for (int i = 0; i < n; ++i) {
            num.pixels[i] +=
                ck * (cos_img.pixels[i] * g_cos_f.pixels[i] + sin_img.pixels[i] * g_sin_f.pixels[i]);
            den.pixels[i] +=
                ck * (cos_img.pixels[i] * g_cos.pixels[i] + sin_img.pixels[i] * g_sin.pixels[i]);
        }
    }

    auto t_combine = Clock::now();
    GrayImage out(w, h);
    long long fallbacks = 0;
    for (int i = 0; i < n; ++i) {
        if (den.pixels[i] > 1e-12) {
            out.pixels[i] = num.pixels[i] / den.pixels[i];
        } else {
            out.pixels[i] = img.pixels[i];
            ++fallbacks;
        }
    }
    if (timings)
        timings->combine_seconds += seconds_since(t_combine);
    if (diag)
        diag->fallback_pixels += fallbacks;
    return out;
}

} // namespace fbf
