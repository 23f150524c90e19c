#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace fbf {

/// Single-channel image with double-precision intensities, row-major storage.
/// Filtering entry points expect intensities in [0, R]; intermediate arrays
/// (convolution outputs, modulated images) reuse the same container without
/// that restriction.
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<double> pixels;

    GrayImage() = default;
    GrayImage(int w, int h, double fill = 0.0)
        : width(w), height(h), pixels(static_cast<size_t>(w) * h, fill) {
        if (w <= 0 || h <= 0)
            throw std::invalid_argument("GrayImage: dimensions must be positive");
    }

    double& at(int x, int y) { return pixels[static_cast<size_t>(y) * width + x]; }
    double at(int x, int y) const { return pixels[static_cast<size_t>(y) * width + x]; }

    size_t size() const { return pixels.size(); }

    bool same_shape(const GrayImage& other) const {
        return width == other.width && height == other.height;
    }
};

/// How samples outside the frame are produced. `zero` means out-of-frame
/// contributions are zero: convolutions read zeros, and the windowed
/// bilateral filter drops those neighbors entirely (zero weight).
enum class BorderPolicy { symmetric, replicate, zero };

/// Maps a possibly out-of-range coordinate into [0, n). Returns -1 for
/// BorderPolicy::zero when the coordinate is outside; handles overshoot
/// beyond one image width by repeated folding.
inline int map_border_index(int i, int n, BorderPolicy border) {
    if (i >= 0 && i < n)
        return i;
    switch (border) {
    case BorderPolicy::zero:
        return -1;
    case BorderPolicy::replicate:
        return i < 0 ? 0 : n - 1;
    case BorderPolicy::symmetric: {
        // whole-sample mirror: -1 -> 0, -2 -> 1, n -> n-1, folded as needed
        const int period = 2 * n;
        int m = i % period;
        if (m < 0)
            m += period;
        return m < n ? m : period - 1 - m;
    }
    }
    return -1;
}

} // namespace fbf
