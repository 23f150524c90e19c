#include "fourierbf/synthetic.hpp"

#include <cmath>

namespace fbf {

namespace {

// splitmix64: tiny, stable across platforms and toolchains
struct SplitMix64 {
    uint64_t state;
    explicit SplitMix64(uint64_t seed) : state(seed) {}
    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    // uniform in [0, 1)
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

} // namespace

GrayImage random_image(int width, int height, uint64_t seed) {
    GrayImage img(width, height);
    SplitMix64 rng(seed);
    for (double& p : img.pixels)
        p = static_cast<double>(rng.next() % 256);
    return img;
}

GrayImage scene_image(int width, int height, uint64_t seed) {
    GrayImage img(width, height);
    SplitMix64 rng(seed);

    const double cx = 0.35 * width, cy = 0.4 * height;
    const double disk_r = 0.22 * std::min(width, height);
    const double rx0 = 0.55 * width, ry0 = 0.55 * height;
    const double rx1 = 0.9 * width, ry1 = 0.85 * height;

    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            // smooth background ramp with a gentle wave
            double v = 40.0 + 120.0 * (static_cast<double>(x) / width) +
                       25.0 * std::sin(6.0 * static_cast<double>(y) / height);
            // bright disk
            const double dx = x - cx, dy = y - cy;
            if (dx * dx + dy * dy < disk_r * disk_r)
                v = 220.0;
            // dark rectangle
            if (x >= rx0 && x <= rx1 && y >= ry0 && y <= ry1)
                v = 30.0;
            // diagonal edge across the top-right corner
            if (x - y > 0.55 * width)
                v = 170.0;
            // mild sensor-style noise, +-4 levels
            v += (rng.uniform() - 0.5) * 8.0;
            v = std::round(v);
            img.at(x, y) = std::min(255.0, std::max(0.0, v));
        }
    }
    return img;
}

} // namespace fbf
