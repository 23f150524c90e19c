#pragma once

#include <cstdint>

#include "fourierbf/image.hpp"

namespace fbf {

/// Uniform random 8-bit image; same seed, same pixels on every platform.
GrayImage random_image(int width, int height, uint64_t seed);

/// Piecewise-smooth 8-bit test scene (gradient background, disk, rectangle,
/// diagonal edge, mild noise). Deterministic in the seed.
GrayImage scene_image(int width, int height, uint64_t seed);

} // namespace fbf
