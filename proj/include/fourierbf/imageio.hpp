#pragma once

#include <string>

#include "fourierbf/image.hpp"

namespace fbf {

/// Reads a binary PGM (P5, maxval 255). Header comments are skipped; pixels
/// come back integer-valued in [0, 255], exactly as stored.
GrayImage read_pgm(const std::string& path);

/// Writes a binary PGM (P5, maxval 255). Pixels are rounded to the nearest
/// integer, ties away from zero; a pixel outside [0, 255] after rounding is
/// an error (callers clamp explicitly if they mean to).
void write_pgm(const GrayImage& img, const std::string& path);

} // namespace fbf
