#include "fourierbf/imageio.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace fbf {

namespace {

// Reads the next header token, skipping whitespace and '#' comments.
std::string next_header_token(std::istream& in, const std::string& path) {
    std::string token;
    int c = in.get();
    while (c != EOF) {
        if (c == '#') {
            while (c != EOF && c != '\n')
                c = in.get();
        } else if (std::isspace(c)) {
            c = in.get();
        } else {
            break;
        }
    }
    while (c != EOF && !std::isspace(c)) {
        token.push_back(static_cast<char>(c));
        c = in.get();
    }
    if (token.empty())
        throw std::runtime_error("PGM: truncated header in " + path);
    return token;
}

int parse_header_int(std::istream& in, const std::string& path, const char* what) {
    const std::string token = next_header_token(in, path);
    size_t pos = 0;
    int value = 0;
    try {
        value = std::stoi(token, &pos);
    } catch (const std::exception&) {
        throw std::runtime_error(std::string("PGM: bad ") + what + " '" + token + "' in " + path);
    }
    if (pos != token.size() || value <= 0)
        throw std::runtime_error(std::string("PGM: bad ") + what + " '" + token + "' in " + path);
    return value;
}

} // namespace

GrayImage read_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("PGM: cannot open " + path);

    const std::string magic = next_header_token(in, path);
    if (magic == "P2")
        throw std::runtime_error("PGM: ASCII (P2) format not supported, need binary P5: " + path);
    if (magic != "P5")
        throw std::runtime_error("PGM: not a P5 file (magic '" + magic + "'): " + path);

    const int width = parse_header_int(in, path, "width");
    const int height = parse_header_int(in, path, "height");
    const int maxval = parse_header_int(in, path, "maxval");
    if (maxval != 255)
        throw std::runtime_error("PGM: unsupported maxval " + std::to_string(maxval) +
                                 " (only 8-bit, maxval 255): " + path);
    // exactly one whitespace byte separates the header from the payload;
    // next_header_token already consumed it while scanning past the maxval

    std::vector<uint8_t> raw(static_cast<size_t>(width) * height);
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (static_cast<size_t>(in.gcount()) != raw.size())
        throw std::runtime_error("PGM: truncated pixel payload in " + path);

    GrayImage img(width, height);
    for (size_t i = 0; i < raw.size(); ++i)
        img.pixels[i] = static_cast<double>(raw[i]);
    return img;
}

void write_pgm(const GrayImage& img, const std::string& path) {
    std::vector<uint8_t> raw(img.pixels.size());
    for (size_t i = 0; i < img.pixels.size(); ++i) {
        const double rounded = std::round(img.pixels[i]); // ties away from zero
        if (!(rounded >= 0.0) || !(rounded <= 255.0))
            throw std::range_error("PGM: pixel " + std::to_string(img.pixels[i]) +
                                   " outside [0,255] after rounding; clamp before writing");
        raw[i] = static_cast<uint8_t>(rounded);
    }

    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("PGM: cannot open " + path + " for writing");
    out << "P5\n" << img.width << ' ' << img.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (!out)
        throw std::runtime_error("PGM: write failed for " + path);
}

} // namespace fbf
