#pragma once

#include <stdexcept>
#include <string>

#include "quadel/canny.hpp"

namespace quadel {

struct PgmError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Reads binary P5 or ASCII P2 portable graymaps, max value 255,
/// '#' comments tolerated in the header.
GrayImage read_pgm(const std::string& path);
GrayImage parse_pgm(const std::string& bytes);

/// Writes binary P5, values rounded and clamped to [0, 255].
std::string encode_pgm(const GrayImage& img);
void write_pgm(const std::string& path, const GrayImage& img);

}  // namespace quadel
