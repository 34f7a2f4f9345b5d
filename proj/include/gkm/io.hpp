#pragma once

#include <stdexcept>
#include <string>

#include "gkm/image.hpp"

namespace gkm {

/// File/format problems (bad magic, truncation, unsupported PNG layout).
struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Reads an 8- or 16-bit gray/RGB PNG. Samples are mapped to [0,1] by
/// dividing by 2^bits - 1.
Image read_png(const std::string& path);

/// Writes a PNG with round-half-up quantization. bit_depth is 8 or 16.
void write_png(const Image& img, const std::string& path, int bit_depth = 16);

/// GKMF container: "GKMF" magic, u32 LE version=1, u32 K, u32 H, u32 W,
/// then K*H*W binary32 LE samples, plane-major.
PlaneStack read_planes(const std::string& path);
void write_planes(const PlaneStack& stack, const std::string& path);

}  // namespace gkm
