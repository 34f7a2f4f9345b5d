#pragma once

#include "gkm/image.hpp"

namespace gkm {

/// 10 log10(1/MSE) with MAX = 1.0, MSE over all channels; identical inputs
/// report the 100 dB cap.
double psnr(const Image& a, const Image& b);

/// Windowed SSIM: 11x11 Gaussian window sigma 1.5, K1 = 0.01, K2 = 0.03,
/// dynamic range 1. Mean over valid window positions and channels.
double ssim(const Image& a, const Image& b);

}  // namespace gkm
