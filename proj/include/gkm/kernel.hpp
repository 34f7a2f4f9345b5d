#pragma once

#include <string>
#include <vector>

namespace gkm {

/// Odd-sized square kernel, taps nonnegative and summing to 1.
struct Kernel2D {
    int size = 0;
    std::vector<double> taps;  // size x size, row-major

    double at(int i, int j) const { return taps[static_cast<size_t>(i) * size + j]; }
    double& at(int i, int j) { return taps[static_cast<size_t>(i) * size + j]; }
};

/// Fixed bank of Gaussian kernels, sigma ascending, sigma[0] = 0 (Dirac).
struct GaussianBasis {
    std::vector<double> sigmas;
    std::vector<Kernel2D> kernels;
    /// Normalized 1D taps per kernel; the 2D kernel is their outer product.
    std::vector<std::vector<double>> taps1d;
    int max_size = 0;

    int size() const { return static_cast<int>(kernels.size()); }
    double sigma_max() const { return sigmas.back(); }
};

/// Point-sampled Gaussian exp(-(i^2+j^2)/(2 sigma^2)) on integer offsets,
/// normalized to sum 1. sigma = 0 gives the 1x1 Dirac.
Kernel2D make_gaussian(int size, double sigma);

/// Kernel bank with sizes 1,3,5,...,M; for each m > 1 two kernels with
/// sigma (m-2)/4 and (m-1)/4, plus the Dirac, M kernels total.
GaussianBasis build_gcm_basis(int max_size);

/// Normalized 1D Gaussian taps of the given odd length.
std::vector<double> gaussian_taps_1d(int size, double sigma);

/// Binary disk of the given radius, normalized; support 2*radius + 1.
Kernel2D make_pillbox(int radius);

/// Zero-pads a kernel to a larger odd support, centered.
Kernel2D pad_kernel(const Kernel2D& k, int size);

}  // namespace gkm
