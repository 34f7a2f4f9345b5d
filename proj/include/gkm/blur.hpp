#pragma once

#include <cstdint>
#include <vector>

#include "gkm/image.hpp"
#include "gkm/kernel.hpp"

namespace gkm {

enum class BoundaryMode { replicate, periodic };

BoundaryMode parse_boundary(const std::string& name);

/// Per-pixel mixing coefficients over a basis, one plane per basis element.
/// Shared across color channels.
struct CoefficientMaps {
    PlaneStack planes;
    bool simplex = false;  // nonnegative and sum-to-1 certified per pixel

    int basis_count() const { return planes.planes; }
};

/// Reparametrized coefficients: gamma_1 = 1 - beta_1, gamma_k = -beta_k.
/// All-in-focus means gamma identically zero.
struct GammaMaps {
    PlaneStack planes;

    int basis_count() const { return planes.planes; }
};

/// Separable convolution of one plane with normalized 1D taps (both passes).
void separable_filter(const double* src, double* dst, int h, int w,
                      const std::vector<double>& taps, BoundaryMode mode);

/// Direct 2D convolution, the slow reference path for the separable filter.
void convolve2d_direct(const double* src, double* dst, int h, int w,
                       const Kernel2D& kernel, BoundaryMode mode);

/// g(sigma_k) (x) x for every basis element; one stack per channel.
/// Plane 0 (the Dirac) equals the input bit-exactly.
std::vector<PlaneStack> basis_responses(const Image& x, const GaussianBasis& basis,
                                        BoundaryMode mode);

/// Gather-form spatially variant blur: y[p] = sum_k beta_k[p] (g_k (x) x)[p].
Image apply_blur(const Image& x, const CoefficientMaps& beta,
                 const GaussianBasis& basis, BoundaryMode mode);

/// Adjoint x = sum_k g_k (x) (beta_k . y); exact under periodic boundaries.
Image apply_blur_adjoint(const Image& y, const CoefficientMaps& beta,
                         const GaussianBasis& basis, BoundaryMode mode);

/// Adds i.i.d. Gaussian noise with standard deviation sigma_hat/255 in [0,1]
/// units. No clipping. Deterministic for a fixed seed.
Image add_noise(const Image& x, double sigma_hat, uint64_t seed);

/// Shared inner loop: sum_k omega_k * maps_k[p] * (g_k (x) x)[p] added onto
/// base, per channel. Used by apply_blur (beta, base = 0) and the fixed-point
/// step (gamma, base = y). Pass empty omega for unit weights.
Image weighted_response_sum(const Image& x, const PlaneStack& maps,
                            const GaussianBasis& basis, BoundaryMode mode,
                            const Image* base,
                            const std::vector<double>& omega = {});

void check_maps(const PlaneStack& maps, const GaussianBasis& basis, const Image& x);

}  // namespace gkm
