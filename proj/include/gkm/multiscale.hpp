#pragma once

#include "gkm/solver.hpp"

namespace gkm {

struct SolverConfig {
    int scales = 3;
    int inner_iters = 1;
    /// Per-scale per-kernel scaling of the mixing coefficients. Empty means
    /// unit weights everywhere; otherwise scales x K.
    std::vector<std::vector<double>> omega;
    BoundaryMode boundary = BoundaryMode::replicate;
    StopRule stop;
};

/// Coefficient maps per scale, index 0 = coarsest, sized to the pyramid level.
struct ScaleCoefficients {
    std::vector<CoefficientMaps> levels;
};

/// Coarse-to-fine solve: x starts at the coarsest observation, each scale
/// runs inner_iters fixed-point steps and hands its upsampled result to the
/// next scale. With scales = 1 this is exactly the single-scale solver.
std::pair<Image, std::vector<IterationTrace>> solve_multiscale(
    const Image& y, const ScaleCoefficients& coeffs, const GaussianBasis& basis,
    const SolverConfig& config);

/// Per-plane bilinear downsampling of a full-resolution map to every level,
/// with per-pixel renormalization back onto the simplex.
ScaleCoefficients downsample_coefficients(const CoefficientMaps& full, int scales);

/// Clamps negatives to zero and rescales each pixel's coefficient vector to
/// sum 1 (all-in-focus fallback where the sum vanishes). Sets the simplex flag.
void renormalize_simplex(CoefficientMaps& maps);

}  // namespace gkm
