#pragma once

#include <optional>

#include "gkm/blur.hpp"

namespace gkm {

struct StopRule {
    int max_iter = 3;
    double rel_change_tol = 1e-5;
};

struct IterationTrace {
    std::vector<double> residual_norms;  // ||y - B x^(t)||_2 per iteration
    std::vector<double> rel_changes;
    int iterations_run = 0;
    bool converged = false;
    std::vector<Image> iterates_kept;  // populated only on request
};

/// gamma_1 = 1 - beta_1, gamma_k = -beta_k for k > 1.
GammaMaps derive_gamma(const CoefficientMaps& beta);

/// Inverse map: beta_1 = 1 - gamma_1, beta_k = -gamma_k for k > 1.
CoefficientMaps gamma_to_beta(const GammaMaps& gamma);

/// One update x <- y + sum_k gamma_k . (g_k (x) x), optionally with per-kernel
/// omega scaling. Equals y + x - Bx when gamma derives from beta.
Image fixed_point_step(const Image& x, const Image& y, const GammaMaps& gamma,
                       const GaussianBasis& basis, BoundaryMode mode,
                       const std::vector<double>& omega = {});

/// Iterates from x^(1) = y (or x0 when given, used by the multiscale solver
/// to warm-start from the upsampled coarser result) until the stop rule
/// fires. Non-convergence is reported in the trace, never thrown.
std::pair<Image, IterationTrace> solve_single_scale(
    const Image& y, const GammaMaps& gamma, const GaussianBasis& basis,
    BoundaryMode mode, const StopRule& stop, bool keep_iterates = false,
    const std::vector<double>& omega = {}, const Image* x0 = nullptr);

/// Power iteration estimate of ||I - B||_2 on a 1-channel grid of the given
/// dims; a lower bound converging to the norm. Analysis tool only.
double operator_norm(const CoefficientMaps& beta, const GaussianBasis& basis,
                     BoundaryMode mode, int height, int width, int iters,
                     uint64_t seed);

}  // namespace gkm
