#pragma once

#include <vector>

#include "gkm/kernel.hpp"

namespace gkm {

/// Nonnegative mixture fit of a target PSF onto a basis.
struct PsfFit {
    std::vector<double> coefficients;  // one per basis element, >= 0
    double residual = 0.0;             // ||target - mix|| / ||target||
    int iterations = 0;
};

/// NNLS by projected gradient with step 1/L, L from power iteration on the
/// Gram matrix. Stops when the relative objective change drops below tol.
/// Target and basis are compared on the common zero-padded support.
PsfFit fit_psf(const Kernel2D& target, const GaussianBasis& basis,
               double tol = 1e-10, int max_iter = 20000,
               std::vector<double>* objective_trace = nullptr);

struct SingleGaussianFit {
    double best_sigma = 0.0;
    double residual = 0.0;
};

/// Exhaustive grid search for the single normalized Gaussian closest to the
/// target in relative l2 misfit, evaluated on the target's support.
SingleGaussianFit single_gaussian_fit(const Kernel2D& target,
                                      const std::vector<double>& sigma_grid);

/// 0.05 .. 5.0 step 0.05, the default baseline grid.
std::vector<double> default_sigma_grid();

}  // namespace gkm
