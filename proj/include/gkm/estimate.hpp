#pragma once

#include "gkm/blur.hpp"
#include "gkm/fit.hpp"

namespace gkm {

/// Per-pixel blur standard deviation; must stay within the basis range.
struct DefocusMap {
    PlaneStack sigma;  // single plane
};

/// Coefficient maps from a ground-truth defocus map: per pixel, quantize
/// sigma to multiples of q, fit the true Gaussian of that sigma onto the
/// basis once per distinct quantized value, and write the (renormalized)
/// coefficient vector. Out-of-range sigma is an error, not a clamp.
CoefficientMaps estimate_oracle(const DefocusMap& defocus, const GaussianBasis& basis,
                                double q = 0.01);

/// Coefficient vector for a single sigma value (the memoized unit of
/// estimate_oracle). Normalized onto the simplex.
std::vector<double> fit_sigma_coefficients(double sigma, const GaussianBasis& basis);

struct PsfSample {
    int row = 0;
    int col = 0;
    Kernel2D psf;
};

/// Fits each sampled PSF onto the basis and bilinearly interpolates the
/// coefficient vectors to every pixel. Sample sites must form a full grid
/// (every row in rows x every col in cols).
CoefficientMaps estimate_from_psf_field(const std::vector<PsfSample>& samples,
                                        int height, int width,
                                        const GaussianBasis& basis);

}  // namespace gkm
