#include "gkm/blur.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace gkm {

BoundaryMode parse_boundary(const std::string& name) {
    if (name == "replicate") return BoundaryMode::replicate;
    if (name == "periodic") return BoundaryMode::periodic;
    throw std::invalid_argument("unknown boundary mode: " + name);
}

namespace {

inline int wrap_index(int i, int n, BoundaryMode mode) {
    if (mode == BoundaryMode::replicate) return std::clamp(i, 0, n - 1);
    i %= n;
    return i < 0 ? i + n : i;
}

}  // namespace

void separable_filter(const double* src, double* dst, int h, int w,
                      const std::vector<double>& taps, BoundaryMode mode) {
    const int m = static_cast<int>(taps.size());
    const int r = m / 2;
    if (m == 1) {
        std::copy(src, src + static_cast<size_t>(h) * w, dst);
        return;
    }
    std::vector<double> tmp(static_cast<size_t>(h) * w);
    // horizontal pass
    parallel_rows(h, [&](int i) {
        const double* row = src + static_cast<size_t>(i) * w;
        double* out = tmp.data() + static_cast<size_t>(i) * w;
        for (int j = 0; j < w; ++j) {
            double s = 0.0;
            for (int d = -r; d <= r; ++d)
                s += taps[d + r] * row[wrap_index(j + d, w, mode)];
            out[j] = s;
        }
    });
    // vertical pass
    parallel_rows(h, [&](int i) {
        double* out = dst + static_cast<size_t>(i) * w;
        for (int j = 0; j < w; ++j) {
            double s = 0.0;
            for (int d = -r; d <= r; ++d)
                s += taps[d + r] * tmp[static_cast<size_t>(wrap_index(i + d, h, mode)) * w + j];
            out[j] = s;
        }
    });
}

void convolve2d_direct(const double* src, double* dst, int h, int w,
                       const Kernel2D& kernel, BoundaryMode mode) {
    const int r = kernel.size / 2;
    for (int i = 0; i < h; ++i)
        for (int j = 0; j < w; ++j) {
            double s = 0.0;
            for (int di = -r; di <= r; ++di)
                for (int dj = -r; dj <= r; ++dj)
                    s += kernel.at(di + r, dj + r) *
                         src[static_cast<size_t>(wrap_index(i + di, h, mode)) * w +
                             wrap_index(j + dj, w, mode)];
            dst[static_cast<size_t>(i) * w + j] = s;
        }
}

std::vector<PlaneStack> basis_responses(const Image& x, const GaussianBasis& basis,
                                        BoundaryMode mode) {
    std::vector<PlaneStack> out(x.channels);
    for (int c = 0; c < x.channels; ++c) {
        out[c] = PlaneStack(basis.size(), x.height, x.width);
        for (int k = 0; k < basis.size(); ++k)
            separable_filter(x.plane(c), out[c].plane(k), x.height, x.width,
                             basis.taps1d[k], mode);
    }
    return out;
}

void check_maps(const PlaneStack& maps, const GaussianBasis& basis, const Image& x) {
    if (maps.planes != basis.size())
        throw std::invalid_argument("coefficient maps do not match basis size");
    if (maps.height != x.height || maps.width != x.width)
        throw std::invalid_argument("coefficient maps do not match image dims");
}

Image weighted_response_sum(const Image& x, const PlaneStack& maps,
                            const GaussianBasis& basis, BoundaryMode mode,
                            const Image* base, const std::vector<double>& omega) {
    check_maps(maps, basis, x);
    if (!omega.empty() && static_cast<int>(omega.size()) != basis.size())
        throw std::invalid_argument("omega weights do not match basis size");
    const size_t n = x.plane_size();
    Image out = base ? *base : Image(x.channels, x.height, x.width);
    std::vector<double> resp(n);
    for (int c = 0; c < x.channels; ++c) {
        double* acc = out.plane(c);
        for (int k = 0; k < basis.size(); ++k) {
            const double wk = omega.empty() ? 1.0 : omega[k];
            if (wk == 0.0) continue;
            separable_filter(x.plane(c), resp.data(), x.height, x.width,
                             basis.taps1d[k], mode);
            const double* map = maps.plane(k);
            for (size_t p = 0; p < n; ++p) acc[p] += wk * map[p] * resp[p];
        }
    }
    return out;
}

Image apply_blur(const Image& x, const CoefficientMaps& beta,
                 const GaussianBasis& basis, BoundaryMode mode) {
    return weighted_response_sum(x, beta.planes, basis, mode, nullptr);
}

Image apply_blur_adjoint(const Image& y, const CoefficientMaps& beta,
                         const GaussianBasis& basis, BoundaryMode mode) {
    check_maps(beta.planes, basis, y);
    const size_t n = y.plane_size();
    Image out(y.channels, y.height, y.width);
    std::vector<double> masked(n), filtered(n);
    for (int c = 0; c < y.channels; ++c) {
        double* acc = out.plane(c);
        const double* src = y.plane(c);
        for (int k = 0; k < basis.size(); ++k) {
            const double* map = beta.planes.plane(k);
            for (size_t p = 0; p < n; ++p) masked[p] = map[p] * src[p];
            // Gaussians are reflection-symmetric, so the flipped kernel is itself.
            separable_filter(masked.data(), filtered.data(), y.height, y.width,
                             basis.taps1d[k], mode);
            for (size_t p = 0; p < n; ++p) acc[p] += filtered[p];
        }
    }
    return out;
}

Image add_noise(const Image& x, double sigma_hat, uint64_t seed) {
    if (sigma_hat < 0.0) throw std::invalid_argument("add_noise: sigma must be >= 0");
    Image out = x;
    if (sigma_hat == 0.0) return out;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> dist(0.0, sigma_hat / 255.0);
    for (double& v : out.data) v += dist(rng);
    return out;
}

}  // namespace gkm
