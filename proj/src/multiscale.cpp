#include "gkm/multiscale.hpp"

#include <cmath>
#include <stdexcept>

namespace gkm {

std::pair<Image, std::vector<IterationTrace>> solve_multiscale(
    const Image& y, const ScaleCoefficients& coeffs, const GaussianBasis& basis,
    const SolverConfig& config) {
    if (config.scales < 1 || config.inner_iters < 1)
        throw std::invalid_argument("solver config: scales and inner_iters must be >= 1");
    if (!config.omega.empty() &&
        (static_cast<int>(config.omega.size()) != config.scales ||
         static_cast<int>(config.omega[0].size()) != basis.size()))
        throw std::invalid_argument("solver config: omega must be scales x K");
    if (static_cast<int>(coeffs.levels.size()) != config.scales)
        throw std::invalid_argument("coefficients do not cover all scales");

    Pyramid pyr = build_pyramid(y, config.scales);
    std::vector<IterationTrace> traces;
    traces.reserve(config.scales);
    Image x;
    for (int t = 0; t < config.scales; ++t) {
        const Image& yt = pyr.levels[t];
        const CoefficientMaps& bt = coeffs.levels[t];
        if (bt.planes.height != yt.height || bt.planes.width != yt.width)
            throw std::invalid_argument("coefficient maps do not match pyramid level dims");
        GammaMaps gamma = derive_gamma(bt);
        StopRule stop = config.stop;
        stop.max_iter = config.inner_iters;
        const std::vector<double> omega =
            config.omega.empty() ? std::vector<double>{} : config.omega[t];
        if (t == 0) {
            auto [xt, trace] = solve_single_scale(yt, gamma, basis, config.boundary,
                                                  stop, false, omega);
            x = std::move(xt);
            traces.push_back(std::move(trace));
        } else {
            Image init = upsample2(x, yt.height, yt.width);
            auto [xt, trace] = solve_single_scale(yt, gamma, basis, config.boundary,
                                                  stop, false, omega, &init);
            x = std::move(xt);
            traces.push_back(std::move(trace));
        }
    }
    return {std::move(x), std::move(traces)};
}

void renormalize_simplex(CoefficientMaps& maps) {
    const size_t n = maps.planes.plane_size();
    const int k = maps.planes.planes;
    for (size_t p = 0; p < n; ++p) {
        double sum = 0.0;
        for (int i = 0; i < k; ++i) {
            double& v = maps.planes.data[static_cast<size_t>(i) * n + p];
            if (v < 0.0) v = 0.0;
            sum += v;
        }
        if (sum <= 0.0) {
            maps.planes.data[p] = 1.0;  // all-in-focus fallback
            for (int i = 1; i < k; ++i) maps.planes.data[static_cast<size_t>(i) * n + p] = 0.0;
        } else {
            for (int i = 0; i < k; ++i) maps.planes.data[static_cast<size_t>(i) * n + p] /= sum;
        }
    }
    maps.simplex = true;
}

ScaleCoefficients downsample_coefficients(const CoefficientMaps& full, int scales) {
    if (scales < 1) throw std::invalid_argument("downsample_coefficients: scales >= 1");
    ScaleCoefficients out;
    out.levels.resize(scales);
    out.levels[scales - 1] = full;
    for (int t = scales - 2; t >= 0; --t) {
        const PlaneStack& finer = out.levels[t + 1].planes;
        // reuse image resampling plane by plane
        Image tmp(finer.planes, finer.height, finer.width);
        tmp.data = finer.data;
        Image down = downsample2(tmp);
        CoefficientMaps level;
        level.planes = PlaneStack(finer.planes, down.height, down.width);
        level.planes.data = down.data;
        out.levels[t] = std::move(level);
    }
    // coarser levels are renormalized; the finest stays the input bit-exactly
    for (int t = 0; t < scales - 1; ++t) renormalize_simplex(out.levels[t]);
    return out;
}

}  // namespace gkm
