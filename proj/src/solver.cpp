#include "gkm/solver.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace gkm {

GammaMaps derive_gamma(const CoefficientMaps& beta) {
    GammaMaps gamma;
    gamma.planes = beta.planes;
    const size_t n = beta.planes.plane_size();
    double* g1 = gamma.planes.plane(0);
    for (size_t p = 0; p < n; ++p) g1[p] = 1.0 - g1[p];
    for (int k = 1; k < beta.planes.planes; ++k) {
        double* gk = gamma.planes.plane(k);
        for (size_t p = 0; p < n; ++p) gk[p] = -gk[p];
    }
    return gamma;
}

CoefficientMaps gamma_to_beta(const GammaMaps& gamma) {
    CoefficientMaps beta;
    beta.planes = gamma.planes;
    const size_t n = gamma.planes.plane_size();
    double* b1 = beta.planes.plane(0);
    for (size_t p = 0; p < n; ++p) b1[p] = 1.0 - b1[p];
    for (int k = 1; k < gamma.planes.planes; ++k) {
        double* bk = beta.planes.plane(k);
        for (size_t p = 0; p < n; ++p) bk[p] = -bk[p];
    }
    return beta;
}

Image fixed_point_step(const Image& x, const Image& y, const GammaMaps& gamma,
                       const GaussianBasis& basis, BoundaryMode mode,
                       const std::vector<double>& omega) {
    if (!x.same_shape(y)) throw std::invalid_argument("fixed_point_step: dim mismatch");
    return weighted_response_sum(x, gamma.planes, basis, mode, &y, omega);
}

std::pair<Image, IterationTrace> solve_single_scale(
    const Image& y, const GammaMaps& gamma, const GaussianBasis& basis,
    BoundaryMode mode, const StopRule& stop, bool keep_iterates,
    const std::vector<double>& omega, const Image* x0) {
    if (stop.max_iter < 1) throw std::invalid_argument("stop rule: max_iter must be >= 1");
    if (x0 && !x0->same_shape(y))
        throw std::invalid_argument("solve_single_scale: x0 dim mismatch");
    IterationTrace trace;
    Image x = x0 ? *x0 : y;
    double xnorm = 0.0;
    for (double v : x.data) xnorm += v * v;
    xnorm = std::sqrt(xnorm);
    for (int t = 0; t < stop.max_iter; ++t) {
        Image next = fixed_point_step(x, y, gamma, basis, mode, omega);
        // x^(t+1) = y + x - Bx, so y - Bx^(t) = x^(t+1) - x^(t)
        double diff = 0.0;
        for (size_t p = 0; p < x.data.size(); ++p) {
            double d = next.data[p] - x.data[p];
            diff += d * d;
        }
        diff = std::sqrt(diff);
        trace.residual_norms.push_back(diff);
        double rel = diff / std::max(xnorm, 1e-30);
        trace.rel_changes.push_back(rel);
        x = std::move(next);
        xnorm = 0.0;
        for (double v : x.data) xnorm += v * v;
        xnorm = std::sqrt(xnorm);
        if (keep_iterates) trace.iterates_kept.push_back(x);
        ++trace.iterations_run;
        if (rel < stop.rel_change_tol) {
            trace.converged = true;
            break;
        }
    }
    return {std::move(x), std::move(trace)};
}

double operator_norm(const CoefficientMaps& beta, const GaussianBasis& basis,
                     BoundaryMode mode, int height, int width, int iters,
                     uint64_t seed) {
    if (iters < 1) throw std::invalid_argument("operator_norm: iters must be >= 1");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> dist(0.0, 1.0);
    Image v(1, height, width);
    double norm = 0.0;
    while (norm == 0.0) {
        for (double& s : v.data) s = dist(rng);
        norm = 0.0;
        for (double s : v.data) norm += s * s;
        norm = std::sqrt(norm);
    }
    for (double& s : v.data) s /= norm;

    auto residual_op = [&](const Image& in) {
        Image b = apply_blur(in, beta, basis, mode);
        Image out = in;
        for (size_t p = 0; p < out.data.size(); ++p) out.data[p] -= b.data[p];
        return out;
    };
    auto residual_op_adj = [&](const Image& in) {
        Image b = apply_blur_adjoint(in, beta, basis, mode);
        Image out = in;
        for (size_t p = 0; p < out.data.size(); ++p) out.data[p] -= b.data[p];
        return out;
    };

    double rayleigh = 0.0;
    for (int t = 0; t < iters; ++t) {
        Image u = residual_op_adj(residual_op(v));
        rayleigh = 0.0;
        for (size_t p = 0; p < u.data.size(); ++p) rayleigh += v.data[p] * u.data[p];
        double unorm = 0.0;
        for (double s : u.data) unorm += s * s;
        unorm = std::sqrt(unorm);
        if (unorm == 0.0) return 0.0;  // B = I exactly
        for (size_t p = 0; p < u.data.size(); ++p) v.data[p] = u.data[p] / unorm;
    }
    return std::sqrt(std::max(0.0, rayleigh));
}

}  // namespace gkm
