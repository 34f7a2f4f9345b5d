#include "gkm/fit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gkm {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Largest eigenvalue of the symmetric PSD matrix G, power iteration.
double largest_eigenvalue(const std::vector<std::vector<double>>& g) {
    const size_t k = g.size();
    std::vector<double> v(k, 1.0 / std::sqrt(static_cast<double>(k)));
    std::vector<double> w(k);
    double lambda = 0.0;
    for (int it = 0; it < 200; ++it) {
        for (size_t i = 0; i < k; ++i) w[i] = dot(g[i], v);
        lambda = dot(v, w);
        double norm = std::sqrt(dot(w, w));
        if (norm == 0.0) break;
        for (size_t i = 0; i < k; ++i) v[i] = w[i] / norm;
    }
    return lambda;
}

}  // namespace

PsfFit fit_psf(const Kernel2D& target, const GaussianBasis& basis, double tol,
               int max_iter, std::vector<double>* objective_trace) {
    double tsum = 0.0;
    for (double v : target.taps) tsum += v;
    if (std::abs(tsum - 1.0) > 1e-6)
        throw std::invalid_argument("fit_psf: target kernel is not normalized");

    const int support = std::max(target.size, basis.max_size);
    const Kernel2D t = pad_kernel(target, support);
    const int kcount = basis.size();
    std::vector<std::vector<double>> cols(kcount);
    for (int k = 0; k < kcount; ++k) cols[k] = pad_kernel(basis.kernels[k], support).taps;

    std::vector<std::vector<double>> gram(kcount, std::vector<double>(kcount));
    std::vector<double> atb(kcount);
    for (int i = 0; i < kcount; ++i) {
        atb[i] = dot(cols[i], t.taps);
        for (int j = i; j < kcount; ++j) gram[i][j] = gram[j][i] = dot(cols[i], cols[j]);
    }
    const double tt = dot(t.taps, t.taps);
    const double lip = largest_eigenvalue(gram);
    const double step = lip > 0.0 ? 1.0 / lip : 1.0;

    std::vector<double> beta(kcount, 0.0), grad(kcount);
    auto objective = [&] {
        double s = 0.5 * tt;
        for (int i = 0; i < kcount; ++i) s += beta[i] * (0.5 * dot(gram[i], beta) - atb[i]);
        return s;
    };

    PsfFit fit;
    double prev = objective();
    if (objective_trace) objective_trace->push_back(prev);
    int it = 0;
    for (; it < max_iter; ++it) {
        for (int i = 0; i < kcount; ++i) grad[i] = dot(gram[i], beta) - atb[i];
        for (int i = 0; i < kcount; ++i) beta[i] = std::max(0.0, beta[i] - step * grad[i]);
        double cur = objective();
        if (objective_trace) objective_trace->push_back(cur);
        double rel = std::abs(prev - cur) / std::max(std::abs(prev), 1e-30);
        prev = cur;
        if (rel < tol) {
            ++it;
            break;
        }
    }
    fit.coefficients = beta;
    fit.iterations = it;
    fit.residual = std::sqrt(std::max(0.0, 2.0 * prev)) / std::sqrt(tt);
    return fit;
}

SingleGaussianFit single_gaussian_fit(const Kernel2D& target,
                                      const std::vector<double>& sigma_grid) {
    if (sigma_grid.empty())
        throw std::invalid_argument("single_gaussian_fit: empty sigma grid");
    double tnorm = 0.0;
    for (double v : target.taps) tnorm += v * v;
    tnorm = std::sqrt(tnorm);

    SingleGaussianFit best;
    bool first = true;
    for (double sigma : sigma_grid) {
        Kernel2D g = sigma == 0.0 ? make_gaussian(1, 0.0) : make_gaussian(target.size, sigma);
        const int support = std::max(target.size, g.size);
        const Kernel2D tp = pad_kernel(target, support);
        const Kernel2D gp = pad_kernel(g, support);
        double err = 0.0;
        for (size_t i = 0; i < tp.taps.size(); ++i) {
            double d = tp.taps[i] - gp.taps[i];
            err += d * d;
        }
        double res = std::sqrt(err) / tnorm;
        if (first || res < best.residual ||
            (res == best.residual && sigma < best.best_sigma)) {
            best.best_sigma = sigma;
            best.residual = res;
            first = false;
        }
    }
    return best;
}

std::vector<double> default_sigma_grid() {
    std::vector<double> grid;
    for (int i = 1; i <= 100; ++i) grid.push_back(i * 0.05);
    return grid;
}

}  // namespace gkm
