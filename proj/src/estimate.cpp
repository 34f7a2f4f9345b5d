#include "gkm/estimate.hpp"

#include "gkm/multiscale.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

namespace gkm {

std::vector<double> fit_sigma_coefficients(double sigma, const GaussianBasis& basis) {
    std::vector<double> coeffs(basis.size(), 0.0);
    if (sigma == 0.0) {
        coeffs[0] = 1.0;
        return coeffs;
    }
    int support = static_cast<int>(std::ceil(6.0 * sigma));
    if (support % 2 == 0) ++support;
    support = std::clamp(support, 3, basis.max_size);
    Kernel2D target = make_gaussian(support, sigma);
    PsfFit fit = fit_psf(target, basis, 1e-12, 200000);
    double sum = 0.0;
    for (double c : fit.coefficients) sum += c;
    if (sum <= 0.0) throw std::runtime_error("sigma fit produced an empty mixture");
    for (int k = 0; k < basis.size(); ++k) coeffs[k] = fit.coefficients[k] / sum;
    return coeffs;
}

CoefficientMaps estimate_oracle(const DefocusMap& defocus, const GaussianBasis& basis,
                                double q) {
    if (q <= 0.0) throw std::invalid_argument("estimate_oracle: q must be > 0");
    if (defocus.sigma.planes != 1)
        throw std::invalid_argument("estimate_oracle: defocus map must have one plane");
    const size_t n = defocus.sigma.plane_size();
    const double sigma_max = basis.sigma_max();

    // quantize, validate, collect distinct values
    std::vector<int64_t> qidx(n);
    std::set<int64_t> distinct;
    for (size_t p = 0; p < n; ++p) {
        double s = defocus.sigma.data[p];
        if (s < 0.0 || s > sigma_max + 1e-12)
            throw std::invalid_argument("estimate_oracle: sigma outside basis range");
        int64_t i = static_cast<int64_t>(std::llround(s / q));
        qidx[p] = i;
        distinct.insert(i);
    }
    std::map<int64_t, std::vector<double>> memo;
    for (int64_t i : distinct) {
        double s = std::min(i * q, sigma_max);
        memo[i] = fit_sigma_coefficients(s, basis);
    }

    CoefficientMaps maps;
    maps.planes = PlaneStack(basis.size(), defocus.sigma.height, defocus.sigma.width);
    for (size_t p = 0; p < n; ++p) {
        const std::vector<double>& c = memo[qidx[p]];
        for (int k = 0; k < basis.size(); ++k)
            maps.planes.data[static_cast<size_t>(k) * n + p] = c[k];
    }
    maps.simplex = true;
    return maps;
}

CoefficientMaps estimate_from_psf_field(const std::vector<PsfSample>& samples,
                                        int height, int width,
                                        const GaussianBasis& basis) {
    if (samples.empty())
        throw std::invalid_argument("estimate_from_psf_field: empty sample grid");
    std::set<int> rowset, colset;
    for (const auto& s : samples) {
        rowset.insert(s.row);
        colset.insert(s.col);
    }
    std::vector<int> rows(rowset.begin(), rowset.end());
    std::vector<int> cols(colset.begin(), colset.end());
    std::map<std::pair<int, int>, std::vector<double>> grid;
    for (const auto& s : samples) {
        PsfFit fit = fit_psf(s.psf, basis, 1e-12, 200000);
        double sum = 0.0;
        for (double c : fit.coefficients) sum += c;
        std::vector<double> c = fit.coefficients;
        if (sum > 0.0)
            for (double& v : c) v /= sum;
        grid[{s.row, s.col}] = std::move(c);
    }
    if (grid.size() != rows.size() * cols.size())
        throw std::invalid_argument("estimate_from_psf_field: sample sites must form a grid");

    auto axis_locate = [](const std::vector<int>& axis, int pos, int& lo, double& frac) {
        if (pos <= axis.front()) {
            lo = 0;
            frac = 0.0;
            return;
        }
        if (pos >= axis.back()) {
            lo = static_cast<int>(axis.size()) - 1;
            frac = 0.0;
            return;
        }
        int i = static_cast<int>(std::upper_bound(axis.begin(), axis.end(), pos) -
                                 axis.begin()) - 1;
        lo = i;
        frac = static_cast<double>(pos - axis[i]) / (axis[i + 1] - axis[i]);
    };

    const int kcount = basis.size();
    CoefficientMaps maps;
    maps.planes = PlaneStack(kcount, height, width);
    const size_t n = maps.planes.plane_size();
    for (int i = 0; i < height; ++i) {
        int r0;
        double fr;
        axis_locate(rows, i, r0, fr);
        int r1 = std::min(r0 + 1, static_cast<int>(rows.size()) - 1);
        for (int j = 0; j < width; ++j) {
            int c0;
            double fc;
            axis_locate(cols, j, c0, fc);
            int c1 = std::min(c0 + 1, static_cast<int>(cols.size()) - 1);
            const auto& a = grid[{rows[r0], cols[c0]}];
            const auto& b = grid[{rows[r0], cols[c1]}];
            const auto& c = grid[{rows[r1], cols[c0]}];
            const auto& d = grid[{rows[r1], cols[c1]}];
            const size_t p = static_cast<size_t>(i) * width + j;
            for (int k = 0; k < kcount; ++k) {
                double top = a[k] + fc * (b[k] - a[k]);
                double bot = c[k] + fc * (d[k] - c[k]);
                maps.planes.data[static_cast<size_t>(k) * n + p] = top + fr * (bot - top);
            }
        }
    }
    renormalize_simplex(maps);
    return maps;
}

}  // namespace gkm
