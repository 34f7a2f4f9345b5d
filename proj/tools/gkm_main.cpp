#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "gkm/estimate.hpp"
#include "gkm/io.hpp"
#include "gkm/metrics.hpp"
#include "gkm/multiscale.hpp"
#include "gkm/solver.hpp"
#include "gkm/synth.hpp"

namespace {

void print6(const char* key, double v) { std::printf("%s=%.6g", key, v); }

gkm::CoefficientMaps load_coeffs(const std::string& path, const gkm::GaussianBasis& basis) {
    gkm::CoefficientMaps maps;
    maps.planes = gkm::read_planes(path);
    if (maps.planes.planes != basis.size())
        throw gkm::io_error("coefficient stack has " + std::to_string(maps.planes.planes) +
                            " planes, basis has " + std::to_string(basis.size()));
    return maps;
}

std::pair<int, int> parse_dims(const std::string& dims) {
    auto x = dims.find('x');
    if (x == std::string::npos) throw CLI::ValidationError("--dims", "expected HxW");
    return {std::stoi(dims.substr(0, x)), std::stoi(dims.substr(x + 1))};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gaussian kernel mixture defocus blur model and deblurring solver"};
    app.require_subcommand(1);

    int max_size = 21;
    int threads = 1;
    if (const char* env = std::getenv("GKM_THREADS")) threads = std::atoi(env);
    app.add_option("--max-size", max_size, "Largest Gaussian kernel size M (odd, >= 3)")
        ->capture_default_str();
    app.add_option("--threads", threads, "Thread budget for filtering")
        ->capture_default_str();

    // basis
    auto* cmd_basis = app.add_subcommand("basis", "Dump the kernel bank as a GKMF stack");
    std::string basis_out;
    cmd_basis->add_option("--out", basis_out, "Output GKMF path")->required();

    // fit-psf
    auto* cmd_fit = app.add_subcommand("fit-psf", "Fit a target PSF onto the basis");
    std::string fit_target;
    double fit_tol = 1e-10;
    int fit_max_iter = 20000;
    cmd_fit->add_option("--target", fit_target, "Target kernel, GKMF with one plane")
        ->required();
    cmd_fit->add_option("--tol", fit_tol, "Relative objective change tolerance")
        ->capture_default_str();
    cmd_fit->add_option("--max-iter", fit_max_iter, "Iteration cap")->capture_default_str();

    // blur
    auto* cmd_blur = app.add_subcommand("blur", "Apply the spatially variant blur");
    std::string blur_in, blur_coeffs, blur_out, blur_boundary = "replicate";
    double blur_noise = 0.0;
    uint64_t blur_seed = 7;
    cmd_blur->add_option("--in", blur_in, "Input PNG")->required();
    cmd_blur->add_option("--coeffs", blur_coeffs, "Coefficient maps, GKMF")->required();
    cmd_blur->add_option("--boundary", blur_boundary, "replicate or periodic")
        ->capture_default_str();
    cmd_blur->add_option("--noise", blur_noise, "Gaussian noise sigma on the 0-255 scale")
        ->capture_default_str();
    cmd_blur->add_option("--seed", blur_seed, "Noise seed")->capture_default_str();
    cmd_blur->add_option("--out", blur_out, "Output PNG")->required();

    // estimate
    auto* cmd_est = app.add_subcommand("estimate", "Coefficient maps from a defocus map");
    std::string est_defocus, est_out;
    double est_q = 0.01;
    cmd_est->add_option("--defocus", est_defocus, "Defocus map, GKMF with one plane")
        ->required();
    cmd_est->add_option("--q", est_q, "Sigma quantization step")->capture_default_str();
    cmd_est->add_option("--out", est_out, "Output GKMF path")->required();

    // deblur
    auto* cmd_deblur = app.add_subcommand("deblur", "Fixed-point deblurring");
    std::string de_in, de_coeffs, de_defocus, de_out, de_trace, de_gt;
    std::string de_boundary = "replicate";
    int de_iters = 3, de_scales = 3, de_inner = 1;
    double de_tol = 1e-5, de_q = 0.01;
    bool de_multiscale = false, de_rescale_sigma = false;
    cmd_deblur->add_option("--in", de_in, "Observed PNG")->required();
    cmd_deblur->add_option("--coeffs", de_coeffs, "Coefficient maps, GKMF");
    cmd_deblur->add_option("--defocus", de_defocus,
                           "Defocus map, GKMF (estimates coefficients inline)");
    cmd_deblur->add_option("--iters", de_iters, "Max iterations (single scale)")
        ->capture_default_str();
    cmd_deblur->add_option("--tol", de_tol, "Relative change stop tolerance")
        ->capture_default_str();
    cmd_deblur->add_option("--boundary", de_boundary, "replicate or periodic")
        ->capture_default_str();
    cmd_deblur->add_flag("--multiscale", de_multiscale, "Coarse-to-fine solve");
    cmd_deblur->add_option("--scales", de_scales, "Pyramid scales")->capture_default_str();
    cmd_deblur->add_option("--inner-iters", de_inner, "Iterations per scale")
        ->capture_default_str();
    cmd_deblur->add_flag("--rescale-sigma", de_rescale_sigma,
                         "Re-estimate per scale with halved sigma (needs --defocus)");
    cmd_deblur->add_option("--q", de_q, "Sigma quantization step for --defocus")
        ->capture_default_str();
    cmd_deblur->add_option("--out", de_out, "Deblurred PNG (16-bit)")->required();
    cmd_deblur->add_option("--trace", de_trace, "Trace CSV path");
    cmd_deblur->add_option("--gt", de_gt, "Ground truth PNG for per-scale metrics");

    // analyze
    auto* cmd_an = app.add_subcommand("analyze", "Operator norm estimate of I - B");
    std::string an_coeffs, an_dims = "64x64", an_boundary = "periodic";
    int an_iters = 100;
    uint64_t an_seed = 1;
    cmd_an->add_option("--coeffs", an_coeffs, "Coefficient maps, GKMF")->required();
    cmd_an->add_option("--dims", an_dims, "Grid dims HxW")->capture_default_str();
    cmd_an->add_option("--iters", an_iters, "Power iterations")->capture_default_str();
    cmd_an->add_option("--seed", an_seed, "Start vector seed")->capture_default_str();
    cmd_an->add_option("--boundary", an_boundary, "replicate or periodic")
        ->capture_default_str();

    // synth
    auto* cmd_synth = app.add_subcommand("synth", "Generate a synthetic defocus scene");
    std::string synth_spec, synth_out_dir;
    cmd_synth->add_option("--spec", synth_spec, "key=value scene description file")
        ->required();
    cmd_synth->add_option("--out-dir", synth_out_dir, "Output directory")->required();

    // bench
    auto* cmd_bench = app.add_subcommand("bench", "Run the synthetic benchmark");
    std::string bench_suite = "default", bench_out_dir = "bench";
    int bench_scales = 3, bench_inner = 1, bench_single_iters = 30;
    std::string bench_boundary = "replicate";
    cmd_bench->add_option("--suite", bench_suite, "Suite name (default)")
        ->capture_default_str();
    cmd_bench->add_option("--scales", bench_scales, "Pyramid scales")->capture_default_str();
    cmd_bench->add_option("--inner-iters", bench_inner, "Iterations per scale")
        ->capture_default_str();
    cmd_bench->add_option("--single-iters", bench_single_iters,
                          "Single-scale iteration budget")
        ->capture_default_str();
    cmd_bench->add_option("--boundary", bench_boundary, "replicate or periodic")
        ->capture_default_str();
    cmd_bench->add_option("--out-dir", bench_out_dir, "Output directory")
        ->capture_default_str();

    // metrics
    auto* cmd_metrics = app.add_subcommand("metrics", "PSNR/SSIM between two images");
    std::string met_a, met_b;
    cmd_metrics->add_option("--a", met_a, "First PNG")->required();
    cmd_metrics->add_option("--b", met_b, "Second PNG")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return 1;
    }

    try {
        gkm::set_thread_budget(threads);
        const gkm::GaussianBasis basis = gkm::build_gcm_basis(max_size);

        if (cmd_basis->parsed()) {
            gkm::PlaneStack stack(basis.size(), max_size, max_size);
            for (int k = 0; k < basis.size(); ++k) {
                gkm::Kernel2D padded = gkm::pad_kernel(basis.kernels[k], max_size);
                std::copy(padded.taps.begin(), padded.taps.end(), stack.plane(k));
            }
            gkm::write_planes(stack, basis_out);
        } else if (cmd_fit->parsed()) {
            gkm::PlaneStack stack = gkm::read_planes(fit_target);
            if (stack.planes != 1 || stack.height != stack.width || stack.height % 2 == 0)
                throw gkm::io_error("target must be a single odd square plane");
            gkm::Kernel2D target;
            target.size = stack.height;
            target.taps = stack.data;
            gkm::PsfFit fit = gkm::fit_psf(target, basis, fit_tol, fit_max_iter);
            std::printf("k,sigma,coefficient\n");
            for (int k = 0; k < basis.size(); ++k)
                std::printf("%d,%.6g,%.6g\n", k + 1, basis.sigmas[k],
                            fit.coefficients[k]);
            std::printf("residual,%.6g\n", fit.residual);
        } else if (cmd_blur->parsed()) {
            gkm::Image x = gkm::read_png(blur_in);
            gkm::CoefficientMaps beta = load_coeffs(blur_coeffs, basis);
            gkm::BoundaryMode mode = gkm::parse_boundary(blur_boundary);
            gkm::Image y = gkm::apply_blur(x, beta, basis, mode);
            if (blur_noise > 0.0) y = gkm::add_noise(y, blur_noise, blur_seed);
            gkm::write_png(y, blur_out);
        } else if (cmd_est->parsed()) {
            gkm::DefocusMap map;
            map.sigma = gkm::read_planes(est_defocus);
            gkm::CoefficientMaps beta = gkm::estimate_oracle(map, basis, est_q);
            gkm::write_planes(beta.planes, est_out);
        } else if (cmd_deblur->parsed()) {
            if (de_coeffs.empty() == de_defocus.empty()) {
                std::cerr << "deblur: exactly one of --coeffs or --defocus is required\n";
                return 1;
            }
            if (de_rescale_sigma && de_defocus.empty()) {
                std::cerr << "deblur: --rescale-sigma requires --defocus\n";
                return 1;
            }
            gkm::Image y = gkm::read_png(de_in);
            gkm::BoundaryMode mode = gkm::parse_boundary(de_boundary);
            gkm::DefocusMap defocus;
            gkm::CoefficientMaps beta;
            if (!de_coeffs.empty()) {
                beta = load_coeffs(de_coeffs, basis);
            } else {
                defocus.sigma = gkm::read_planes(de_defocus);
                beta = gkm::estimate_oracle(defocus, basis, de_q);
            }

            gkm::Image out;
            std::vector<gkm::IterationTrace> traces;
            std::vector<gkm::Image> scale_gts;
            if (de_multiscale) {
                gkm::SolverConfig config;
                config.scales = de_scales;
                config.inner_iters = de_inner;
                config.boundary = mode;
                config.stop.rel_change_tol = de_tol;
                gkm::ScaleCoefficients sc;
                if (de_rescale_sigma) {
                    // halve sigma per coarser level and re-estimate
                    sc.levels.resize(de_scales);
                    gkm::DefocusMap level = defocus;
                    for (int t = de_scales - 1; t >= 0; --t) {
                        gkm::DefocusMap scaled = level;
                        double factor = 1.0 / (1 << (de_scales - 1 - t));
                        for (double& v : scaled.sigma.data) v *= factor;
                        sc.levels[t] = gkm::estimate_oracle(scaled, basis, de_q);
                        if (t > 0) {
                            gkm::Image tmp(1, level.sigma.height, level.sigma.width);
                            tmp.data = level.sigma.data;
                            gkm::Image down = gkm::downsample2(tmp);
                            level.sigma = gkm::PlaneStack(1, down.height, down.width);
                            level.sigma.data = down.data;
                        }
                    }
                } else {
                    sc = gkm::downsample_coefficients(beta, de_scales);
                }
                auto [img, tr] = gkm::solve_multiscale(y, sc, basis, config);
                out = std::move(img);
                traces = std::move(tr);
            } else {
                gkm::GammaMaps gamma = gkm::derive_gamma(beta);
                gkm::StopRule stop{de_iters, de_tol};
                auto [img, tr] = gkm::solve_single_scale(y, gamma, basis, mode, stop);
                out = std::move(img);
                traces.push_back(std::move(tr));
            }
            gkm::write_png(out, de_out);
            if (!de_trace.empty()) {
                std::ofstream csv(de_trace);
                csv << "scale,iteration,residual_norm,rel_change\n";
                char buf[128];
                for (size_t s = 0; s < traces.size(); ++s)
                    for (int t = 0; t < traces[s].iterations_run; ++t) {
                        std::snprintf(buf, sizeof(buf), "%zu,%d,%.6g,%.6g\n", s + 1,
                                      t + 1, traces[s].residual_norms[t],
                                      traces[s].rel_changes[t]);
                        csv << buf;
                    }
                if (!de_gt.empty()) {
                    gkm::Image gt = gkm::read_png(de_gt);
                    csv << "metric,psnr,ssim\n";
                    char mbuf[96];
                    std::snprintf(mbuf, sizeof(mbuf), "final,%.6g,%.6g\n",
                                  gkm::psnr(out, gt), gkm::ssim(out, gt));
                    csv << mbuf;
                }
            }
        } else if (cmd_an->parsed()) {
            gkm::CoefficientMaps beta = load_coeffs(an_coeffs, basis);
            auto [h, w] = parse_dims(an_dims);
            gkm::BoundaryMode mode = gkm::parse_boundary(an_boundary);
            if (beta.planes.height != h || beta.planes.width != w)
                throw gkm::io_error("coefficient maps do not match --dims");
            double norm = gkm::operator_norm(beta, basis, mode, h, w, an_iters, an_seed);
            print6("norm", norm);
            std::printf("\n");
        } else if (cmd_synth->parsed()) {
            std::ifstream in(synth_spec);
            if (!in) throw gkm::io_error("cannot open " + synth_spec);
            std::stringstream buf;
            buf << in.rdbuf();
            gkm::SceneSpec spec = gkm::parse_scene_spec(buf.str());
            gkm::Scene scene = gkm::synth_scene(spec, basis);
            std::filesystem::create_directories(synth_out_dir);
            gkm::write_png(scene.clean, synth_out_dir + "/clean.png");
            gkm::write_png(scene.blurred, synth_out_dir + "/blurred.png");
            gkm::write_planes(scene.defocus.sigma, synth_out_dir + "/defocus.gkmf");
            gkm::write_planes(scene.coefficients.planes, synth_out_dir + "/beta.gkmf");
        } else if (cmd_bench->parsed()) {
            if (bench_suite != "default") {
                std::cerr << "bench: unknown suite " << bench_suite << "\n";
                return 1;
            }
            gkm::BenchOptions opts;
            opts.config.scales = bench_scales;
            opts.config.inner_iters = bench_inner;
            opts.config.boundary = gkm::parse_boundary(bench_boundary);
            opts.single_scale_iters = bench_single_iters;
            opts.out_dir = bench_out_dir;
            std::string report = gkm::run_bench(gkm::default_suite(), basis, opts);
            std::fputs(report.c_str(), stdout);
        } else if (cmd_metrics->parsed()) {
            gkm::Image a = gkm::read_png(met_a);
            gkm::Image b = gkm::read_png(met_b);
            print6("psnr", gkm::psnr(a, b));
            std::printf(" ");
            print6("ssim", gkm::ssim(a, b));
            std::printf("\n");
        }
    } catch (const gkm::io_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
