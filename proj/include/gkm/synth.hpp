#pragma once

#include <string>

#include "gkm/estimate.hpp"
#include "gkm/multiscale.hpp"

namespace gkm {

enum class Pattern { testcard, checker, edges, import_png };
enum class DefocusKind { constant, ramp, two_plane, radial };

struct SceneSpec {
    std::string name = "scene";
    Pattern pattern = Pattern::testcard;
    std::string import_path;  // pattern == import_png
    DefocusKind defocus = DefocusKind::constant;
    double sigma = 1.0;      // constant
    double sigma_lo = 0.0;   // ramp
    double sigma_hi = 4.0;   // ramp / radial max
    double sigma_fg = 0.0;   // two-plane
    double sigma_bg = 3.0;   // two-plane
    double noise = 0.0;      // sigma-hat on the 0-255 scale
    uint64_t seed = 7;
    int height = 128;
    int width = 128;
};

struct Scene {
    Image clean;
    Image blurred;
    DefocusMap defocus;
    CoefficientMaps coefficients;
};

/// Procedural test pattern in [0,1], single channel.
Image make_pattern(Pattern p, int height, int width, const std::string& import_path = {});

/// Defocus map for the spec's geometry. Two-plane uses a centered rectangle
/// covering a quarter of the image as the in-focus foreground.
DefocusMap make_defocus_map(const SceneSpec& spec);

/// Pattern + defocus map + oracle coefficients + blur + noise.
Scene synth_scene(const SceneSpec& spec, const GaussianBasis& basis,
                  BoundaryMode mode = BoundaryMode::replicate);

/// The CI-sized benchmark suite: test card 128x128 with constant sigma 1,
/// two-plane 0/3 and ramp 0->4 defocus, each at every sigma-hat in `noises`.
std::vector<SceneSpec> default_suite(const std::vector<double>& noises = {0, 1, 3, 5});

struct BenchOptions {
    SolverConfig config;          // multiscale method configuration
    int single_scale_iters = 30;  // single-scale method iteration budget
    std::string out_dir;
    bool write_images = true;
};

/// Runs every scene through both solver paths and returns the CSV report
/// (header scene,pattern,sigma_hat,method,psnr_blurred,psnr_out,ssim_blurred,
/// ssim_out,seconds). Also writes the CSV and PNG artifacts to out_dir.
std::string run_bench(const std::vector<SceneSpec>& suite, const GaussianBasis& basis,
                      const BenchOptions& opts);

/// key=value scene description used by the synth subcommand.
SceneSpec parse_scene_spec(const std::string& text);

}  // namespace gkm
