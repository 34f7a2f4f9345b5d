"""Gaussian kernel mixture defocus blur model and fixed-point deblurring."""

from ._core import (
    GaussianBasis,
    add_noise,
    apply_blur,
    apply_blur_adjoint,
    build_gcm_basis,
    build_pyramid,
    derive_gamma,
    downsample2,
    estimate_oracle,
    fit_psf,
    make_gaussian,
    make_pattern,
    operator_norm,
    psnr,
    read_planes,
    read_png,
    set_thread_budget,
    solve_multiscale,
    solve_single_scale,
    ssim,
    upsample2,
    write_planes,
    write_png,
)

__all__ = [
    "GaussianBasis",
    "add_noise",
    "apply_blur",
    "apply_blur_adjoint",
    "build_gcm_basis",
    "build_pyramid",
    "derive_gamma",
    "downsample2",
    "estimate_oracle",
    "fit_psf",
    "make_gaussian",
    "make_pattern",
    "operator_norm",
    "psnr",
    "read_planes",
    "read_png",
    "set_thread_budget",
    "solve_multiscale",
    "solve_single_scale",
    "ssim",
    "upsample2",
    "write_planes",
    "write_png",
]
