"""Command line pipeline: simulate, undersample, reconstruct, score.

Subcommands
-----------
phantom      write a ground-truth image sequence and its coil maps
mask         build a sampling mask and print its measured acceleration
undersample  simulate noisy undersampled k-space from image plus maps
recon        reconstruct k-space with zero-filled, sense, vsharp, or
             vsharp-arn
eval         score a reconstruction against a reference volume
bench        run a full scheme-by-acceleration sweep and write reports

Every subcommand is deterministic given its flags; randomness flows
through --seed.  Exit codes: 0 success, 2 usage or configuration error,
3 malformed container file, 4 numeric failure.  recon accepts --config
pointing at a JSON object with one key per flag (keys use underscores,
e.g. {"arn_cascades": 4}); explicit flags override the config file,
which overrides built-in defaults.

The undersample augmentation coin flips draw from the pinned generator
seeded with seed XOR 0x415547, one uniform per requested flag in the
fixed order hflip, vflip, time-reverse, so the same seed reproduces the
same byte-identical output file.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import arn as arn_mod
from . import baselines, calibration, dataio, fourier, metrics, phantom, sampling
from . import vsharp as vsharp_mod
from .core import DynamicImage, MultiCoilKSpace, SamplingMask, SensitivityMaps, rss_combine
from .errors import (
    DivergenceError,
    FormatError,
    InvalidSpecError,
    NumericError,
    ReconError,
)
from .priors import DenoiserSpec, KINDS as PRIOR_KINDS

__all__ = ["main", "run_bench_case", "BenchCase", "BenchCaseResult", "desk_cases"]

AUGMENT_SALT = 0x415547
AUGMENT_ORDER = ("hflip", "vflip", "time-reverse")
METHODS = ("zero-filled", "sense", "vsharp", "vsharp-arn")

RECON_DEFAULTS = {
    "iterations": 12,
    "x_steps": 6,
    "rho": 1.0,
    "step_size": "auto",
    "denoiser": "wavelet_soft_threshold",
    "lam": 2e-2,
    "tv_iterations": 20,
    "per_iterate_dc": True,
    "u_init": "zero",
    "arn_cascades": 8,
    "arn_eta": 1.0,
    "arn_regularizer": "wavelet_soft_threshold",
    "arn_lambda": 2e-2,
    "arn_tv_iterations": 20,
    "mu": 1e-2,
    "cg_iterations": 15,
    "tol": 1e-6,
    "acs_fraction": 0.125,
}


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _step_size(text: str):
    if text == "auto":
        return "auto"
    return float(text)


def _csv_list(text: str) -> tuple[str, ...]:
    return tuple(part.strip() for part in text.split(",") if part.strip())


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cmrecon",
        description="Dynamic multi-coil MRI reconstruction pipeline",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("phantom", help="write ground-truth images and coil maps")
    p.add_argument("--ny", type=_positive_int, default=128)
    p.add_argument("--nx", type=_positive_int, default=128)
    p.add_argument("--nf", type=_positive_int, default=12)
    p.add_argument("--nc", type=_positive_int, default=8)
    p.add_argument("--beat-amplitude", type=float, default=0.15)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--image", required=True, help="output image file")
    p.add_argument("--maps", required=True, help="output maps file")
    p.set_defaults(func=cmd_phantom)

    p = sub.add_parser("mask", help="build a sampling mask")
    p.add_argument("--scheme", choices=sampling.SCHEMES, required=True)
    p.add_argument("--R", type=_positive_int, required=True, dest="R")
    p.add_argument("--nx", type=_positive_int, required=True)
    p.add_argument("--ny", type=_positive_int, default=None, help="defaults to nx")
    p.add_argument("--nf", type=_positive_int, default=1)
    p.add_argument("--acs", type=float, default=0.0, dest="acs_fraction")
    p.add_argument("--kt", action="store_true", default=False)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_mask)

    p = sub.add_parser("undersample", help="simulate undersampled k-space")
    p.add_argument("--image", required=True)
    p.add_argument("--maps", required=True)
    p.add_argument("--mask", required=True)
    p.add_argument("--noise-sigma", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument(
        "--augment",
        type=_csv_list,
        default=(),
        help="comma list from hflip,vflip,time-reverse; each applies "
        "with probability --augment-prob",
    )
    p.add_argument("--augment-prob", type=float, default=0.5)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_undersample)

    p = sub.add_parser("recon", help="reconstruct undersampled k-space")
    p.add_argument("--kspace", required=True)
    p.add_argument("--mask", required=True)
    p.add_argument("--maps", default=None, help="sensitivity maps file")
    p.add_argument(
        "--calibrate",
        action="store_true",
        help="estimate maps from the ACS block instead of --maps",
    )
    p.add_argument("--acs", type=float, default=None, dest="acs_fraction",
                   help="ACS fraction used with --calibrate")
    p.add_argument("--method", choices=METHODS, required=True)
    p.add_argument("--config", default=None, help="JSON file with one key per flag")
    p.add_argument("--out", required=True)
    p.add_argument("--trace", default=None, help="directory for solver trace dumps")
    p.add_argument("--iterations", type=_positive_int, default=None)
    p.add_argument("--x-steps", type=_positive_int, default=None)
    p.add_argument("--rho", type=float, default=None)
    p.add_argument("--step-size", type=_step_size, default=None)
    p.add_argument("--denoiser", choices=PRIOR_KINDS, default=None)
    p.add_argument("--lambda", type=float, default=None, dest="lam")
    p.add_argument("--tv-iterations", type=_positive_int, default=None)
    p.add_argument("--per-iterate-dc", action=argparse.BooleanOptionalAction,
                   default=None)
    p.add_argument("--u-init", choices=vsharp_mod.U_INIT_MODES, default=None)
    p.add_argument("--arn-cascades", type=_positive_int, default=None)
    p.add_argument("--arn-eta", type=float, default=None)
    p.add_argument("--arn-regularizer", choices=PRIOR_KINDS, default=None)
    p.add_argument("--arn-lambda", type=float, default=None)
    p.add_argument("--arn-tv-iterations", type=_positive_int, default=None)
    p.add_argument("--mu", type=float, default=None)
    p.add_argument("--cg-iterations", type=_positive_int, default=None)
    p.add_argument("--tol", type=float, default=None)
    p.set_defaults(func=cmd_recon)

    p = sub.add_parser("eval", help="score a reconstruction")
    p.add_argument("--pred", required=True)
    p.add_argument("--ref", required=True)
    p.add_argument("--method", default="")
    p.add_argument("--volume", default="")
    p.add_argument("--acceleration", type=float, default=0.0)
    p.add_argument("--scheme", default="")
    p.add_argument("--wall-seconds", type=float, default=0.0)
    p.add_argument("--out", required=True, help="report base path (.csv/.json)")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("bench", help="run the benchmark sweep")
    p.add_argument("--preset", choices=("desk-A", "desk-B"), default="desk-A")
    p.add_argument("--out-dir", required=True)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--noise-sigma", type=float, default=None)
    p.add_argument("--acs", type=float, default=None, dest="acs_fraction")
    p.add_argument("--methods", type=_csv_list, default=None)
    p.add_argument("--schemes", type=_csv_list, default=None)
    p.add_argument("--accelerations", type=_csv_list, default=None)
    p.add_argument("--ny", type=_positive_int, default=None)
    p.add_argument("--nx", type=_positive_int, default=None)
    p.add_argument("--nf", type=_positive_int, default=None)
    p.add_argument("--nc", type=_positive_int, default=None)
    p.add_argument("--png", action=argparse.BooleanOptionalAction, default=True)
    p.set_defaults(func=cmd_bench)

    return parser


# -- container helpers -------------------------------------------------

def _load_image(path) -> DynamicImage:
    arr, kind = dataio.read_array(path)
    if kind != "image":
        raise InvalidSpecError(f"{path} holds {kind}, expected an image")
    if arr.ndim == 2:
        arr = arr[None, :, :]
    return DynamicImage(arr)


def _load_maps(path) -> SensitivityMaps:
    arr, kind = dataio.read_array(path)
    if kind != "maps":
        raise InvalidSpecError(f"{path} holds {kind}, expected maps")
    return SensitivityMaps(arr)


def _load_mask(path) -> SamplingMask:
    arr, kind = dataio.read_array(path)
    if kind != "mask":
        raise InvalidSpecError(f"{path} holds {kind}, expected a mask")
    if arr.ndim == 2:
        arr = arr[None, :, :]
    return SamplingMask(arr)


def _load_kspace(path) -> MultiCoilKSpace:
    arr, kind = dataio.read_array(path)
    if kind != "kspace":
        raise InvalidSpecError(f"{path} holds {kind}, expected k-space")
    return MultiCoilKSpace(arr)


# -- subcommands --------------------------------------------------------

def cmd_phantom(args) -> int:
    spec = phantom.PhantomSpec(
        ny=args.ny, nx=args.nx, nf=args.nf, nc=args.nc,
        beat_amplitude=args.beat_amplitude, noise_sigma=0.0, seed=args.seed,
    )
    image = phantom.generate_phantom(spec)
    maps = phantom.coil_maps(spec)
    dataio.write_array(args.image, image.data, "image")
    dataio.write_array(args.maps, maps.data, "maps")
    print(f"phantom {args.nf}x{args.ny}x{args.nx}, {args.nc} coils -> "
          f"{args.image}, {args.maps}")
    return 0


def cmd_mask(args) -> int:
    ny = args.ny if args.ny is not None else args.nx
    spec = sampling.MaskSpec(
        scheme=args.scheme, R=args.R, nf=args.nf, ny=ny, nx=args.nx,
        acs_fraction=args.acs_fraction, kt_mode=args.kt, seed=args.seed,
    )
    mask = sampling.generate_mask(spec)
    dataio.write_array(args.out, mask.data, "mask")
    acc = sampling.measured_acceleration(mask)
    print(f"measured acceleration {acc:.3f}")
    return 0


def cmd_undersample(args) -> int:
    image = _load_image(args.image)
    maps = _load_maps(args.maps)
    mask = _load_mask(args.mask)
    requested = set(args.augment)
    unknown = requested.difference(AUGMENT_ORDER)
    if unknown:
        raise InvalidSpecError(
            f"unknown augmentations {sorted(unknown)}, expected {AUGMENT_ORDER}"
        )
    if not 0.0 <= args.augment_prob <= 1.0:
        raise InvalidSpecError("augment probability must lie in [0, 1]")

    full = fourier.coil_kspace(image, maps)
    applied = []
    if requested:
        rng = sampling.Rng(args.seed ^ AUGMENT_SALT)
        flags = {}
        for name in AUGMENT_ORDER:
            if name in requested:
                flags[name] = rng.uniform() < args.augment_prob
                if flags[name]:
                    applied.append(name)
        full = phantom.augment(
            full,
            hflip=flags.get("hflip", False),
            vflip=flags.get("vflip", False),
            time_reverse=flags.get("time-reverse", False),
        )
    y = phantom.corrupt(full, mask, args.noise_sigma, args.seed)
    dataio.write_array(args.out, y.data, "kspace")
    applied_text = ",".join(applied) if applied else "none"
    print(f"undersampled k-space -> {args.out} (augmented: {applied_text})")
    return 0


def _merged_options(args) -> dict:
    config = {}
    if args.config is not None:
        try:
            config = json.loads(Path(args.config).read_text())
        except json.JSONDecodeError as exc:
            raise InvalidSpecError(f"config file is not valid JSON: {exc}") from exc
        if not isinstance(config, dict):
            raise InvalidSpecError("config file must hold a JSON object")
        unknown = set(config).difference(RECON_DEFAULTS)
        if unknown:
            raise InvalidSpecError(f"unknown config keys {sorted(unknown)}")
    options = {}
    for key, default in RECON_DEFAULTS.items():
        flag_value = getattr(args, key, None)
        if flag_value is not None:
            options[key] = flag_value
        elif key in config:
            options[key] = config[key]
        else:
            options[key] = default
    return options


def _vsharp_config(options) -> vsharp_mod.VSharpConfig:
    denoiser = DenoiserSpec(
        kind=options["denoiser"],
        lam=float(options["lam"]),
        tv_iterations=int(options["tv_iterations"]),
    )
    return vsharp_mod.VSharpConfig(
        iterations=int(options["iterations"]),
        x_steps=int(options["x_steps"]),
        rho=float(options["rho"]),
        step_size=options["step_size"],
        denoiser=denoiser,
        per_iterate_dc=bool(options["per_iterate_dc"]),
        u_init=options["u_init"],
    )


def _arn_config(options) -> arn_mod.ArnConfig:
    regularizer = DenoiserSpec(
        kind=options["arn_regularizer"],
        lam=float(options["arn_lambda"]),
        tv_iterations=int(options["arn_tv_iterations"]),
    )
    return arn_mod.ArnConfig(
        cascades=int(options["arn_cascades"]),
        eta=float(options["arn_eta"]),
        regularizer=regularizer,
    )


def _write_trace(trace_dir, trace, refined) -> None:
    out = Path(trace_dir)
    out.mkdir(parents=True, exist_ok=True)
    dataio.write_array(out / "z0.cmrx", trace.z0.data, "image")
    for j, (x_hat, y_hat) in enumerate(trace.iterates, start=1):
        dataio.write_array(out / f"x_{j:02d}.cmrx", x_hat.data, "image")
        dataio.write_array(out / f"y_{j:02d}.cmrx", y_hat.data, "kspace")
    if refined is not None:
        dataio.write_array(out / "refined.cmrx", refined.data, "kspace")
    (out / "residuals.json").write_text(
        json.dumps(list(trace.residual_history), indent=2) + "\n"
    )


def cmd_recon(args) -> int:
    y = _load_kspace(args.kspace)
    mask = _load_mask(args.mask)
    options = _merged_options(args)

    if args.calibrate:
        region_spec = sampling.MaskSpec(
            scheme="equispaced", R=1, nf=mask.nf, ny=mask.ny, nx=mask.nx,
            acs_fraction=float(options["acs_fraction"]),
        )
        maps = calibration.estimate_sensitivities(
            y, sampling.acs_region_mask(region_spec)
        )
    elif args.maps is not None:
        maps = _load_maps(args.maps)
    else:
        raise InvalidSpecError("recon needs --maps FILE or --calibrate")
    op = fourier.AcquisitionOperator(maps, mask)

    refined = None
    trace = None
    if args.method == "zero-filled":
        image = baselines.zero_filled(y, op)
    elif args.method == "sense":
        image = baselines.cg_sense(
            y, op,
            mu=float(options["mu"]),
            iterations=int(options["cg_iterations"]),
            tol=float(options["tol"]),
        )
    else:
        cfg = _vsharp_config(options)
        z0 = None
        if args.method == "vsharp-arn":
            refined = arn_mod.refine(y, op, _arn_config(options))
            z0 = arn_mod.init_z0(refined, op)
        trace = vsharp_mod.reconstruct(y, op, cfg, z0_override=z0)
        image = trace.final_image

    dataio.write_array(args.out, image.data, "image")
    if args.trace is not None and trace is not None:
        _write_trace(args.trace, trace, refined)
    print(f"{args.method} reconstruction -> {args.out}")
    return 0


def cmd_eval(args) -> int:
    pred = _load_image(args.pred)
    ref = _load_image(args.ref)
    report = metrics.evaluate_volume(
        pred, ref,
        method=args.method, volume=args.volume,
        acceleration=args.acceleration, scheme=args.scheme,
        wall_seconds=args.wall_seconds,
    )
    csv_path, json_path = dataio.write_report(args.out, [report])
    print(
        f"ssim {report.ssim:.4f}  ssim3d {report.ssim3d:.4f}  "
        f"psnr {report.psnr:.2f}  nmse {report.nmse:.3e} -> {csv_path}, {json_path}"
    )
    return 0


# -- bench --------------------------------------------------------------

@dataclass(frozen=True)
class BenchCase:
    """One cell of the sweep: geometry, sampling, noise, and seeds."""

    ny: int = 128
    nx: int = 128
    nf: int = 12
    nc: int = 8
    scheme: str = "equispaced"
    R: int = 4
    acs_fraction: float = 0.125
    kt_mode: bool = False
    noise_sigma: float = 0.01
    beat_amplitude: float = 0.15
    mask_seed: int = 1
    noise_seed: int = 2

    @property
    def volume(self) -> str:
        return f"{self.scheme}-R{self.R}"


@dataclass(frozen=True)
class BenchCaseResult:
    """Per-method outputs of one case plus consistency verdicts."""

    case: BenchCase
    acceleration: float
    reference: DynamicImage
    images: dict
    reports: tuple
    dc_exact: dict
    vsharp_config: vsharp_mod.VSharpConfig
    arn_config: arn_mod.ArnConfig


def desk_cases(
    preset: str = "desk-A",
    seed: int = 7,
    schemes=("equispaced", "gaussian1d", "radial"),
    accelerations=(4, 8),
    ny: int = 128,
    nx: int = 128,
    nf: int = 12,
    nc: int = 8,
    noise_sigma: float = 0.01,
    acs_fraction: float = 0.125,
) -> tuple[BenchCase, ...]:
    """Deterministic case grid for the desk-scale suite."""
    kt_mode = preset == "desk-B"
    cases = []
    index = 0
    for scheme in schemes:
        for R in accelerations:
            cases.append(
                BenchCase(
                    ny=ny, nx=nx, nf=nf, nc=nc,
                    scheme=scheme, R=int(R),
                    acs_fraction=acs_fraction, kt_mode=kt_mode,
                    noise_sigma=noise_sigma,
                    mask_seed=seed + 1000 * index + 1,
                    noise_seed=seed + 1000 * index + 2,
                )
            )
            index += 1
    return tuple(cases)


def run_bench_case(
    case: BenchCase,
    methods=METHODS,
    vsharp_config: vsharp_mod.VSharpConfig | None = None,
    arn_config: arn_mod.ArnConfig | None = None,
) -> BenchCaseResult:
    """Simulate, calibrate, and reconstruct one case with every method.

    The reference is the root-sum-of-squares image of the fully sampled
    noiseless coil data.  Maps are estimated from the declared ACS block
    of the undersampled measurement, so every method sees the same,
    honestly calibrated operator.  Data-consistency bitwise checks are
    evaluated while each solver trace is still in memory.
    """
    if vsharp_config is None:
        vsharp_config = _vsharp_config(RECON_DEFAULTS)
    if arn_config is None:
        arn_config = _arn_config(RECON_DEFAULTS)

    pspec = phantom.PhantomSpec(
        ny=case.ny, nx=case.nx, nf=case.nf, nc=case.nc,
        beat_amplitude=case.beat_amplitude,
        noise_sigma=case.noise_sigma, seed=case.noise_seed,
    )
    truth = phantom.generate_phantom(pspec)
    true_maps = phantom.coil_maps(pspec)
    full = fourier.coil_kspace(truth, true_maps)
    reference = rss_combine(fourier.ifft2c(full.data))

    mask_spec = sampling.MaskSpec(
        scheme=case.scheme, R=case.R, nf=case.nf, ny=case.ny, nx=case.nx,
        acs_fraction=case.acs_fraction, kt_mode=case.kt_mode,
        seed=case.mask_seed,
    )
    mask = sampling.generate_mask(mask_spec)
    acceleration = sampling.measured_acceleration(mask)
    y = phantom.simulate(truth, true_maps, mask, case.noise_sigma, case.noise_seed)
    maps = calibration.estimate_sensitivities(
        y, sampling.acs_region_mask(mask_spec)
    )
    op = fourier.AcquisitionOperator(maps, mask)

    images = {}
    reports = []
    dc_exact = {}
    for method in methods:
        start = time.perf_counter()
        if method == "zero-filled":
            image = baselines.zero_filled(y, op)
        elif method == "sense":
            image = baselines.cg_sense(y, op)
        elif method == "vsharp":
            trace = vsharp_mod.reconstruct(y, op, vsharp_config)
            image = trace.final_image
            dc_exact[method] = all(
                fourier.sampled_entries_match(y_hat.data, y.data, mask.data)
                for _, y_hat in trace.iterates
            )
            del trace
        elif method == "vsharp-arn":
            refined = arn_mod.refine(y, op, arn_config)
            z0 = arn_mod.init_z0(refined, op)
            trace = vsharp_mod.reconstruct(y, op, vsharp_config, z0_override=z0)
            image = trace.final_image
            dc_exact[method] = fourier.sampled_entries_match(
                refined.data, y.data, mask.data
            ) and all(
                fourier.sampled_entries_match(y_hat.data, y.data, mask.data)
                for _, y_hat in trace.iterates
            )
            del trace, refined
        else:
            raise InvalidSpecError(f"unknown method {method!r}")
        wall = time.perf_counter() - start
        images[method] = image
        reports.append(
            metrics.evaluate_volume(
                image, reference,
                method=method, volume=case.volume,
                acceleration=acceleration, scheme=case.scheme,
                wall_seconds=wall,
            )
        )
    return BenchCaseResult(
        case=case,
        acceleration=acceleration,
        reference=reference,
        images=images,
        reports=tuple(reports),
        dc_exact=dc_exact,
        vsharp_config=vsharp_config,
        arn_config=arn_config,
    )


def _png_strip(image: DynamicImage, path: Path) -> None:
    """Frames tiled horizontally, min-max normalized per frame."""
    from PIL import Image

    mags = image.magnitude
    tiles = []
    for frame in mags:
        lo = float(frame.min())
        hi = float(frame.max())
        if hi > lo:
            scaled = (frame - lo) / (hi - lo)
        else:
            scaled = np.zeros_like(frame)
        tiles.append((scaled * 255.0).round().astype(np.uint8))
    strip = np.concatenate(tiles, axis=1)
    Image.fromarray(strip, mode="L").save(path)


def cmd_bench(args) -> int:
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    kwargs = {}
    if args.seed is not None:
        kwargs["seed"] = args.seed
    if args.noise_sigma is not None:
        kwargs["noise_sigma"] = args.noise_sigma
    if args.acs_fraction is not None:
        kwargs["acs_fraction"] = args.acs_fraction
    if args.schemes is not None:
        unknown = set(args.schemes).difference(sampling.SCHEMES)
        if unknown:
            raise InvalidSpecError(f"unknown schemes {sorted(unknown)}")
        kwargs["schemes"] = args.schemes
    if args.accelerations is not None:
        kwargs["accelerations"] = tuple(int(a) for a in args.accelerations)
    for name in ("ny", "nx", "nf", "nc"):
        value = getattr(args, name)
        if value is not None:
            kwargs[name] = value
    methods = METHODS
    if args.methods is not None:
        unknown = set(args.methods).difference(METHODS)
        if unknown:
            raise InvalidSpecError(f"unknown methods {sorted(unknown)}")
        methods = args.methods

    cases = desk_cases(preset=args.preset, **kwargs)
    all_reports = []
    png_dir = out_dir / "png"
    if args.png:
        png_dir.mkdir(exist_ok=True)
    for case in cases:
        result = run_bench_case(case, methods=methods)
        all_reports.extend(result.reports)
        failed_dc = [m for m, ok in result.dc_exact.items() if not ok]
        if failed_dc:
            raise NumericError(
                f"data consistency violated for {failed_dc} on {case.volume}"
            )
        if args.png:
            _png_strip(result.reference, png_dir / f"{case.volume}-reference.png")
            for method, image in result.images.items():
                _png_strip(image, png_dir / f"{case.volume}-{method}.png")
        done = ", ".join(
            f"{r.method} ssim {r.ssim:.4f}" for r in result.reports
        )
        print(f"[{case.volume}] R_measured {result.acceleration:.2f}: {done}")
    csv_path, json_path = dataio.write_report(out_dir / "report", all_reports)
    by_method = {}
    for report in all_reports:
        by_method.setdefault(report.method, []).append(report.ssim)
    summary = "  ".join(
        f"{m}: {np.mean(v):.4f}" for m, v in sorted(by_method.items())
    )
    print(f"mean ssim by method  {summary}")
    print(f"report -> {csv_path}, {json_path}")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    try:
        return args.func(args)
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (DivergenceError, NumericError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except ReconError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
