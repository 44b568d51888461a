"""Command-line front end.

Exit codes: 0 success, 2 bad arguments, 3 I/O failure, 4 data/format
error.  Every run writes a JSON manifest (resolved flags, input digests,
output paths, durations); only the recorded durations vary between
identical runs.
"""

import argparse
import hashlib
import json
import sys
import time

import numpy as np

from . import __version__
from .degrade import add_noise, decimate
from .directionlet import BAND_NAMES, best_direction, forward_awt21
from .image import Image, Patch, PgmFormatError, read_pgm, write_pgm
from .lattice import canonical_pairs
from .superres import (
    ConfigMismatchError,
    SRConfig,
    cubic_spline_upsample,
    mse,
    super_resolve,
    wm2_build,
    wm2_super_resolve,
)
from .trainset import TrainingSetError, build_training_set, load_file, save_file

EXIT_USAGE = 2
EXIT_IO = 3
EXIT_DATA = 4


class CliError(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


def _read_image(path) -> Image:
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError as e:
        raise CliError(EXIT_IO, f"cannot read {path}: {e}")
    try:
        return read_pgm(data)
    except PgmFormatError as e:
        raise CliError(EXIT_DATA, f"{path}: {e}")


def _write_bytes(path, data: bytes):
    try:
        with open(path, "wb") as fh:
            fh.write(data)
    except OSError as e:
        raise CliError(EXIT_IO, f"cannot write {path}: {e}")


def _digest(path):
    try:
        with open(path, "rb") as fh:
            return hashlib.sha256(fh.read()).hexdigest()
    except OSError:
        return None


def _write_manifest(path, subcommand, args, inputs, outputs, duration):
    manifest = {
        "tool": "dirsr",
        "version": __version__,
        "subcommand": subcommand,
        "flags": {k: v for k, v in sorted(vars(args).items()) if k != "func"},
        "inputs": {str(p): _digest(p) for p in inputs},
        "outputs": [str(p) for p in outputs],
        "duration_seconds": duration,
    }
    _write_bytes(path, json.dumps(manifest, indent=2, default=str).encode() + b"\n")


def _manifest_path(args, primary_output):
    if args.manifest:
        return args.manifest
    if primary_output:
        return str(primary_output) + ".manifest.json"
    return "dirsr-manifest.json"


def cmd_build_trainset(args):
    t0 = time.perf_counter()
    corpus = [_read_image(p) for p in args.inputs]
    ts = build_training_set(corpus, SRConfig())
    try:
        save_file(ts, args.output)
    except OSError as e:
        raise CliError(EXIT_IO, f"cannot write {args.output}: {e}")
    for pair, group in zip(canonical_pairs(), ts.groups):
        print(f"group {pair.name}: {len(group)}")
    print(f"records: {ts.meta.record_count}")
    _write_manifest(
        _manifest_path(args, args.output), "build-trainset", args,
        args.inputs, [args.output], time.perf_counter() - t0,
    )
    return 0


def cmd_super_resolve(args):
    t0 = time.perf_counter()
    lr = _read_image(args.input)
    try:
        ts = load_file(args.trainset)
    except OSError as e:
        raise CliError(EXIT_IO, f"cannot read {args.trainset}: {e}")
    except TrainingSetError as e:
        raise CliError(EXIT_DATA, f"{args.trainset}: {e}")
    cfg = SRConfig(fallback=args.fallback)
    try:
        result, report = super_resolve(lr, ts, cfg)
    except ConfigMismatchError as e:
        raise CliError(EXIT_DATA, str(e))
    _write_bytes(args.output, write_pgm(result, args.pgm_mode, args.maxval))
    outputs = [args.output]
    if args.report:
        lines = ["row,col,direction,distance,fallback"]
        for p in report.patches:
            dist = "" if p.fallback else f"{p.distance!r}"
            lines.append(f"{p.row},{p.col},{p.direction},{dist},{int(p.fallback)}")
        _write_bytes(args.report, ("\n".join(lines) + "\n").encode())
        outputs.append(args.report)
    print(f"output: {args.output} ({result.width}x{result.height})")
    print(f"fallback fraction: {report.fallback_fraction:.4f}")
    _write_manifest(
        _manifest_path(args, args.output), "super-resolve", args,
        [args.input, args.trainset], outputs, time.perf_counter() - t0,
    )
    return 0


def cmd_evaluate(args):
    t0 = time.perf_counter()
    ref = _read_image(args.reference)
    rows = ["method,mse"]
    for entry in args.candidates:
        if "=" in entry:
            name, path = entry.split("=", 1)
        else:
            name, path = entry, entry
        cand = _read_image(path)
        try:
            value = mse(ref, cand)
        except ValueError as e:
            raise CliError(EXIT_DATA, f"{path}: {e}")
        rows.append(f"{name},{value!r}")
    table = "\n".join(rows) + "\n"
    print(table, end="")
    outputs = []
    if args.output:
        _write_bytes(args.output, table.encode())
        outputs.append(args.output)
    _write_manifest(
        _manifest_path(args, args.output), "evaluate", args,
        [args.reference], outputs, time.perf_counter() - t0,
    )
    return 0


def cmd_decimate(args):
    t0 = time.perf_counter()
    img = _read_image(args.input)
    try:
        out = decimate(img, args.factor)
    except ValueError as e:
        raise CliError(EXIT_DATA, f"{args.input}: {e}")
    if args.noise_sigma > 0:
        out = add_noise(out, args.noise_sigma, args.seed)
    _write_bytes(args.output, write_pgm(out, args.pgm_mode, args.maxval))
    _write_manifest(
        _manifest_path(args, args.output), "decimate", args,
        [args.input], [args.output], time.perf_counter() - t0,
    )
    return 0


def cmd_baseline(args):
    t0 = time.perf_counter()
    lr = _read_image(args.input)
    outputs = []
    if args.spline_output:
        up = cubic_spline_upsample(lr, 2)
        _write_bytes(args.spline_output, write_pgm(up, args.pgm_mode, args.maxval))
        outputs.append(args.spline_output)
    if args.wm2_output:
        if not args.corpus:
            raise CliError(EXIT_USAGE, "--wm2-output requires --corpus images")
        corpus = [_read_image(p) for p in args.corpus]
        wts = wm2_build(corpus, SRConfig())
        out = wm2_super_resolve(lr, wts)
        _write_bytes(args.wm2_output, write_pgm(out, args.pgm_mode, args.maxval))
        outputs.append(args.wm2_output)
    if not outputs:
        raise CliError(EXIT_USAGE, "nothing to do: pass --spline-output and/or --wm2-output")
    _write_manifest(
        _manifest_path(args, outputs[0]), "baseline", args,
        [args.input] + list(args.corpus or []), outputs, time.perf_counter() - t0,
    )
    return 0


def cmd_transform_dump(args):
    t0 = time.perf_counter()
    img = _read_image(args.input)
    n = args.patch_size
    r, c = args.row * n, args.col * n
    if r + n > img.height or c + n > img.width:
        raise CliError(EXIT_DATA, f"patch ({args.row},{args.col}) out of bounds")
    patch = Patch(img.pixels[r : r + n, c : c + n], (r, c))
    pair, energies = best_direction(patch)
    bands = forward_awt21(patch, pair, "oversampled")
    lines = [f"best direction: {pair.name}"]
    for p, e in zip(canonical_pairs(), energies):
        lines.append(f"energy {p.name}: {e!r}")
    for name in BAND_NAMES:
        lines.append(f"band {name}:")
        for row in bands.bands[name]:
            lines.append(" ".join(repr(v) for v in row))
    text = "\n".join(lines) + "\n"
    if args.output:
        _write_bytes(args.output, text.encode())
    else:
        print(text, end="")
    _write_manifest(
        _manifest_path(args, args.output), "transform-dump", args,
        [args.input], [args.output] if args.output else [], time.perf_counter() - t0,
    )
    return 0


def cmd_gen_demo(args):
    import os

    from . import demo

    t0 = time.perf_counter()
    os.makedirs(args.output_dir, exist_ok=True)
    written = []
    sets = [
        ("train", demo.training_corpus()),
        ("test", demo.test_images()),
    ]
    for prefix, images in sets:
        for name, img in images:
            path = os.path.join(args.output_dir, f"{prefix}_{name}.pgm")
            _write_bytes(path, write_pgm(img, args.pgm_mode, args.maxval))
            written.append(path)
    print(f"wrote {len(written)} images to {args.output_dir}")
    _write_manifest(
        _manifest_path(args, written[0]), "gen-demo", args,
        [], written, time.perf_counter() - t0,
    )
    return 0


def _add_common(p, output=True):
    p.add_argument("--manifest", default=None, help="manifest path (default: derived from the output)")
    p.add_argument("--pgm-mode", choices=["ascii", "binary"], default="binary")
    p.add_argument("--maxval", type=int, default=255)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="dirsr",
        description="Learning-based single-image super-resolution with directionlets.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("build-trainset", help="build a training set from HR PGM images")
    p.add_argument("inputs", nargs="+", help="high-resolution PGM images")
    p.add_argument("-o", "--output", required=True, help="training-set output path")
    _add_common(p)
    p.set_defaults(func=cmd_build_trainset)

    p = sub.add_parser("super-resolve", help="super-resolve a low-resolution PGM")
    p.add_argument("--input", required=True)
    p.add_argument("--trainset", required=True)
    p.add_argument("--output", required=True)
    p.add_argument(
        "--fallback",
        choices=["interpolate-only", "nearest-any-direction"],
        default="interpolate-only",
        help="behavior when a direction group is empty",
    )
    p.add_argument("--report", default=None, help="per-patch diagnostics CSV path")
    _add_common(p)
    p.set_defaults(func=cmd_super_resolve)

    p = sub.add_parser("evaluate", help="normalized MSE of candidates against a reference")
    p.add_argument("--reference", required=True)
    p.add_argument("candidates", nargs="+", help="name=path entries (or bare paths)")
    p.add_argument("-o", "--output", default=None, help="also write the CSV here")
    _add_common(p)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("decimate", help="block-average downsample a PGM")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    p.add_argument("-q", "--factor", type=int, default=2)
    p.add_argument(
        "--noise-sigma", type=float, default=0.0,
        help="additive Gaussian noise std dev (numpy PCG64 generator, seeded)",
    )
    p.add_argument("--seed", type=int, default=0, help="noise generator seed")
    _add_common(p)
    p.set_defaults(func=cmd_decimate)

    p = sub.add_parser("baseline", help="cubic-spline and/or block-wavelet baselines")
    p.add_argument("--input", required=True)
    p.add_argument("--spline-output", default=None)
    p.add_argument("--wm2-output", default=None)
    p.add_argument("--corpus", nargs="*", default=None, help="HR images for the wm2 baseline")
    _add_common(p)
    p.set_defaults(func=cmd_baseline)

    p = sub.add_parser("transform-dump", help="dump the eight subbands of one patch")
    p.add_argument("--input", required=True)
    p.add_argument("--row", type=int, default=0, help="patch row index")
    p.add_argument("--col", type=int, default=0, help="patch column index")
    p.add_argument("--patch-size", type=int, default=8)
    p.add_argument("-o", "--output", default=None)
    _add_common(p)
    p.set_defaults(func=cmd_transform_dump)

    p = sub.add_parser("gen-demo", help="write the procedural demo corpus as PGMs")
    p.add_argument("--output-dir", required=True)
    _add_common(p)
    p.set_defaults(func=cmd_gen_demo)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as e:
        print(f"dirsr: {e}", file=sys.stderr)
        return e.code
    except (PgmFormatError, TrainingSetError, ConfigMismatchError, ValueError) as e:
        print(f"dirsr: {e}", file=sys.stderr)
        return EXIT_DATA
    except OSError as e:
        print(f"dirsr: {e}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
