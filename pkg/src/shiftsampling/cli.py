"""
Command-line front end.

    shiftsampling kernel      --config cfg.json --out DIR
    shiftsampling reconstruct --config cfg.json --out DIR [--kernels kernels.json]
    shiftsampling verify      [--config cfg.json] [--out DIR]

``--config`` takes a path or the name of a bundled config
(``forward_p3.json``, ``frame_q3p2.json``, ...).  Exit codes: 0 success,
2 config error, 3 degenerate kernel, 4 numerical-check failure.
"""

import argparse
import csv
import json
import sys
import time
from fractions import Fraction
from importlib import resources
from math import comb
from pathlib import Path

import numpy as np

from .errors import CoverageError, DegenerateKernelError, SamplingError, SchemeError
from .generators import Generator, ProductGenerator, riesz_condition, zak_kernel, zak_kernel_2d
from .kernels import (SCHEMA_VERSION, SamplingKernelSet, ShannonKernel2D, assemble_kernels,
                      assemble_kernels_2d, interpolation_check, shannon_kernel,
                      shannon_kernel_2d)
from .reconstruct import (Signal, Signal2D, reconstruct_1d, reconstruct_2d, report,
                          required_window, required_window_2d)
from .riesz import DualMatrix, biorthogonality_check, invert_scheme, kronecker, left_inverse
from .schemes import (apply_operators, apply_operators_2d, backward_scheme, forward_scheme,
                      parse_spec, scheme_matrix)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_DEGENERATE = 3
EXIT_CHECK = 4

DEFAULTS = {
    "schemaVersion": SCHEMA_VERSION,
    "generator": "bspline:4",
    "a": 0.0,
    "gridSize": 4096,
    "radius": 40,
    "period": 1,
    "scheme": ["id@0"],
    "windowStart": None,
    "signal": {"kind": "random", "seed": 0, "support": [-8, 8]},
    "evalGrid": {"start": -5.0, "stop": 5.0, "step": 0.0625},
}


class ConfigError(SamplingError):
    pass


def bundled_configs():
    return sorted(p.name for p in resources.files("shiftsampling.configs").iterdir()
                  if p.name.endswith(".json"))


def load_config(path, overrides=None):
    """
    Read a JSON config (path or bundled name) and fill defaults.

    The directory of the file is recorded under ``"_base"`` so relative
    coefficient-file paths resolve against it.
    """
    if path is None:
        path = "default.json"
    p = Path(path)
    if p.is_file():
        text, base = p.read_text(encoding="utf-8"), p.resolve().parent
    else:
        res = resources.files("shiftsampling.configs") / str(path)
        if not res.is_file():
            raise ConfigError(f"config {path!r} not found (bundled: {', '.join(bundled_configs())})")
        text, base = res.read_text(encoding="utf-8"), None
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path!r} is not valid JSON: {exc}") from None
    if raw.get("schemaVersion", SCHEMA_VERSION) != SCHEMA_VERSION:
        raise ConfigError(f"unsupported schemaVersion {raw['schemaVersion']!r}")
    cfg = {**DEFAULTS, **raw}
    cfg["signal"] = {**DEFAULTS["signal"], **raw.get("signal", {})}
    cfg["evalGrid"] = {**DEFAULTS["evalGrid"], **raw.get("evalGrid", {})}
    for key, val in (overrides or {}).items():
        if val is None:
            continue
        if key == "seed":
            cfg["signal"]["seed"] = val
        else:
            cfg[key] = val
    cfg["_base"] = base
    cfg["_name"] = str(path)
    try:
        cfg["scheme"] = [parse_spec(s) for s in cfg["scheme"]]
        if cfg.get("dimension", 1) == 2:
            cfg["schemeY"] = [parse_spec(s) for s in cfg.get("schemeY", ["id@0"])]
        cfg["_generator"] = Generator.from_dict(cfg["generator"])
        if cfg.get("dimension", 1) == 2:
            cfg["_generatorY"] = Generator.from_dict(cfg.get("generatorY", cfg["generator"]))
    except (SchemeError, ValueError, KeyError) as exc:
        raise ConfigError(f"config {path!r}: {exc}") from None
    return cfg


def _grid(spec):
    start, stop, step = float(spec["start"]), float(spec["stop"]), float(spec["step"])
    if step <= 0 or stop < start:
        raise ConfigError("evalGrid needs start <= stop and step > 0")
    n = int(round((stop - start) / step))
    return start + step * np.arange(n + 1)


def _signal(cfg, gen):
    sig = cfg["signal"]
    if sig["kind"] == "random":
        return Signal.random(gen, sig["support"], int(sig["seed"]))
    if sig["kind"] == "file":
        path = Path(sig["path"])
        if not path.is_absolute() and cfg["_base"] is not None:
            path = cfg["_base"] / path
        if not path.is_file():
            raise ConfigError(f"coefficient file {str(path)!r} does not exist")
        with open(path, newline="", encoding="utf-8") as fh:
            rows = [r for r in csv.DictReader(fh)]
        n = np.array([int(r["n"]) for r in rows])
        c = np.array([float(r["value"]) for r in rows])
        coeffs = np.zeros(n.max() - n.min() + 1)
        coeffs[n - n.min()] = c
        return Signal(coeffs, int(n.min()), gen)
    raise ConfigError(f"unknown signal kind {sig['kind']!r}")


def _dual(cfg, M):
    if not M.is_frame:
        return invert_scheme(M)
    li = cfg.get("leftInverse") or {}
    U = li.get("U")
    if U == "random":
        rng = np.random.default_rng(int(li.get("seed", cfg["signal"]["seed"])))
        U = rng.uniform(-1.0, 1.0, (M.period, M.channels))
    return left_inverse(M, U)


def _kernel_set(cfg):
    gen = cfg["_generator"]
    M = scheme_matrix(cfg["scheme"], int(cfg["period"]), cfg["windowStart"])
    kernel = zak_kernel(gen, float(cfg["a"]), int(cfg["gridSize"]))
    base = shannon_kernel(kernel, int(cfg["radius"]))
    return assemble_kernels(base, M, _dual(cfg, M)), M


def _fmt(v):
    return format(float(v), ".17g")


def _write_csv(path, header, columns):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in zip(*columns):
            w.writerow([_fmt(v) for v in row])


def _write_json(path, obj):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh, indent=1)
        fh.write("\n")


def _echo(cfg):
    return {k: (v if k not in ("scheme", "schemeY") else [s.text for s in v])
            for k, v in cfg.items() if not k.startswith("_")}


def cmd_kernel(cfg, out):
    """Write ``kernels.csv`` (t, S, T1..Tq) and ``kernels.json``."""
    ks, M = _kernel_set(cfg)
    t = _grid(cfg["evalGrid"])
    cols = [t, np.real(ks.base(t))] + [np.real(ks.T(j, t)) for j in range(len(ks.combos))]
    header = ["t", "S"] + [f"T{j + 1}" for j in range(len(ks.combos))]
    _write_csv(out / "kernels.csv", header, cols)
    dump = ks.to_dict()
    dump["seed"] = cfg["signal"]["seed"]
    dump["config"] = _echo(cfg)
    dump["matrix"] = np.asarray(M.matrix).real.tolist()
    _write_json(out / "kernels.json", dump)
    print(f"kernels: S_a and {len(ks.combos)} composite kernels on {t.size} points -> {out}")
    return EXIT_OK


def _reconstruct_2d(cfg, out):
    gx, gy = cfg["_generator"], cfg["_generatorY"]
    a, b = float(cfg["a"]), float(cfg.get("b", 0.0))
    px, py = int(cfg["period"]), int(cfg.get("periodY", 1))
    Mx = scheme_matrix(cfg["scheme"], px, cfg["windowStart"])
    My = scheme_matrix(cfg["schemeY"], py, cfg.get("windowStartY"))
    M = kronecker(Mx, My)
    P = ProductGenerator(gx, gy)
    R = int(cfg["radius"])
    if cfg.get("general", False):
        base = shannon_kernel_2d(zak_kernel_2d(P, a, b, int(cfg.get("gridSize2d", 128))), R)
    else:
        G = int(cfg["gridSize"])
        base = ShannonKernel2D.separable(shannon_kernel(zak_kernel(gx, a, G), R),
                                         shannon_kernel(zak_kernel(gy, b, G), R))
    ks = assemble_kernels_2d(base, M, invert_scheme(M))
    sig = cfg["signal"]
    sup = sig["support"]
    if not isinstance(sup[0], (list, tuple)):
        sup = [sup, sup]
    f = Signal2D.random(P, sup, int(sig["seed"]))
    ts = _grid(cfg["evalGrid"])
    ss = _grid(cfg.get("evalGridY", cfg["evalGrid"]))
    t0 = time.perf_counter()
    win = required_window_2d(ks, (ts.min(), ts.max()), (ss.min(), ss.max()))
    smp = apply_operators_2d(f, cfg["scheme"], cfg["schemeY"], (a, b), (px, py), win)
    fh = reconstruct_2d(smp, ks, ts, ss)
    runtime = time.perf_counter() - t0
    err = np.abs(fh - f(ts, ss))
    T, S = np.meshgrid(ts, ss, indexing="ij")
    _write_csv(out / "reconstruction.csv", ["t", "s", "value"], [T.ravel(), S.ravel(), fh.ravel()])
    _write_csv(out / "error.csv", ["t", "s", "value"], [T.ravel(), S.ravel(), err.ravel()])
    h = float(np.diff(ts).mean() * np.diff(ss).mean()) if ts.size > 1 and ss.size > 1 else 1.0
    rep = {"maxAbsError": float(err.max()), "l2Error": float(np.sqrt(np.sum(err ** 2) * h)),
           "sampleCounts": smp.counts, "radius": R, "runtime": runtime}
    return rep


def cmd_reconstruct(cfg, out, kernels_path=None):
    """Run sampling and reconstruction; write ``report.json`` and CSVs."""
    if cfg.get("dimension", 1) == 2:
        rep = _reconstruct_2d(cfg, out)
    else:
        if kernels_path:
            with open(kernels_path, encoding="utf-8") as fh:
                ks = SamplingKernelSet.from_dict(json.load(fh))
        else:
            ks, _ = _kernel_set(cfg)
        gen = ks.base.generator
        f = _signal(cfg, gen)
        t = _grid(cfg["evalGrid"])
        t0 = time.perf_counter()
        smp = apply_operators(f, cfg["scheme"], ks.a, ks.p, required_window(ks, t.min(), t.max()))
        fh = reconstruct_1d(smp, ks, t)
        runtime = time.perf_counter() - t0
        _write_csv(out / "reconstruction.csv", ["t", "value"], [t, np.real(fh)])
        _write_csv(out / "error.csv", ["t", "value"], [t, np.abs(fh - f(t))])
        rep = report(f, fh, t, smp, ks, runtime).to_dict()
    rep = {"schemaVersion": SCHEMA_VERSION, **rep, "seed": cfg["signal"]["seed"],
           "config": _echo(cfg)}
    _write_json(out / "report.json", rep)
    print(f"reconstruct: maxAbsError={rep['maxAbsError']:.3e} l2Error={rep['l2Error']:.3e} "
          f"runtime={rep['runtime']:.3f}s -> {out}")
    return EXIT_OK


def _pascal_checks(pmax):
    """Exact forward-inverse and backward-involution checks for p = 1..pmax."""
    bad = []
    for p in range(1, pmax + 1):
        inv = invert_scheme(scheme_matrix(forward_scheme(p), p)).exact
        if any(inv[r][c] != (comb(r, c) if c <= r else 0) for r in range(p) for c in range(p)):
            bad.append(f"forward p={p}")
        B = scheme_matrix(list(reversed(backward_scheme(p))), p).exact
        sq = [[sum(B[r][k] * B[k][c] for k in range(p)) for c in range(p)] for r in range(p)]
        if any(sq[r][c] != Fraction(int(r == c)) for r in range(p) for c in range(p)):
            bad.append(f"backward p={p}")
    return bad


def cmd_verify(cfg, out=None):
    """Run the matrix, interpolation and biorthogonality suites."""
    checks = {"pascalMax": 8, "window": 3, "interpolationRange": 10, "interpolationTol": 1e-8,
              "biorthogonalityTol": 1e-6, **cfg.get("checks", {})}
    results = []

    bad = _pascal_checks(int(checks["pascalMax"]))
    results.append(("pascal/involution p<=%d" % checks["pascalMax"], not bad,
                    "exact" if not bad else "mismatch: " + ", ".join(bad)))

    gen = cfg["_generator"]
    kernel = zak_kernel(gen, float(cfg["a"]), int(cfg["gridSize"]))
    rc = riesz_condition(kernel)
    if not rc.valid:
        raise DegenerateKernelError(
            f"degenerate kernel: min |K_a| = {rc.lower:.3e} at x = {rc.witness:.6g}",
            rc.witness, rc.lower)
    base = shannon_kernel(kernel, int(cfg["radius"]))
    dev = interpolation_check(base, int(checks["interpolationRange"]))
    results.append(("interpolation", dev <= checks["interpolationTol"], f"{dev:.3e}"))

    M = scheme_matrix(cfg["scheme"], int(cfg["period"]), cfg["windowStart"])
    if M.is_frame:
        dual = _dual(cfg, M)
        dev = float(np.abs(np.asarray(dual.matrix) @ M.matrix - np.eye(M.period)).max())
        results.append(("left inverse N M = I", dev <= 1e-10, f"{dev:.3e}"))
    else:
        dual = invert_scheme(M)
        if "inverseOverride" in checks:
            dual = DualMatrix(np.array(checks["inverseOverride"], dtype=float), "basis")
        dev = biorthogonality_check(M, dual, kernel, int(checks["window"]))
        results.append(("biorthogonality", dev <= checks["biorthogonalityTol"], f"{dev:.3e}"))

    ok = all(r[1] for r in results)
    for name, passed, detail in results:
        print(f"{'PASS' if passed else 'FAIL'}  {name:<28} {detail}")
    if out is not None:
        _write_json(out / "verify.json", {
            "schemaVersion": SCHEMA_VERSION, "passed": ok, "seed": cfg["signal"]["seed"],
            "checks": [{"name": n, "passed": bool(p), "detail": d} for n, p, d in results]})
    return EXIT_OK if ok else EXIT_CHECK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="shiftsampling",
        description="Sampling kernels and reconstruction from differences and averages.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_ in (("kernel", "compute S_a and the composite kernels"),
                        ("reconstruct", "sample a signal and reconstruct it"),
                        ("verify", "run the numerical check suites")):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--config", help="JSON config path or bundled config name")
        p.add_argument("--out", help="output directory")
        p.add_argument("--grid-size", type=int, help="Zak kernel grid size G")
        p.add_argument("--radius", type=int, help="coefficient truncation radius R")
        p.add_argument("--seed", type=int, help="signal seed")
        if name == "reconstruct":
            p.add_argument("--kernels", help="kernels.json from a previous 'kernel' run")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config, {"gridSize": args.grid_size, "radius": args.radius,
                                        "seed": args.seed})
        out = None
        if args.out is not None:
            out = Path(args.out)
            out.mkdir(parents=True, exist_ok=True)
        elif args.command != "verify":
            out = Path(".")
        if args.command == "kernel":
            return cmd_kernel(cfg, out)
        if args.command == "reconstruct":
            return cmd_reconstruct(cfg, out, args.kernels)
        return cmd_verify(cfg, out)
    except DegenerateKernelError as exc:
        print(f"error: degenerate kernel, Riesz condition fails: min |K_a| = {exc.lower:.3e} "
              f"at witness x = {exc.witness:.6g}", file=sys.stderr)
        return EXIT_DEGENERATE
    except CoverageError as exc:
        print(f"error: {exc}; enlarge the sample window to {exc.required}", file=sys.stderr)
        return EXIT_CONFIG
    except (ConfigError, SchemeError, SamplingError, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
