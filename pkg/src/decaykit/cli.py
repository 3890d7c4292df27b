"""``decaykit`` command line: parameter scans and figure presets.

Scans sweep one dimensionless axis:

* ``omega``: transition frequency omega_A/omega_T; the distance (``--qz``) or
  cavity size (``--size``) is held fixed in units of the transition
  wavelength, i.e. as 2*pi*z/lambda_A or 2*pi*R/lambda_A.
* ``distance``: qz = omega_A z / c at fixed ``--omega``.
* ``radius``: size = omega_A R / c at fixed ``--omega``.

Exit status: 0 success, 2 usage error, 3 failed points under ``--strict``.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, replace
from typing import List, Optional, Sequence, Tuple

import numpy as np

from . import __version__
from ._accel import backend
from .core import (
    ConstantPermittivity,
    ConvergenceError,
    DecayKitError,
    DipoleConfig,
    InvalidArgumentError,
    LorentzPermittivity,
    PoleError,
    TablePermittivity,
    refractive_index,
)
from .planar import METHODS, PlanarConfig, planar_rate
from .sphere_real import SphericalConfig, real_cavity_rate_exact, real_cavity_rate_smallR
from .virtual_cavity import ExpansionValidityWarning, virtual_rate_total

MODELS = ("planar", "real-cavity", "virtual-cavity")
AXES = ("omega", "distance", "radius")
FORMATS = ("csv", "json")
CAVITY_METHODS = {"real-cavity": ("exact", "small-radius"), "virtual-cavity": ("total", "transverse")}

COLUMNS = (
    "curve", "axis_value", "eps_real", "eps_imag", "gamma_over_gamma0",
    "delta_omega_over_gamma0", "gamma_perp", "gamma_par", "method", "error_estimate", "status",
)

EXIT_OK, EXIT_USAGE, EXIT_CONVERGENCE = 0, 2, 3


class UsageError(InvalidArgumentError):
    pass


@dataclass(frozen=True)
class ScanSpec:
    """One sweep: geometry, medium, axis grid, method flags and output format."""

    model: str = "planar"
    axis: str = "omega"
    start: float = 0.5
    stop: float = 1.5
    points: int = 101
    qz: Optional[float] = None
    size: Optional[float] = None
    omega: float = 1.0
    gamma: float = 0.05
    coupling_sq: float = 0.2116
    eps: Optional[complex] = None
    eps_table: Optional[str] = None
    dipole: Tuple[float, float, float] = (0.0, 0.0, 1.0)
    method: Optional[str] = None
    include_integral_term: bool = False
    omega_max: float = 50.0
    tol: float = 1e-8
    output: str = "csv"
    label: str = ""

    def validate(self):
        if self.model not in MODELS:
            raise UsageError(f"unknown model {self.model!r}; choose from {MODELS}")
        if self.axis not in AXES:
            raise UsageError(f"unknown axis {self.axis!r}; choose from {AXES}")
        if self.output not in FORMATS:
            raise UsageError(f"unknown format {self.output!r}")
        if not (math.isfinite(self.start) and math.isfinite(self.stop) and self.start < self.stop):
            raise UsageError(f"range needs finite start < stop, got {self.start}:{self.stop}")
        if self.points < 2:
            raise UsageError(f"range needs at least 2 points, got {self.points}")
        if self.start <= 0:
            raise UsageError("axis values must be positive")
        if not (math.isfinite(self.tol) and self.tol > 0):
            raise UsageError(f"tol must be > 0, got {self.tol}")
        if self.eps is not None and self.eps_table is not None:
            raise UsageError("--eps and --eps-table are mutually exclusive")
        if self.model == "planar":
            if self.axis == "radius":
                raise UsageError("the planar model has no radius axis")
            if self.axis != "distance" and self.qz is None:
                raise UsageError("planar scans need --qz")
            if self.method not in METHODS:
                raise UsageError(f"planar method must be one of {METHODS}, got {self.method!r}")
            if self.include_integral_term:
                if self.method == "leading":
                    raise UsageError("the integral term needs --method quadrature or asymptotic")
                if self.eps is not None:
                    raise UsageError("the integral term needs a dispersive model, not --eps")
        else:
            if self.axis == "distance":
                raise UsageError("cavity models have no distance axis; use radius")
            if self.axis != "radius" and self.size is None:
                raise UsageError("cavity scans need --size")
            if self.method not in CAVITY_METHODS[self.model]:
                raise UsageError(
                    f"{self.model} method must be one of {CAVITY_METHODS[self.model]}, got {self.method!r}")
            if self.include_integral_term:
                raise UsageError("--include-integral-term applies to the planar model only")
        try:
            DipoleConfig(self.omega, self.dipole)
            model = self.permittivity()
        except (InvalidArgumentError, OSError) as exc:
            raise UsageError(str(exc)) from None
        if isinstance(model, TablePermittivity):
            lo, hi = (self.start, self.stop) if self.axis == "omega" else (self.omega, self.omega)
            if self.include_integral_term:
                lo, hi = 0.0, max(hi, self.omega_max)
            t_lo, t_hi = model.omega_range
            if lo < t_lo or hi > t_hi:
                raise UsageError(f"frequencies [{lo}, {hi}] not covered by table range [{t_lo}, {t_hi}]")
        return self

    def permittivity(self):
        if self.eps is not None:
            return ConstantPermittivity(self.eps)
        if self.eps_table is not None:
            return TablePermittivity.from_file(self.eps_table)
        return LorentzPermittivity(self.coupling_sq, self.gamma)

    def grid(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.points)


def default_method(model):
    return {"planar": "quadrature", "real-cavity": "exact", "virtual-cavity": "total"}[model]


# --------------------------------------------------------------------------
# evaluation
# --------------------------------------------------------------------------

def _row(spec, x, eps=None, **values):
    row = dict.fromkeys(COLUMNS)
    row.update(curve=spec.label, axis_value=float(x), method=spec.method, status="ok")
    if eps is not None:
        row.update(eps_real=eps.real, eps_imag=eps.imag)
    row.update(values)
    return row


def _point(spec: ScanSpec, model, x: float) -> dict:
    omega = x if spec.axis == "omega" else spec.omega
    eps = None
    try:
        eps = complex(model(omega))
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            if spec.model == "planar":
                qz = x if spec.axis == "distance" else spec.qz
                cfg = PlanarConfig(qz, eps, DipoleConfig(omega, spec.dipole))
                r = planar_rate(cfg, spec.method, spec.tol, spec.include_integral_term,
                                spec.omega_max, model)
                row = _row(spec, x, eps, gamma_over_gamma0=r.gamma, delta_omega_over_gamma0=r.shift,
                           error_estimate=r.error_estimate)
            else:
                size = x if spec.axis == "radius" else spec.size
                cfg = SphericalConfig(size, eps)
                if spec.model == "real-cavity":
                    fn = real_cavity_rate_exact if spec.method == "exact" else real_cavity_rate_smallR
                    g = fn(cfg)
                    row = _row(spec, x, eps, gamma_over_gamma0=g, error_estimate=0.0)
                else:
                    r = virtual_rate_total(cfg)
                    g = r.gamma if spec.method == "total" else r.gamma_perp
                    row = _row(spec, x, eps, gamma_over_gamma0=g, gamma_perp=r.gamma_perp,
                               gamma_par=r.gamma_par, error_estimate=0.0)
        flags = []
        if any(issubclass(w.category, ExpansionValidityWarning) for w in caught):
            flags.append("outside-validity")
        if row["gamma_over_gamma0"] < 0:
            flags.append("negative-rate")
        if flags:
            row["status"] = "warning:" + "+".join(flags)
        return row
    except ConvergenceError as exc:
        return _row(spec, x, eps, status="error:convergence", error_estimate=exc.abs_error)
    except PoleError:
        return _row(spec, x, eps, status="error:pole")
    except InvalidArgumentError as exc:
        return _row(spec, x, eps, status=f"error:invalid ({exc})")
    except ArithmeticError as exc:
        return _row(spec, x, eps, status=f"error:numerical ({type(exc).__name__})")


def _evaluate_chunk(args):
    spec, xs = args
    model = spec.permittivity()
    return [_point(spec, model, x) for x in xs]


def run_scan(spec: ScanSpec, jobs: int = 1) -> List[dict]:
    """One row per grid point, in axis order; failed points carry an ``error:`` status."""
    if spec.method is None:
        spec = replace(spec, method=default_method(spec.model))
    spec.validate()
    xs = [float(x) for x in spec.grid()]
    if jobs <= 1 or len(xs) < 2:
        return _evaluate_chunk((spec, xs))
    chunks = [xs[i::jobs] for i in range(jobs)]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        parts = list(pool.map(_evaluate_chunk, [(spec, c) for c in chunks if c]))
    rows = [r for part in parts for r in part]
    # rows come back per chunk; restore axis order
    return sorted(rows, key=lambda r: r["axis_value"])


# --------------------------------------------------------------------------
# presets
# --------------------------------------------------------------------------

TWO_PI = 2.0 * math.pi
PRESET_POINTS = 201


def _planar_presets(integral):
    base = dict(model="planar", dipole=(0.0, 0.0, 1.0), gamma=0.05, method="quadrature",
                include_integral_term=integral, tol=1e-8 if not integral else 1e-6)
    left = [ScanSpec(axis="omega", start=0.5, stop=1.5, points=PRESET_POINTS, qz=qz,
                     label=f"2pi z/lambda_A={qz:g}", **base) for qz in (0.1, 0.3)]
    right = [ScanSpec(axis="distance", start=0.02, stop=0.5, points=PRESET_POINTS, omega=w,
                      label=f"omega_A/omega_T={w:g}", **base) for w in (1.0, 0.5)]
    return left, right


def _cavity_preset(r_over_lambda):
    size = TWO_PI * r_over_lambda
    specs = []
    for gamma in (0.05, 0.2):
        common = dict(axis="omega", start=0.5, stop=1.5, points=PRESET_POINTS, size=size, gamma=gamma)
        specs += [
            ScanSpec(model="real-cavity", method="exact", label=f"real-cavity gamma={gamma:g}", **common),
            ScanSpec(model="virtual-cavity", method="total", label=f"virtual-cavity gamma={gamma:g}", **common),
            ScanSpec(model="virtual-cavity", method="transverse",
                     label=f"virtual-cavity-transverse gamma={gamma:g}", **common),
        ]
    return specs


def preset_specs(name: str) -> List[ScanSpec]:
    """Scan definitions behind a named preset.

    Axis ranges are artifact defaults: omega_A/omega_T in [0.5, 1.5] and
    2*pi*z/lambda_A in [0.02, 0.5].
    """
    if name in ("fig1-left", "fig1-right"):
        left, right = _planar_presets(False)
        return left if name.endswith("left") else right
    if name in ("fig2-left", "fig2-right"):
        left, right = _planar_presets(True)
        return left if name.endswith("left") else right
    if name == "fig3":
        return _cavity_preset(0.02)
    if name == "fig4":
        return _cavity_preset(0.2)
    raise UsageError(f"unknown preset {name!r}; choose from {PRESETS}")


PRESETS = ("fig1-left", "fig1-right", "fig2-left", "fig2-right", "fig3", "fig4")


def run_preset(name: str, jobs: int = 1) -> Tuple[List[ScanSpec], List[dict]]:
    specs = preset_specs(name)
    rows = []
    for spec in specs:
        rows += run_scan(spec, jobs)
    return specs, rows


# --------------------------------------------------------------------------
# output
# --------------------------------------------------------------------------

def _spec_metadata(spec: ScanSpec) -> dict:
    meta = {k: v for k, v in asdict(spec).items() if k != "output"}
    meta["method"] = spec.method or default_method(spec.model)
    meta["dipole"] = list(spec.dipole)
    if spec.eps is not None:
        meta["eps"] = [spec.eps.real, spec.eps.imag]
    model = spec.permittivity()
    kappa_at = spec.omega if spec.axis != "omega" else 1.0
    try:
        meta["kappa_at_omega_a"] = refractive_index(model(kappa_at)).kappa
        meta["kappa_evaluated_at_omega"] = kappa_at
    except InvalidArgumentError:
        meta["kappa_at_omega_a"] = None
    return meta


def metadata(specs: Sequence[ScanSpec], preset: Optional[str] = None) -> dict:
    return {
        "program": "decaykit",
        "version": __version__,
        "backend": backend(),
        "preset": preset,
        "units": "frequencies / omega_T; qz = omega_A z/c; size = omega_A R/c; rates / Gamma_0",
        "scans": [_spec_metadata(s) for s in specs],
    }


def _fmt(v):
    if v is None:
        return ""
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)


def to_csv(rows: Sequence[dict], meta: dict) -> str:
    buf = io.StringIO()
    for key, value in meta.items():
        if key == "scans":
            for i, scan in enumerate(value):
                buf.write(f"# scan[{i}] = {json.dumps(scan, sort_keys=True)}\n")
        else:
            buf.write(f"# {key} = {json.dumps(value)}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(COLUMNS)
    for row in rows:
        w.writerow([_fmt(row[c]) for c in COLUMNS])
    return buf.getvalue()


def _json_safe(v):
    # JSON has no NaN/inf; non-finite numbers become null
    if isinstance(v, float) and not math.isfinite(v):
        return None
    return v


def to_json(rows: Sequence[dict], meta: dict) -> str:
    doc = {
        "metadata": meta,
        "columns": list(COLUMNS),
        "rows": [[_json_safe(r[c]) for c in COLUMNS] for r in rows],
    }
    return json.dumps(doc, indent=1, sort_keys=True) + "\n"


def render(rows, meta, fmt):
    return to_csv(rows, meta) if fmt == "csv" else to_json(rows, meta)


# --------------------------------------------------------------------------
# argument parsing
# --------------------------------------------------------------------------

def _parse_range(text):
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("range must be start:stop:points")
    try:
        start, stop, points = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad range {text!r}") from None
    return start, stop, points


def _parse_dipole(text):
    try:
        mu = [float(p) for p in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad dipole {text!r}") from None
    if len(mu) != 3:
        raise argparse.ArgumentTypeError("dipole needs three components mx,my,mz")
    try:
        return DipoleConfig.from_vector(mu).weights
    except InvalidArgumentError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _parse_complex(text):
    try:
        return complex(text.replace(" ", "").replace("i", "j"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad complex number {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="decaykit", description="Spontaneous decay near absorbing dielectrics.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    out = argparse.ArgumentParser(add_help=False)
    out.add_argument("--format", choices=FORMATS, default="csv")
    out.add_argument("--output", "-o", help="write to this file instead of stdout")
    out.add_argument("--strict", action="store_true", help="exit 3 if any point fails")
    out.add_argument("--jobs", type=int, default=1, help="worker processes")

    s = sub.add_parser("scan", parents=[out], help="sweep one axis")
    s.add_argument("--model", choices=MODELS, default="planar")
    s.add_argument("--axis", choices=AXES, default="omega")
    s.add_argument("--range", type=_parse_range, required=True, metavar="START:STOP:POINTS")
    s.add_argument("--qz", type=float, help="omega_A z / c (planar)")
    s.add_argument("--size", type=float, help="omega_A R / c (cavities)")
    s.add_argument("--omega", type=float, default=1.0, help="omega_A/omega_T when not scanned")
    s.add_argument("--gamma", type=float, default=0.05, help="Lorentz damping / omega_T")
    s.add_argument("--coupling-sq", type=float, default=0.2116, help="Lorentz oscillator strength")
    s.add_argument("--eps", type=_parse_complex, help="constant permittivity, e.g. 2.25 or 1+4.232j")
    s.add_argument("--eps-table", metavar="FILE", help="omega eps_real eps_imag table")
    s.add_argument("--dipole", type=_parse_dipole, default=(0.0, 0.0, 1.0), metavar="MX,MY,MZ",
                   help="dipole direction, normalised internally (default 0,0,1)")
    s.add_argument("--method", help="planar: quadrature|asymptotic|leading; "
                                    "real-cavity: exact|small-radius; virtual-cavity: total|transverse")
    s.add_argument("--include-integral-term", action="store_true",
                   help="add the frequency-integral part of the planar line shift")
    s.add_argument("--omega-max", type=float, default=50.0, help="cutoff of that integral, in omega_T")
    s.add_argument("--tol", type=float, default=1e-8, help="absolute quadrature tolerance")

    r = sub.add_parser("preset", parents=[out], help="figure presets")
    r.add_argument("name", choices=PRESETS)
    return p


def _spec_from_args(a) -> ScanSpec:
    start, stop, points = a.range
    return ScanSpec(
        model=a.model, axis=a.axis, start=start, stop=stop, points=points, qz=a.qz, size=a.size,
        omega=a.omega, gamma=a.gamma, coupling_sq=a.coupling_sq, eps=a.eps, eps_table=a.eps_table,
        dipole=a.dipole, method=a.method or default_method(a.model),
        include_integral_term=a.include_integral_term, omega_max=a.omega_max, tol=a.tol,
        output=a.format,
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    if a.jobs < 1:
        print("decaykit: error: --jobs must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        if a.command == "scan":
            spec = _spec_from_args(a).validate()
            specs, rows = [spec], run_scan(spec, a.jobs)
            meta = metadata(specs)
        else:
            specs, rows = run_preset(a.name, a.jobs)
            meta = metadata(specs, preset=a.name)
    except (UsageError, InvalidArgumentError, OSError) as exc:
        print(f"decaykit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DecayKitError as exc:  # pragma: no cover - points trap their own errors
        print(f"decaykit: error: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE

    text = render(rows, meta, a.format)
    if a.output:
        with open(a.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    failed = [r for r in rows if r["status"].startswith("error")]
    if failed:
        print(f"decaykit: {len(failed)} of {len(rows)} points failed", file=sys.stderr)
        if a.strict:
            return EXIT_CONVERGENCE
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
