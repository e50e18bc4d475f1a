"""Command-line front end.

Every subcommand prints one report (JSON by default, CSV on request) to
standard output or to ``--out``.  Exit status is 0 on success, 2 for invalid
input or a violated hypothesis and 3 for a numerical failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .birman_schwinger import (
    DEFAULT_NODES,
    Rectangle,
    SearchOptions,
    det_root_search,
    resonance_search,
)
from .complexmaps import branch_values
from .delta_models import (
    DeltaPotential,
    delta_dense_halfplane,
    delta_on_disk_boundary,
    delta_spectrum,
)
from .enclosures import (
    ceps_excluded,
    fv_excluded,
    gap_interval,
    imaginary_diagonal_norms,
    imaginary_potential_excluded,
    l1_excluded,
    lp_excluded,
    nonrelativistic_disks,
    theorem1_disks,
)
from .errors import DomainError, NumericalFailure
from .potentials import (
    Potential,
    clip_decompose,
    f_v,
    gaussian_scalar,
    l1_norm,
    lp_norm,
    potential_from_dict,
)
from .resonance_regions import (
    ResonanceContext,
    d_theta_boundary,
    exclusion_curves,
    resonance_disks,
)

__all__ = ["main", "build_parser", "run", "parse_complex", "REPORT_SCHEMA"]

COMMANDS = ("enclose", "check", "spectrum", "delta", "resonances", "fv", "curves")
FIGURE1_NORMS = (0.8, 0.96, 0.978)

_complex_pair = {"type": "array", "items": {"type": ["number", "null"]}, "minItems": 2, "maxItems": 2}

#: JSON schema every report validates against (the result payload is command specific)
REPORT_SCHEMA = {
    "type": "object",
    "required": ["command", "version", "config"],
    "properties": {
        "command": {"type": "string"},
        "version": {"type": "string"},
        "config": {"type": "object"},
        "provenance": {"type": "object", "additionalProperties": {"type": "string"}},
        "disks": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["center", "radius"],
                "properties": {"center": _complex_pair, "radius": {"type": "number"}},
            },
        },
        "eigenvalues": {"type": "array"},
        "z": _complex_pair,
        "excluded": {"type": "boolean"},
        "margin": {"type": ["number", "null"]},
    },
}

ROOT_SCHEMA = {
    "type": "object",
    "required": ["z", "abs_det", "residual", "winding"],
    "properties": {
        "z": _complex_pair,
        "abs_det": {"type": "number"},
        "residual": {"type": "number"},
        "winding": {"type": "integer"},
    },
}


class UsageError(DomainError):
    """Missing or malformed command-line input."""


def parse_complex(text: str) -> complex:
    """Parse 'a+bi', 'bi', 'a' (also accepts j)."""
    s = text.strip().replace(" ", "").replace("I", "i").replace("i", "j")
    try:
        return complex(s)
    except ValueError as exc:
        raise UsageError(f"cannot parse complex number {text!r}") from exc


def _jsonable(obj):
    if isinstance(obj, complex):
        return [_jsonable(obj.real), _jsonable(obj.imag)]
    if isinstance(obj, (float, np.floating)):
        f = float(obj)
        return f if math.isfinite(f) else None
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, np.complexfloating):
        return _jsonable(complex(obj))
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def _disk_list(region) -> list[dict]:
    return [{"center": complex(c), "radius": float(r)} for c, r in region.disks]


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        flags = ", ".join("--" + n.replace("_", "-") for n in missing)
        raise UsageError(f"{args.command} needs {flags}")


def _load_potential(args) -> Potential:
    _need(args, "potential")
    path = Path(args.potential)
    try:
        spec = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read potential {path}: {exc}") from exc
    return potential_from_dict(spec, base_dir=path.parent)


def _mass(args, default=None) -> float:
    if args.mass is None:
        if default is None:
            raise UsageError(f"{args.command} needs --mass")
        return default
    if args.mass < 0:
        raise UsageError("--mass must be nonnegative")
    return float(args.mass)


def _options(args) -> SearchOptions:
    kw = {"nodes": args.nodes or DEFAULT_NODES, "truncation": args.truncation}
    if args.tol is not None:
        kw["det_tol"] = args.tol
    return SearchOptions(**kw)


def _roots_payload(report) -> list[dict]:
    return [
        {"z": r.z, "abs_det": r.abs_det, "residual": r.residual, "winding": r.winding}
        for r in report.eigenvalues
    ]


# --------------------------------------------------------------------------
# subcommands: each returns (json payload, csv header, csv rows)

def cmd_enclose(args):
    _need(args, "v1")
    m = _mass(args)
    if args.c is not None:
        enc = nonrelativistic_disks(args.v1, m, args.c)
        prov = {
            "v": "v1 / c",
            "right_center": "m c^2 (x0 - 1) with x0 - 1 = v^4 / (2 s (1 + s)^2), s = sqrt(1 - v^2)",
            "left_center": "-m c^2 (x0 + 1)",
            "radius": "m c^2 v^2 / (2 s)",
        }
    else:
        enc = theorem1_disks(args.v1, m)
        prov = {"x0": "(2 - v^2) / (2 sqrt(1 - v^2))", "r0": "v^2 / (2 sqrt(1 - v^2))"}
    disks = _disk_list(enc.disks)
    payload = {"disks": disks, "x0": enc.x0, "r0": enc.r0, "v": enc.v1, "provenance": prov}
    rows = [(d["center"].real, d["center"].imag, d["radius"]) for d in disks]
    return payload, ("center_re", "center_im", "radius"), rows


def cmd_check(args):
    _need(args, "z", "criterion")
    z = parse_complex(args.z)
    m = _mass(args)
    crit = args.criterion
    extra = {}
    if crit == "l1":
        v1 = args.v1 if args.v1 is not None else l1_norm(_load_potential(args))
        verdict = l1_excluded(z, v1, m)
        extra = {"v1": v1}
        prov = "margin = 1 - eta(|Phi(z)|) ||V||_1"
    elif crit == "imag":
        a, b = imaginary_diagonal_norms(_load_potential(args))
        verdict = imaginary_potential_excluded(z, a, b, m)
        extra = {"l1_w11": a, "l1_w22": b}
        prov = "Im z <= 0: always excluded; else margin = 2 - Re(zeta) ||W11||_1 - Re(1/zeta) ||W22||_1"
    elif crit == "ceps":
        _need(args, "epsilon")
        dec = clip_decompose(_load_potential(args), args.epsilon)
        verdict = ceps_excluded(z, dec, m)
        extra = {"epsilon": dec.epsilon, "l1_unbounded_part": dec.l1_of_W}
        prov = "margin = min(1 - eta C, 1 - eps (1/dist + eta^2 C / (Im k (1 - eta C))))"
    elif crit == "fv":
        V = _load_potential(args)
        verdict = fv_excluded(z, V, m)
        extra = {"F_V": f_v(V, branch_values(z, m).k.imag)}
        prov = "margin = 1 - eta(|Phi(z)|) F_V(Im k(z))"
    else:
        _need(args, "p")
        vp = lp_norm(_load_potential(args), args.p)
        verdict = lp_excluded(z, vp, args.p, m)
        extra = {"lp_norm": vp}
        prov = "margin = 1 - eta (2(p-1)/p)^((p-1)/p) (Im k)^(-(p-1)/p) ||V||_p"
    bv = branch_values(z, m)
    payload = {
        "z": verdict.z, "excluded": verdict.excluded, "criterion": verdict.criterion.value,
        "margin": verdict.margin, "eta": bv.eta, "k": bv.k, **extra,
        "provenance": {"margin": prov},
    }
    rows = [(z.real, z.imag, verdict.excluded, verdict.criterion.value, verdict.margin)]
    return payload, ("z_re", "z_im", "excluded", "criterion", "margin"), rows


def cmd_spectrum(args):
    _need(args, "region")
    V = _load_potential(args)
    m = _mass(args)
    report = det_root_search(V, m, Rectangle.parse(args.region), _options(args))
    return _search_payload(report, {"roots": "zeros of det(I + Q_N(z)) by winding number and Newton"})


def cmd_resonances(args):
    _need(args, "region", "phi")
    V = _load_potential(args)
    m = _mass(args)
    report = resonance_search(V, m, 1j * args.phi, Rectangle.parse(args.region), _options(args))
    payload, header, rows = _search_payload(
        report, {"roots": "zeros of the complex-scaled determinant, theta = i phi"})
    if V.hermitian_on_axis and V.alpha is not None and args.phi < V.alpha:
        try:
            enc = resonance_disks(ResonanceContext(V, m, args.phi))
            payload["resonance_disks"] = _disk_list(enc.disks)
            payload["v_theta"] = enc.v1
        except DomainError as exc:
            payload["resonance_disks_note"] = str(exc)
    return payload, header, rows


def _search_payload(report, prov):
    payload = {
        "eigenvalues": _roots_payload(report),
        "grid_size": report.grid_size,
        "truncation": report.truncation,
        "theta": report.theta,
        "contour_windings": [{"box": list(b), "winding": w} for b, w in report.contour_windings],
        "options": {
            "det_tol": report.options.det_tol, "newton_tol": report.options.newton_tol,
            "fd_step": report.options.fd_step, "max_depth": report.options.max_depth,
        },
        "provenance": prov,
    }
    rows = [(r.z.real, r.z.imag, r.abs_det, r.residual, r.winding) for r in report.eigenvalues]
    return payload, ("re", "im", "abs_det", "residual", "winding"), rows


def cmd_delta(args):
    _need(args, "kappa", "tau")
    m = _mass(args, 1.0)
    P = DeltaPotential(args.kappa, args.tau, m)
    spec = delta_spectrum(P)
    e = complex(math.cos(P.tau), math.sin(P.tau))
    residuals = []
    for z, zeta in zip(spec.eigenvalues, spec.zetas):
        # recompute zeta(z) on the physical branch and plug it into the 2x2 determinant
        try:
            zb = branch_values(z, m).zeta
        except DomainError:
            zb = zeta
        det = (1 - P.kappa / 2 * e * zb) * (1 - P.kappa / 2 / e / zb) - P.kappa ** 2 / 4
        residuals.append(abs(det))
    payload = {
        "eigenvalues": list(spec.eigenvalues), "zetas": list(spec.zetas), "regime": spec.regime.value,
        "residuals": residuals, "double_root": spec.double_root,
        "provenance": {"zetas": "e^{-i tau} (1 +- sqrt(1 - kappa^2)) / kappa, kept if Im < 0",
                       "eigenvalues": "m (zeta^2 + 1) / (zeta^2 - 1)"},
    }
    if P.kappa < 1 and 0 < P.tau < math.pi and m > 0:
        payload["disk_boundary_residual"] = delta_on_disk_boundary(P)
    if P.kappa >= 1 and m == 0:
        hp = delta_dense_halfplane(P)
        payload["dense_halfplane"] = hp.value if hp else None
    rows = [(z.real, z.imag, zt.real, zt.imag) for z, zt in zip(spec.eigenvalues, spec.zetas)]
    return payload, ("re", "im", "zeta_re", "zeta_im"), rows


def cmd_fv(args):
    V = _load_potential(args)
    m = _mass(args)
    payload = {"provenance": {"F_V": "sup_y int ||V(x)|| e^{-s |x - y|} dx"}}
    rows = []
    if m > 0:
        gap = gap_interval(V, m)
        payload["gap_interval"] = list(gap) if gap else None
        payload["F_V_at_m"] = f_v(V, m)
        payload["provenance"]["gap_interval"] = "(-sqrt(m^2 - mu0^2), sqrt(m^2 - mu0^2)), F_V(mu0) = mu0 / m"
    if args.z is not None:
        z = parse_complex(args.z)
        verdict = fv_excluded(z, V, m)
        s = branch_values(z, m).k.imag
        payload.update({"z": z, "s": s, "F_V": f_v(V, s), "excluded": verdict.excluded, "margin": verdict.margin})
        rows.append((s, payload["F_V"]))
    return payload, ("s", "F_V"), rows


def cmd_curves(args):
    V = _load_potential(args)
    m = _mass(args)
    phi_max = args.phi if args.phi is not None else 0.6
    phis = np.linspace(0.0, phi_max, args.samples)
    curves = exclusion_curves(V, m, phis)
    payload = {
        "phi": curves.phi, "right": curves.right, "left": curves.left,
        "provenance": {"curves": "lower boundary circle of K_{m r_theta}(m x_theta) meets arg(z^2 - m^2) = -2 phi"},
    }
    return payload, ("phi", "re_z", "im_z", "family"), list(curves.rows())


def figure_data(which: int, args):
    m = _mass(args, 1.0)
    t = np.linspace(0.0, 2.0 * math.pi, 361)
    if which == 1:
        rows, curves = [], []
        for v in FIGURE1_NORMS:
            enc = theorem1_disks(v, m)
            for sign, fam in ((1.0, "right"), (-1.0, "left")):
                pts = sign * m * enc.x0 + m * enc.r0 * np.exp(1j * t)
                curves.append({"v1": v, "family": fam, "points": pts})
                rows += [(v, fam, p.real, p.imag) for p in pts]
        return {"figure": 1, "mass": m, "curves": curves}, ("v1", "family", "re_z", "im_z"), rows
    if which == 2:
        phi = args.phi if args.phi is not None else math.pi / 6
        right, left = d_theta_boundary(phi, m, p_max=10.0)
        rows = [(phi, "right", z.real, z.imag) for z in right] + [(phi, "left", z.real, z.imag) for z in left]
        return ({"figure": 2, "mass": m, "phi": phi, "right": right, "left": left},
                ("phi", "family", "re_z", "im_z"), rows)
    V = gaussian_scalar(0.3, 1.0)
    phis = np.linspace(0.0, 0.6, args.samples)
    curves = exclusion_curves(V, m, phis)
    return ({"figure": 3, "mass": m, "potential": {"type": "gaussian_scalar", "a": 0.3, "b": 1.0},
             "phi": curves.phi, "right": curves.right, "left": curves.left},
            ("phi", "re_z", "im_z", "family"), list(curves.rows()))


HANDLERS = {
    "enclose": cmd_enclose,
    "check": cmd_check,
    "spectrum": cmd_spectrum,
    "delta": cmd_delta,
    "resonances": cmd_resonances,
    "fv": cmd_fv,
    "curves": cmd_curves,
}


# --------------------------------------------------------------------------
# argument parsing and output

def _positive(kind):
    def conv(text):
        val = kind(text)
        if not val > 0:
            raise argparse.ArgumentTypeError(f"{text} must be positive")
        return val
    return conv


def _add_common(p: argparse.ArgumentParser, top: bool) -> None:
    # subcommand copies must not overwrite values given before the subcommand
    d = (lambda v: v) if top else (lambda v: argparse.SUPPRESS)
    p.add_argument("--v1", type=float, default=d(None), help="L1 norm of the potential")
    p.add_argument("--mass", type=float, default=d(None), help="mass m >= 0")
    p.add_argument("--c", type=_positive(float), default=d(None), help="speed of light (nonrelativistic scaling)")
    p.add_argument("--z", default=d(None), help="spectral point, e.g. 0.5+2i")
    p.add_argument("--potential", default=d(None), help="path to a potential JSON description")
    p.add_argument("--criterion", choices=("l1", "imag", "ceps", "fv", "lp"), default=d(None))
    p.add_argument("--epsilon", type=_positive(float), default=d(None), help="clipping level for the ceps criterion")
    p.add_argument("--p", type=float, default=d(None), help="exponent for the lp criterion")
    p.add_argument("--phi", type=float, default=d(None), help="dilation angle Im theta")
    p.add_argument("--region", default=d(None), help="search rectangle re_min,re_max,im_min,im_max")
    p.add_argument("--nodes", type=_positive(int), default=d(None), help="quadrature nodes N")
    p.add_argument("--truncation", type=_positive(float), default=d(None), help="truncation radius L")
    p.add_argument("--tol", type=_positive(float), default=d(None), help="determinant tolerance for accepted roots")
    p.add_argument("--kappa", type=_positive(float), default=d(None), help="point interaction coupling")
    p.add_argument("--tau", type=float, default=d(None), help="point interaction phase in [-pi, pi)")
    p.add_argument("--samples", type=_positive(int), default=d(61), help="angles per exclusion curve")
    p.add_argument("--figure", type=int, choices=(1, 2, 3), default=d(None), help="emit the data behind a figure")
    p.add_argument("--out", default=d(None), help="write the report here instead of standard output")
    p.add_argument("--format", choices=("json", "csv"), default=d("json"))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="diracspec", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    _add_common(parser, top=True)
    sub = parser.add_subparsers(dest="command")
    for name in COMMANDS:
        _add_common(sub.add_parser(name), top=False)
    return parser


def _config(args) -> dict:
    return {k: v for k, v in vars(args).items() if v is not None and k != "out"}


def _render(command, args, payload, header, rows) -> str:
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([repr(float(v)) if isinstance(v, (float, np.floating)) else v for v in row])
        return buf.getvalue()
    report = {"command": command, "version": __version__, "config": _config(args), **payload}
    return json.dumps(_jsonable(report), indent=2, allow_nan=False) + "\n"


VALUE_FLAGS = ("--z", "--region")


def _glue_values(argv):
    # argparse takes "-0.5,0.5,..." or "-2i" for an option; bind them to their flag
    out = []
    it = iter(argv)
    for tok in it:
        if tok in VALUE_FLAGS:
            nxt = next(it, None)
            if nxt is None:
                out.append(tok)
                break
            out.append(f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def run(argv=None) -> tuple[int, str, str | None]:
    """Parse ``argv`` and execute; returns (exit status, rendered report, output path)."""
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_glue_values(argv))
    if args.command is None and args.figure is None:
        parser.error("a subcommand or --figure is required")
    if args.figure is not None:
        command = f"figure{args.figure}"
        payload, header, rows = figure_data(args.figure, args)
    else:
        command = args.command
        payload, header, rows = HANDLERS[command](args)
    return 0, _render(command, args, payload, header, rows), args.out


def main(argv=None) -> int:
    try:
        status, text, out = run(argv)
    except (DomainError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericalFailure as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
