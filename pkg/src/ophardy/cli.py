"""Command-line front end.

    ophardy <command> --spec PATH [--grid N] [--ladder K] [--p P] [--out PATH]
            [--format json|csv] [--seed S] [--tol T] [--claim NAME] [--zeta RE IM]

Exit status: 0 pass, 1 verification failure, 2 usage or validation error.
The artifact goes to ``--out`` (written atomically) or to standard output;
a one-line summary goes to standard output when an artifact file is written.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import tempfile
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import boundary as _boundary
from . import gallery, norms, schemas, transforms, verify
from ._linalg import op_norms
from .errors import OpHardyError
from .grid import (
    CircleFunction,
    CircleGrid,
    DiskFunction,
    PoissonExtension,
    RadiusLadder,
    RuleBased,
    Sampled,
    TaylorPolynomial,
)

COMMANDS = ("fourier", "poisson", "norm", "boundary", "gallery", "verify")
EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

# per-command defaults for the optional numeric flags
_DEFAULT_GRID = {"fourier": 64, "poisson": None, "norm": 1024, "boundary": 256, "gallery": 64}
_DEFAULT_LADDER = {"norm": 10, "boundary": 12}
_VERIFY_DEFAULTS = {
    "isometry": (4096, 14, 1e-3),
    "contraction": (None, 10, verify.CONTRACTION_SLACK),
    "adjoint": (None, None, 1e-12),
    "roundtrip": (1024, 12, 1e-6),
    "containment": (None, 14, None),
}
DEFAULT_EPS = 1.4

# second CSV header line: what each column holds
ROLES = {
    "r": "radius",
    "K": "ladder levels",
    "n_points": "grid nodes",
    "dim": "dimension",
    "mode": "Fourier mode",
    "node": "node index",
    "theta": "angle [rad]",
    "row": "matrix row",
    "col": "matrix column",
    "re": "real part",
    "im": "imaginary part",
    "quantity": "label",
    "value": "value",
    "p": "exponent",
    "series": "label",
    "lhs": "measured",
    "rhs": "reference",
    "oracle": "closed form",
    "abs_dev": "absolute deviation",
    "rel_dev": "relative deviation",
    "tol": "tolerance",
    "rhs_tol": "tolerance",
    "ratio": "gap ratio",
    "op_norm": "operator norm",
    "residual": "extrapolation increment",
    "max_residual": "extrapolation increment",
    "lp_deviation": "deviation (L^p)",
    "max_deviation": "deviation (sup)",
}


class UsageError(OpHardyError, ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    spec_path: str
    grid_n: Optional[int] = None
    ladder_k: Optional[int] = None
    p: str = "2"
    out_path: Optional[str] = None
    format: str = "json"
    seed: int = 0
    tol: Optional[float] = None
    claim: Optional[str] = None
    zeta: Optional[tuple] = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if self.grid_n is not None and self.grid_n < 2:
            raise UsageError("--grid must be at least 2")
        if self.ladder_k is not None and self.ladder_k < 1:
            raise UsageError("--ladder must be at least 1")
        if self.tol is not None and not self.tol > 0:
            raise UsageError("--tol must be positive")
        if self.format not in ("json", "csv"):
            raise UsageError("--format must be json or csv")
        norms.parse_exponent(self.p)


@dataclass
class Outcome:
    """What a command produced: the JSON document, a flat table, a summary, a verdict."""

    document: dict
    columns: list
    rows: list
    summary: str
    passed: bool = True


# ---------------------------------------------------------------- serialization

def _plain(x):
    """Recursively convert numpy scalars and complex numbers to JSON-ready values."""
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, np.ndarray):
        return _plain(x.tolist())
    if isinstance(x, (complex, np.complexfloating)):
        return [float(x.real), float(x.imag)]
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        return x if math.isfinite(x) else ("inf" if x > 0 else "-inf" if x < 0 else "nan")
    return x


def render_json(document: dict) -> str:
    return json.dumps(_plain(document), sort_keys=True, indent=2, allow_nan=False) + "\n"


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    return str(v)


def render_csv(columns: list, rows: list) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    w.writerow([ROLES.get(c, "value") for c in columns])
    for row in rows:
        w.writerow([_cell(_plain(row.get(c))) for c in columns])
    return buf.getvalue()


def _flatten_rows(rows: list):
    """Split ``[re, im]`` cells into ``name_re`` / ``name_im`` columns."""
    columns, flat = [], []
    for row in rows:
        out = {}
        for k, v in row.items():
            if isinstance(v, (list, tuple)) and len(v) == 2 and all(isinstance(t, float) for t in v):
                out[f"{k}_re"], out[f"{k}_im"] = v
            else:
                out[k] = v
        for k in out:
            if k not in columns:
                columns.append(k)
        flat.append(out)
    return columns, flat


def atomic_write(path: str, text: str) -> None:
    """Write ``text`` to ``path`` through a temporary file in the same directory."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(prefix=".ophardy-", suffix=".tmp", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
            fh.flush()
            os.fsync(fh.fileno())
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# ---------------------------------------------------------------- inputs

def _materialize(obj, seed: int):
    if isinstance(obj, gallery.GallerySpec):
        if obj.name == "matrix_polynomial" and "seed" not in obj.params:
            obj = gallery.GallerySpec(obj.name, obj.dim, {**obj.params, "seed": seed})
        return gallery.build(obj)
    return obj


def _as_circle(obj) -> CircleFunction:
    if isinstance(obj, TaylorPolynomial):
        return obj.boundary_polynomial()
    if isinstance(obj, PoissonExtension):
        return obj.boundary
    if isinstance(obj, CircleFunction):
        return obj
    raise UsageError(f"this command needs a circle function, got {obj!r}")


def _as_disk(obj) -> DiskFunction:
    if isinstance(obj, DiskFunction):
        return obj
    return PoissonExtension(obj)


def _grid(cfg: RunConfig, default):
    n = cfg.grid_n if cfg.grid_n is not None else default
    return CircleGrid(n) if n is not None else None


def _ladder(cfg: RunConfig, default: int) -> RadiusLadder:
    return RadiusLadder(cfg.ladder_k if cfg.ladder_k is not None else default)


def _matrix_cells(prefix: dict, m) -> list:
    m = np.asarray(m)
    return [
        {**prefix, "row": i, "col": j, "re": float(m[i, j].real), "im": float(m[i, j].imag)}
        for i in range(m.shape[0])
        for j in range(m.shape[1])
    ]


# ---------------------------------------------------------------- commands

def cmd_fourier(cfg, obj, doc) -> Outcome:
    f = _as_circle(obj)
    grid = _grid(cfg, _DEFAULT_GRID["fourier"])
    M = max(1, (grid.n_points - 4) // 4)
    modes = list(range(-M, M + 1))
    coeffs = [transforms.fourier_coefficient(f, n, grid) for n in modes]
    defect = transforms.analytic_defect(f, M, grid).max_negative_defect
    table = []
    for n, c in zip(modes, coeffs):
        table.extend(_matrix_cells({"mode": n}, c))
    document = {
        "command": "fourier",
        "spec": doc,
        "n_points": grid.n_points,
        "modes": modes,
        "coefficients": [schemas.matrix_to_json(c) for c in coeffs],
        "op_norms": [norms.op_norm(c) for c in coeffs],
        "analytic_defect": defect,
    }
    summary = f"fourier: {len(modes)} modes on {grid.n_points} nodes, negative-mode defect {defect:.3e}"
    return Outcome(document, ["mode", "row", "col", "re", "im"], table, summary)


def cmd_poisson(cfg, obj, doc) -> Outcome:
    if cfg.zeta is None:
        raise UsageError("poisson needs --zeta RE IM")
    zeta = complex(*cfg.zeta)
    if not abs(zeta) < 1.0:
        raise UsageError(f"--zeta must lie in the open unit disk, |zeta| = {abs(zeta)!r}")
    f = _as_circle(obj)
    grid = _grid(cfg, _DEFAULT_GRID["poisson"])
    strong = transforms.strong_poisson(f, zeta, grid)
    entry = transforms.poisson_integral(f, zeta, grid)
    quad = transforms.quadrature_used(f, zeta, grid)
    table = [
        {**a, "strong_re": a["re"], "strong_im": a["im"], "entrywise_re": b["re"], "entrywise_im": b["im"]}
        for a, b in zip(_matrix_cells({}, strong), _matrix_cells({}, entry))
    ]
    document = {
        "command": "poisson",
        "spec": doc,
        "zeta": [zeta.real, zeta.imag],
        "n_points": quad.n_points,
        "strong": schemas.matrix_to_json(strong),
        "entrywise": schemas.matrix_to_json(entry),
        "op_norm": norms.op_norm(strong),
    }
    summary = f"poisson: |P_s[f](zeta)| = {norms.op_norm(strong):.12g} on {quad.n_points} nodes"
    return Outcome(document, ["row", "col", "strong_re", "strong_im", "entrywise_re", "entrywise_im"], table, summary)


def cmd_norm(cfg, obj, doc) -> Outcome:
    p = norms.parse_exponent(cfg.p)
    if isinstance(obj, DiskFunction):
        grid = _grid(cfg, _DEFAULT_GRID["norm"])
        ladder = _ladder(cfg, _DEFAULT_LADDER["norm"])
        hp = norms.hp_disk_norm(obj, p, ladder, grid)
        strong = norms.strong_disk_norm(obj, ladder, grid)
        table = [
            {"r": r, "hp_norm": a, "strong_norm": b}
            for (r, a), (_, b) in zip(hp.per_radius, strong.per_radius)
        ]
        document = {
            "command": "norm",
            "spec": doc,
            "p": norms.format_exponent(p),
            "n_points": grid.n_points,
            "profile": table,
            "hp_norm": hp.final,
            "strong_norm": strong.final,
        }
        summary = f"norm: H^{norms.format_exponent(p)} disk norm {hp.final:.12g}, strong H^2 norm {strong.final:.12g}"
        return Outcome(document, ["r", "hp_norm", "strong_norm"], table, summary)

    f = obj
    # piecewise-constant rules integrate exactly on their arcs unless a grid is forced
    exact = cfg.grid_n is None and isinstance(f, RuleBased) and f.exact_quadrature() is not None
    if exact:
        quad = f.exact_quadrature()
    elif isinstance(f, Sampled):
        quad = f.grid
    else:
        quad = _grid(cfg, _DEFAULT_GRID["norm"])
    sot = norms.lp_sot_norm(f, p, quad)
    values = {
        "sot_norm": sot,
        "sot_norm_squared": sot * sot,
        "l2_strong_norm": norms.l2_strong_norm(f, quad),
        "lp_strong_estimate": norms.lp_strong_norm_estimate(f, p, quad, seed=cfg.seed),
    }
    table = [{"quantity": k, "value": v} for k, v in values.items()]
    document = {
        "command": "norm",
        "spec": doc,
        "p": norms.format_exponent(p),
        "quadrature": "arcs" if exact else "uniform",
        "n_points": quad.n_points,
        "seed": cfg.seed,
        **values,
    }
    summary = f"norm: L^{norms.format_exponent(p)}_sot {sot:.12g}, strong L^2 {values['l2_strong_norm']:.12g}"
    return Outcome(document, ["quantity", "value"], table, summary)


def cmd_boundary(cfg, obj, doc) -> Outcome:
    h = _as_disk(obj)
    grid = _grid(cfg, _DEFAULT_GRID["boundary"])
    ladder = _ladder(cfg, _DEFAULT_LADDER["boundary"])
    tol = cfg.tol if cfg.tol is not None else 1e-6
    res = _boundary.radial_boundary(h, grid, ladder, tol=tol)
    theta = 2 * np.pi * np.arange(grid.n_points) / grid.n_points
    bnorm = op_norms(res.boundary.values)
    table = [
        {"node": j, "theta": float(theta[j]), "op_norm": float(bnorm[j]), "residual": float(res.per_node_residual.values[j])}
        for j in range(grid.n_points)
    ]
    document = {
        "command": "boundary",
        "spec": doc,
        "n_points": grid.n_points,
        "K": ladder.levels,
        "tol": tol,
        "converged": res.converged,
        "failed_nodes": res.failed_nodes.tolist(),
        "max_residual": float(np.max(res.per_node_residual.values)),
        "boundary": [schemas.matrix_to_json(v) for v in res.boundary.values],
        "nodes": table,
    }
    state = "converged" if res.converged else f"{res.failed_nodes.size} node(s) above tol"
    summary = f"boundary: {state}, max residual {document['max_residual']:.3e} on {grid.n_points} nodes"
    return Outcome(document, ["node", "theta", "op_norm", "residual"], table, summary, res.converged)


def cmd_gallery(cfg, obj, doc) -> Outcome:
    if not isinstance(doc, dict) or doc.get("type") not in gallery.NAMES:
        raise UsageError("gallery needs a gallery spec")
    f = _as_circle(obj)
    grid = _grid(cfg, _DEFAULT_GRID["gallery"])
    eps = cfg.tol if cfg.tol is not None else DEFAULT_EPS
    pn = norms.pointwise_norm(f, grid)
    theta = 2 * np.pi * np.arange(grid.n_points) / grid.n_points
    table = [{"node": j, "theta": float(theta[j]), "op_norm": float(pn.values[j])} for j in range(grid.n_points)]
    document = {
        "command": "gallery",
        "spec": doc,
        "shape": list(f.shape),
        "n_points": grid.n_points,
        "sup_norm": norms.lp_scalar_norm(pn, math.inf),
        "l2_sot_norm": norms.lp_scalar_norm(pn, 2),
        "l2_strong_norm": norms.l2_strong_norm(f, grid),
        "eps": eps,
        "witness": gallery.separability_witness(f, eps, grid),
        "nodes": table,
    }
    summary = f"gallery: {doc['type']} {f.shape[0]}x{f.shape[1]}, eps-net size {document['witness']} at eps={eps:g}"
    return Outcome(document, ["node", "theta", "op_norm"], table, summary)


def _resolution_ladder(n: int, K: int):
    if n % 8 or K < 4:
        raise UsageError("isometry needs --grid divisible by 8 and --ladder >= 4")
    return tuple((n >> s, K - s) for s in (3, 2, 1, 0))


def _run_claim(cfg, obj):
    claim = cfg.claim
    n_def, k_def, tol_def = _VERIFY_DEFAULTS[claim]
    n = cfg.grid_n if cfg.grid_n is not None else n_def
    K = cfg.ladder_k if cfg.ladder_k is not None else k_def
    tol = cfg.tol if cfg.tol is not None else tol_def
    if claim == "isometry":
        return verify.verify_isometry(_as_circle(obj), cfg.p, _resolution_ladder(n, K), tol)
    if claim == "contraction":
        rep = verify.verify_contraction_nonanalytic(
            _as_circle(obj), cfg.p, RadiusLadder(K), CircleGrid(n) if n is not None else None
        )
        rep.tol = tol
        return rep
    if claim == "adjoint":
        grid = CircleGrid(n) if n is not None else None
        return verify.verify_adjoint_identity(_as_circle(obj), verify.DEFAULT_PROBES, grid, tol)
    if claim == "roundtrip":
        return verify.verify_boundary_roundtrip(_as_circle(obj), ((n, K),), tol)
    # containment: dimensions 1, 4, 16, ... up to the spec's dim
    dim = getattr(obj, "dim", None)
    if dim is None:
        raise UsageError("containment needs a gallery spec with dim")
    dims = [4 ** j for j in range(0, 8) if 4 ** j <= dim]
    return verify.verify_containment_gaps(dims, K, DEFAULT_EPS if cfg.tol is None else cfg.tol)


def cmd_verify(cfg, obj, doc) -> Outcome:
    if "claim" in doc and "type" not in doc:
        # re-judge a stored report from its rows and tolerance
        report, spec = obj, doc.get("spec")
    else:
        if cfg.claim is None:
            raise UsageError("verify needs --claim NAME")
        report, spec = _run_claim(cfg, obj), doc
    document = {**report.to_dict(), "spec": spec}
    columns, table = _flatten_rows(report.rows)
    verdict = "pass" if report.verdict else "fail"
    top = report.rows[-1] if report.rows else {}
    dev = top.get("rel_dev", top.get("abs_dev"))
    detail = f", last deviation {dev:.3e}" if isinstance(dev, float) else ""
    summary = f"verify {report.claim}: {verdict} ({len(report.rows)} rows{detail})"
    return Outcome(document, columns, table, summary, report.verdict)


_HANDLERS = {
    "fourier": cmd_fourier,
    "poisson": cmd_poisson,
    "norm": cmd_norm,
    "boundary": cmd_boundary,
    "gallery": cmd_gallery,
    "verify": cmd_verify,
}


def load(cfg: RunConfig):
    """Read and validate the spec file; returns ``(object, document)``."""
    with open(cfg.spec_path, "rb") as fh:
        data = fh.read()
    try:
        doc = json.loads(data)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise schemas.SchemaError(f"not valid JSON: {exc}") from exc
    if cfg.command == "verify" and isinstance(doc, dict) and "claim" in doc and "type" not in doc:
        return schemas.parse_report(doc), doc
    if cfg.command == "verify" and cfg.claim == "containment" and isinstance(doc, dict):
        return schemas.from_document(doc), doc
    return _materialize(schemas.from_document(doc), cfg.seed), doc


def execute(cfg: RunConfig) -> Outcome:
    obj, doc = load(cfg)
    return _HANDLERS[cfg.command](cfg, obj, doc)


def run(cfg: RunConfig, stdout=None, stderr=None) -> int:
    stdout = stdout if stdout is not None else sys.stdout
    stderr = stderr if stderr is not None else sys.stderr
    try:
        out = execute(cfg)
        text = render_json(out.document) if cfg.format == "json" else render_csv(out.columns, out.rows)
        if cfg.out_path:
            atomic_write(cfg.out_path, text)
            print(out.summary, file=stdout)
        else:
            stdout.write(text)
            print(out.summary, file=stderr)
    except OpHardyError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_USAGE
    return EXIT_PASS if out.passed else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ophardy", description="Operator-valued Hardy space toolkit.")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--spec", required=True, metavar="PATH", help="JSON function spec (or a report, for verify)")
    ap.add_argument("--grid", type=int, metavar="N", help="circle grid size")
    ap.add_argument("--ladder", type=int, metavar="K", help="radius ladder levels, r_k = 1 - 2**-k")
    ap.add_argument("--p", default="2", metavar="P", help="exponent: 1, 2, inf or a decimal >= 1")
    ap.add_argument("--out", metavar="PATH", help="artifact path (default: standard output)")
    ap.add_argument("--format", choices=("json", "csv"), default="json")
    ap.add_argument("--seed", type=int, default=0, metavar="S")
    ap.add_argument("--tol", type=float, metavar="T", help="tolerance (epsilon of the net for gallery/containment)")
    ap.add_argument("--claim", choices=verify.CLAIMS, metavar="NAME", help="one of: " + ", ".join(verify.CLAIMS))
    ap.add_argument("--zeta", type=float, nargs=2, metavar=("RE", "IM"))
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig(
            command=args.command,
            spec_path=args.spec,
            grid_n=args.grid,
            ladder_k=args.ladder,
            p=args.p,
            out_path=args.out,
            format=args.format,
            seed=args.seed,
            tol=args.tol,
            claim=args.claim,
            zeta=tuple(args.zeta) if args.zeta else None,
        )
    except OpHardyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
