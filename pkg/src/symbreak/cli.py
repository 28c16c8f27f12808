"""The ``sbs`` command line tool."""
from __future__ import annotations

import json
import sys
from dataclasses import dataclass
from typing import Optional

import click
import numpy as np

from . import o3_geometry as geo
from . import pointgroup_tables as pt
from . import sbs_engine as se
from . import verify_oracles as vo
from .errors import (
    BadParameter,
    HypothesisUnmet,
    InfiniteNormalizer,
    NotAPointGroup,
    NotNested,
    NotPartialBreaking,
    NotPartialSBS,
    NotSymmetryBreaking,
    SymBreakError,
    SymbolicGroup,
    Unsupported,
    UnknownName,
    UnsupportedIrrep,
)

EXIT_OK, EXIT_INTERNAL, EXIT_PARSE, EXIT_PRECONDITION, EXIT_SYMBOLIC, EXIT_IDENTIFY = 0, 1, 2, 3, 4, 5

_EXIT_CODES = [
    ((UnknownName, BadParameter, UnsupportedIrrep), EXIT_PARSE),
    ((NotSymmetryBreaking, NotPartialBreaking, NotNested, NotPartialSBS, HypothesisUnmet), EXIT_PRECONDITION),
    ((InfiniteNormalizer, SymbolicGroup, Unsupported), EXIT_SYMBOLIC),
    ((NotAPointGroup,), EXIT_IDENTIFY),
]


@dataclass(frozen=True)
class CliConfig:
    tolerance: float = 1e-8
    seed: int = 0
    output: str = "json"
    max_order: int = 1024

    def __post_init__(self):
        if self.tolerance <= 0:
            raise BadParameter("tolerance must be positive")
        if self.max_order < 1:
            raise BadParameter("max_order must be at least 1")


# ------------------------------------------------------------------ parsing

def _clean(x):
    """JSON-ready copy with -0.0 and float dust removed."""
    if isinstance(x, float):
        return 0.0 if abs(x) < 1e-12 else x
    if isinstance(x, dict):
        return {k: _clean(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_clean(v) for v in x]
    if isinstance(x, np.generic):
        return _clean(x.item())
    return x


def _load_json(text: str):
    if text.startswith("@"):
        with open(text[1:]) as fh:
            return json.load(fh)
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise BadParameter(f"invalid JSON: {e}") from None


def parse_orientation(text: Optional[str]) -> np.ndarray:
    """9 floats (JSON list or comma separated) or {"axis": [...], "angle": t}."""
    if text is None:
        return np.eye(3)
    if text.lstrip().startswith(("[", "{", "@")):
        data = _load_json(text)
    else:
        data = [float(v) for v in text.split(",")]
    if isinstance(data, dict):
        try:
            m = geo.rotation(data["axis"], float(data["angle"]))
        except (KeyError, TypeError, ValueError) as e:
            raise BadParameter(f"bad axis-angle orientation: {e}") from None
    else:
        m = np.asarray(data, dtype=float)
        if m.size != 9:
            raise BadParameter("orientation needs 9 numbers")
        m = m.reshape(3, 3)
    try:
        return geo.as_o3(m, 1e-6)
    except Exception as e:
        raise BadParameter(f"orientation is not orthogonal: {e}") from None


def build_group(token: str, n: Optional[int], orientation: np.ndarray) -> geo.PointGroup:
    P = geo.canonical_point_group(token, n)
    return P.conjugated(orientation)


def _emit(ctx: click.Context, payload) -> None:
    cfg: CliConfig = ctx.obj
    payload = _clean(payload)
    if cfg.output == "pretty":
        click.echo(json.dumps(payload, indent=2))
    else:
        click.echo(json.dumps(payload, separators=(",", ":")))


def _set_payload(B: se.SBSpec) -> dict:
    objs = B.finite_set()
    return {"sbs": B.to_json(), "finite": objs is not None,
            "size": len(objs) if objs is not None else None,
            "set": [o.to_json() for o in objs] if objs is not None else None}


# ------------------------------------------------------------------ commands

_group_opts = [
    click.option("--group", "group", required=True, help="Schoenflies token, e.g. D3, Dnh, Oh."),
    click.option("--n", "n", type=int, default=None, help="Order parameter for family tokens."),
    click.option("--orientation", default=None, help="9 floats or {\"axis\": [...], \"angle\": t}."),
]


def group_options(f):
    for opt in reversed(_group_opts):
        f = opt(f)
    return f


def k_options(required: bool):
    def wrap(f):
        f = click.option("--K-orientation", "k_orientation", default=None,
                         help="Orientation of K relative to the world frame.")(f)
        f = click.option("--K-n", "k_n", type=int, default=None)(f)
        f = click.option("--K", "k_token", required=required, default=None,
                         help="Target symmetry K <= S.")(f)
        return f
    return wrap


@click.group()
@click.option("--tol", type=float, default=1e-8, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--output", type=click.Choice(["json", "pretty"]), default="json", show_default=True)
@click.option("--max-order", type=int, default=1024, show_default=True)
@click.pass_context
def cli(ctx: click.Context, tol: float, seed: int, output: str, max_order: int):
    """Build and check equivariant symmetry breaking sets for point groups."""
    ctx.obj = CliConfig(tol, seed, output, max_order)


@cli.command("full")
@group_options
@click.option("--object", "obj", default=None, help="IrrepObject JSON (or @file) in the canonical frame.")
@click.pass_context
def cmd_full(ctx, group, n, orientation, obj):
    """Full SBS for a finite group S."""
    S = build_group(group, n, parse_orientation(orientation))
    b = geo.IrrepObject.from_json(_load_json(obj)) if obj else None
    B = se.full_sbs(S, b)
    _emit(ctx, {"S": S.to_json()} | _set_payload(B))


@cli.command("partial")
@group_options
@k_options(required=True)
@click.option("--object", "obj", default=None, help="IrrepObject JSON (or @file) in the frame of S.")
@click.pass_context
def cmd_partial(ctx, group, n, orientation, k_token, k_n, k_orientation, obj):
    """Partial SBS breaking S down to K."""
    S = build_group(group, n, parse_orientation(orientation))
    K = build_group(k_token, k_n, parse_orientation(k_orientation))
    p = geo.IrrepObject.from_json(_load_json(obj)) if obj else None
    B = se.partial_sbs(S, K, p)
    _emit(ctx, {"S": S.to_json(), "K": K.to_json(),
                "generalized_normalizer": B.orbit_group.to_json()} | _set_payload(B))


@cli.command("ideal")
@group_options
@k_options(required=False)
@click.pass_context
def cmd_ideal(ctx, group, n, orientation, k_token, k_n, k_orientation):
    """Does an ideal (degeneracy 1) SBS exist?"""
    S = build_group(group, n, parse_orientation(orientation))
    if k_token is None:
        comp = pt.complement_in_normalizer(S.name, S.n)
        N = se.oriented_normalizer(S)
        if comp is not None:
            H = comp.group.conjugated(S.orientation)
            out = {"exists": True, "H": H.to_json(), "H_names": list(comp.names), "degeneracy_bound": 1}
        else:
            bound = "infinite" if N.symbolic else N.order // S.order
            out = {"exists": False, "degeneracy_bound": bound}
        out["normalizer"] = N.to_json()
    else:
        K = build_group(k_token, k_n, parse_orientation(k_orientation))
        res = se.ideal_partial_object_symmetry(S, K)
        NK = se.generalized_normalizer(S, K)
        if res is not None:
            out = {"exists": True, "H": res.H.to_json(), "H_label": res.H.label,
                   "K": K.to_json(), "degeneracy_bound": 1}
        else:
            out = {"exists": False, "K": K.to_json(),
                   "degeneracy_bound": K.order * (NK.order // S.order)}
        out["generalized_normalizer"] = NK.to_json()
    _emit(ctx, out)


@cli.command("verify")
@click.argument("suite", type=click.Choice(["appendix-g", "theorems", "tables"]))
@click.pass_context
def cmd_verify(ctx, suite):
    """Run a verification suite; exits nonzero on any failed report."""
    if suite == "appendix-g":
        reports = vo.appendix_g_counterexample()
    elif suite == "theorems":
        reports = vo.theorem_suite()
    else:
        reports = vo.table_oracle()
    _emit(ctx, [r.to_json() for r in reports])
    if not all(r.passed for r in reports):
        ctx.exit(EXIT_INTERNAL)


@cli.command("identify")
@click.argument("matrices", type=click.Path(exists=True, dir_okay=False))
@click.pass_context
def cmd_identify(ctx, matrices):
    """Name the point group formed by a JSON list of 3x3 matrices."""
    with open(matrices) as fh:
        data = json.load(fh)
    mats = np.asarray(data, dtype=float).reshape(-1, 3, 3)
    P = geo.identify_point_group(mats, ctx.obj.tolerance)
    _emit(ctx, P.to_json() | {"label": P.label})


@cli.group("tables")
def cmd_tables():
    """Normalizer and complement tables."""


@cmd_tables.command("dump")
@click.option("--max-n", type=int, default=8, show_default=True)
@click.pass_context
def cmd_tables_dump(ctx, max_n):
    _emit(ctx, pt.tables_document(max_n))


@cli.command("sample")
@group_options
@k_options(required=False)
@click.option("--object", "obj", default=None)
@click.option("--count", type=int, default=1, show_default=True)
@click.pass_context
def cmd_sample(ctx, group, n, orientation, k_token, k_n, k_orientation, obj, count):
    """Draw objects from the full (or, with --K, partial) SBS."""
    S = build_group(group, n, parse_orientation(orientation))
    p = geo.IrrepObject.from_json(_load_json(obj)) if obj else None
    if k_token is None:
        B = se.full_sbs(S, p)
    else:
        B = se.partial_sbs(S, build_group(k_token, k_n, parse_orientation(k_orientation)), p)
    objs = se.enumerate_or_sample(B, max(count, 1), ctx.obj.seed)
    _emit(ctx, {"sbs": B.to_json(), "samples": [o.to_json() for o in objs]})


def _exit_code(err: BaseException) -> int:
    for kinds, code in _EXIT_CODES:
        if isinstance(err, kinds):
            return code
    return EXIT_INTERNAL


def main(argv=None) -> int:
    try:
        cli.main(args=argv, prog_name="sbs", standalone_mode=False)
    except click.exceptions.Exit as e:
        return e.exit_code
    except click.ClickException as e:
        e.show()
        return EXIT_PARSE
    except click.Abort:
        return EXIT_INTERNAL
    except SymBreakError as e:
        code = _exit_code(e)
        click.echo(json.dumps({"error": type(e).__name__, "reason": str(e), "exit_code": code}), err=True)
        return code
    except Exception as e:  # noqa: BLE001 - last-resort reporting
        click.echo(json.dumps({"error": type(e).__name__, "reason": str(e), "exit_code": EXIT_INTERNAL}),
                   err=True)
        return EXIT_INTERNAL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
