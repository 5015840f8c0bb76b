"""Command-line front end.

Subcommands: euler-rep, euler-vertices, fuchsian, sullivan, escher, cover,
prove-mw.  Exit codes are exhaustive and disjoint: 0 success, 1 assertion or
audit failure, 2 invalid input.  All randomness flows from one seed
(``--seed``, falling back to the ``FLATBUNDLE_SEED`` environment variable,
then 0), and machine-format reports are byte-identical for identical seed
and configuration.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass

import numpy as np

from . import serialize
from .cover import doubling_audit
from .errors import (
    AuditViolationError,
    FlatBundleError,
    InvalidInputError,
    NotARepresentationError,
    TheoremViolationError,
)
from .local_formula import (
    EXHAUSTIVE_SHEET_CAP,
    SheetCircle,
    census_bound,
    covering_disk_census,
    escher_check,
    escher_exhaust,
    euler_from_vertices,
)
from .representations import (
    abelian_representation,
    commutator_product,
    euler_number,
    fuchsian_representation,
    milnor_wood_audit,
    random_rotation_angles,
)
from .rotation import DEFAULT_ITERATION_BUDGET, rotation_number
from .sections import clutching_euler, sullivan_degree
from .serialize import dump_json, format_rational, load_json

ENV_SEED = "FLATBUNDLE_SEED"


@dataclass(frozen=True)
class RunConfig:
    relator_tol: float = 1e-6
    rot_tol: float = 1e-3
    budget: int = DEFAULT_ITERATION_BUDGET
    seed: int = 0
    fmt: str = "human"
    mode: tuple[str, int] | None = None
    trials: int = 100
    grid: int = 4096

    def __post_init__(self):
        if self.relator_tol <= 0 or self.rot_tol <= 0:
            raise InvalidInputError("tolerances must be positive")
        if self.budget < 1 or self.trials < 1 or self.grid < 2:
            raise InvalidInputError("budgets, trials and grid must be >= 1")


def _parse_mode(text: str) -> tuple[str, int]:
    if text == "exhaustive":
        return ("exhaustive", 0)
    if text.startswith("sampled:"):
        try:
            n = int(text.split(":", 1)[1])
        except ValueError:
            raise InvalidInputError(f"bad sample count in mode {text!r}")
        if n < 1:
            raise InvalidInputError(f"sample count must be >= 1 in {text!r}")
        return ("sampled", n)
    raise InvalidInputError(f"mode must be 'exhaustive' or 'sampled:N', got {text!r}")


def _resolve_seed(value) -> int:
    if value is not None:
        return value
    env = os.environ.get(ENV_SEED)
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise InvalidInputError(f"{ENV_SEED}={env!r} is not an integer")
    return 0


def _config(args) -> RunConfig:
    return RunConfig(
        relator_tol=args.tol,
        rot_tol=args.rot_tol,
        budget=args.budget,
        seed=_resolve_seed(args.seed),
        fmt=args.format,
        mode=_parse_mode(args.mode) if args.mode else None,
        trials=args.trials,
        grid=args.grid,
    )


def _emit(cfg: RunConfig, payload: dict, human_lines) -> None:
    if cfg.fmt == "machine":
        print(dump_json(payload))
    else:
        for line in human_lines:
            print(line)


# ----------------------------------------------------------------------
# subcommands
# ----------------------------------------------------------------------

def _cmd_euler_rep(args) -> int:
    cfg = _config(args)
    rep = serialize.representation_from_json(load_json(args.rep_file))
    result = euler_number(rep, relator_tol=cfg.relator_tol, grid=cfg.grid)
    enc = rotation_number(commutator_product(rep), tol=cfg.rot_tol, budget=cfg.budget)
    if not enc.contains(result.euler):
        raise TheoremViolationError(
            f"rotation enclosure [{enc.lo}, {enc.hi}] misses euler {result.euler}"
        )
    payload = result.to_dict()
    payload["rotation_enclosure"] = {"lo": float(enc.lo), "hi": float(enc.hi)}
    _emit(cfg, payload, [
        f"Euler number: {result.euler}",
        f"  relator deviation: {result.deviation:.3e} (tol {cfg.relator_tol:g})",
        f"  rotation enclosure: [{float(enc.lo):.6f}, {float(enc.hi):.6f}]",
    ])
    return 0


def _cmd_euler_vertices(args) -> int:
    cfg = _config(args)
    vertices = serialize.vertices_from_json(load_json(args.vertex_file))
    s = euler_from_vertices(vertices)
    verdict = "integral" if s.integral else "non-integral"
    _emit(cfg, s.to_dict(), [f"{format_rational(s.total)} ({verdict})"])
    return 0


def _cmd_fuchsian(args) -> int:
    cfg = _config(args)
    rep = fuchsian_representation(args.genus)
    result = euler_number(rep, relator_tol=cfg.relator_tol, grid=cfg.grid)
    doc = serialize.representation_to_json(rep)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(dump_json(doc) + "\n")
        _emit(cfg, {"path": args.out, "genus": args.genus, "euler": result.euler}, [
            f"wrote genus-{args.genus} fuchsian representation "
            f"(euler {result.euler}) to {args.out}",
        ])
    else:
        print(dump_json(doc))
    return 0


def _cmd_sullivan(args) -> int:
    cfg = _config(args)
    corners = serialize.corners_from_json(load_json(args.corners_file))
    result = sullivan_degree(corners)
    payload = {
        "degree": result.degree,
        "arc_length": serialize.number_to_json(result.arc_length),
        "bound": 2 * corners.genus - 1,
    }
    _emit(cfg, payload, [
        f"degree {result.degree} (arc length {float(result.arc_length):.6f} turns, "
        f"bound |degree| <= {2 * corners.genus - 1})",
    ])
    return 0


def _default_escher_mode(g: int, cfg: RunConfig) -> tuple[str, int]:
    if cfg.mode is not None:
        return cfg.mode
    if 4 * g <= EXHAUSTIVE_SHEET_CAP:
        return ("exhaustive", 0)
    return ("sampled", 1000)


def _cmd_escher(args) -> int:
    cfg = _config(args)
    g = args.genus
    kind, count = _default_escher_mode(g, cfg)
    report = escher_exhaust(g, mode=kind, count=count, seed=cfg.seed)
    identity_order = SheetCircle(tuple(range(1, 4 * g + 1)))
    verdict = escher_check(identity_order)
    payload = {"exhaust": report.to_dict(), "identity_certificate": verdict.to_dict()}
    _emit(cfg, payload, [
        f"genus {g}: {report.orders_checked} circular orders checked ({report.mode}), "
        "all UNSAT",
        "identity-order certificate (gap -> violated arc constraint): "
        + ", ".join(f"{j}->{c}" for j, c in enumerate(verdict.certificate)),
    ])
    return 0


def _cmd_cover(args) -> int:
    cfg = _config(args)
    rep = serialize.representation_from_json(load_json(args.rep_file))
    report = doubling_audit(rep, relator_tol=cfg.relator_tol, grid=cfg.grid)
    _emit(cfg, report.to_dict(), [
        f"base euler {report.euler} -> cover euler {report.cover_euler} "
        f"= 2*{report.euler} over genus {report.cover_genus}",
        f"  |{report.cover_euler}| <= {report.cover_bound} (cover bound)",
    ])
    return 0


def _prove_mw_steps(g: int, cfg: RunConfig):
    steps = []

    vertices = covering_disk_census(g)
    total = euler_from_vertices(vertices)
    bound = census_bound(g)
    ok = (
        total.integral
        and total.total == bound
        and len(vertices) == 3 * (4 * g - 2)
    )
    steps.append({
        "name": "census",
        "ok": ok,
        "vertices": len(vertices),
        "sum": format_rational(total.total),
        "conclusion": f"|E| <= {2 * g - 1}",
    })

    kind, count = _default_escher_mode(g, cfg)
    try:
        report = escher_exhaust(g, mode=kind, count=count, seed=cfg.seed)
        steps.append({
            "name": "escher",
            "ok": report.all_unsat,
            "mode": report.mode,
            "orders_checked": report.orders_checked,
            "conclusion": f"|E| = {2 * g - 1} excluded (no room for the regular sheet)",
        })
    except TheoremViolationError as exc:
        steps.append({"name": "escher", "ok": False, "violation": exc.payload})

    doubling = []
    ok = True
    reps = [("abelian", abelian_representation(
        g, random_rotation_angles(g, np.random.default_rng([cfg.seed, 9]))))]
    if g >= 2:
        reps.append(("fuchsian", fuchsian_representation(g)))
    for name, rep in reps:
        try:
            doubling.append({"family": name, **doubling_audit(
                rep, relator_tol=cfg.relator_tol, grid=cfg.grid).to_dict()})
        except AuditViolationError as exc:
            doubling.append({"family": name, "ok": False, "violation": exc.payload})
            ok = False
    steps.append({
        "name": "doubling",
        "ok": ok,
        "audits": doubling,
        "conclusion": f"|2E| = |E_cover| <= {2 * (2 * g - 1) - 1} forces |E| <= {2 * g - 2}",
    })

    try:
        audit = milnor_wood_audit(
            g, trials=cfg.trials, seed=cfg.seed,
            relator_tol=cfg.relator_tol, grid=cfg.grid,
        )
        steps.append({
            "name": "audit",
            "ok": True,
            "n_checked": len(audit.entries),
            "max_abs_euler": audit.max_abs_euler,
            "bound": audit.bound,
            "attained": audit.attained,
        })
    except AuditViolationError as exc:
        steps.append({"name": "audit", "ok": False, "violation": exc.payload})

    return steps


def _cmd_prove_mw(args) -> int:
    cfg = _config(args)
    g = args.genus
    if g < 1:
        raise InvalidInputError(f"genus must be >= 1, got {g}")
    steps = _prove_mw_steps(g, cfg)
    ok = all(s["ok"] for s in steps)
    payload = {
        "genus": g,
        "seed": cfg.seed,
        "trials": cfg.trials,
        "steps": steps,
        "ok": ok,
    }
    lines = [f"Milnor-Wood replay, genus {g} (seed {cfg.seed})"]
    for i, s in enumerate(steps, 1):
        status = "PASS" if s["ok"] else "FAIL"
        detail = s.get("conclusion", "")
        if s["name"] == "census":
            detail = f"{s['vertices']} extremal vertices, weight sum {s['sum']}; {detail}"
        elif s["name"] == "escher":
            detail = f"{s.get('orders_checked', 0)} orders UNSAT ({s.get('mode', '?')}); {detail}"
        elif s["name"] == "doubling":
            pairs = ", ".join(
                f"{a['family']}: {a.get('euler')} -> {a.get('cover_euler')}"
                for a in s["audits"]
            )
            detail = f"{pairs}; {detail}"
        elif s["name"] == "audit":
            detail = (
                f"{s.get('n_checked', 0)} representations, "
                f"max |E| = {s.get('max_abs_euler')} <= {s.get('bound')}"
                + (", bound attained" if s.get("attained") else "")
            )
        lines.append(f"  [{i}] {s['name']}: {detail}  {status}")
    lines.append(f"RESULT: {'PASS' if ok else 'FAIL'}")
    _emit(cfg, payload, lines)
    return 0 if ok else 1


# ----------------------------------------------------------------------
# argument parsing
# ----------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=1e-6,
                        help="relator tolerance (default 1e-6)")
    common.add_argument("--rot-tol", type=float, default=1e-3, dest="rot_tol",
                        help="rotation enclosure tolerance (default 1e-3)")
    common.add_argument("--budget", type=int, default=DEFAULT_ITERATION_BUDGET,
                        help="rotation iteration budget (default 2^20)")
    common.add_argument("--seed", type=int, default=None,
                        help=f"random seed (default ${ENV_SEED} or 0)")
    common.add_argument("--format", choices=("human", "machine"), default="human",
                        help="report format")
    common.add_argument("--mode", default=None,
                        help="escher mode: exhaustive | sampled:N")
    common.add_argument("--trials", type=int, default=100,
                        help="trials per audit family (default 100)")
    common.add_argument("--grid", type=int, default=4096,
                        help="relator verification grid size (default 4096)")

    parser = argparse.ArgumentParser(
        prog="flatbundle",
        description="Euler numbers of flat circle bundles, three ways, "
                    "plus a mechanical Milnor-Wood audit.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("euler-rep", parents=[common],
                       help="Euler number of a representation file")
    p.add_argument("rep_file")
    p.set_defaults(func=_cmd_euler_rep)

    p = sub.add_parser("euler-vertices", parents=[common],
                       help="exact weight sum of a singular-vertex file")
    p.add_argument("vertex_file")
    p.set_defaults(func=_cmd_euler_vertices)

    p = sub.add_parser("fuchsian", parents=[common],
                       help="write the fuchsian representation of a genus")
    p.add_argument("genus", type=int)
    p.add_argument("-o", "--out", default=None, help="output file (default stdout)")
    p.set_defaults(func=_cmd_fuchsian)

    p = sub.add_parser("sullivan", parents=[common],
                       help="corner-loop degree of a corner-data file")
    p.add_argument("corners_file")
    p.set_defaults(func=_cmd_sullivan)

    p = sub.add_parser("escher", parents=[common],
                       help="fiber-order exclusion certificate")
    p.add_argument("genus", type=int)
    p.set_defaults(func=_cmd_escher)

    p = sub.add_parser("cover", parents=[common],
                       help="double-cover doubling report for a representation file")
    p.add_argument("rep_file")
    p.set_defaults(func=_cmd_cover)

    p = sub.add_parser("prove-mw", parents=[common],
                       help="replay the Milnor-Wood proof at a given genus")
    p.add_argument("genus", type=int)
    p.set_defaults(func=_cmd_prove_mw)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InvalidInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (NotARepresentationError, FlatBundleError) as exc:
        print(f"failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
