#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
hecke-lab entry point
1. Exact Hecke-algebra computations (cosets, products, matrices, moments, q-expansions)
2. Geometric values phi0 / psi0 and their Gram checks
3. Verification suites (verify-finite, verify-all), optionally persisted
"""

import argparse
import asyncio
import json
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from pydantic import BaseModel, Field, ValidationError

import config
from hecke import exact_core, modular_qexp, radial_free, utils
from hecke.coset_engine import (
    LEFT,
    RIGHT,
    CosetWindow,
    DoubleCoset,
    decompose,
    hecke_matrix,
    hecke_product,
    hecke_product_support,
    unimodularity_check,
)
from hecke.errors import HeckeLabError, PreconditionError
from hecke.exact_core import ProjectiveMatrix

logger = utils.setup_logger()


class CommandConfig(BaseModel):
    command: str
    seed: int = Field(0, ge=0)
    cases: Optional[int] = Field(None, gt=0)
    tolerance: Optional[float] = Field(None, gt=0)
    precision: Optional[int] = Field(None, gt=0)
    save: bool = False
    output: Optional[str] = None


class CosetsOutput(BaseModel):
    index: int
    sign: int
    side: str
    count: int
    reps: List[Dict[str, str]]


class ProductTerm(BaseModel):
    index: int
    sign: int
    mult: Optional[int] = None


class ProductOutput(BaseModel):
    support_only: bool
    terms: List[ProductTerm]


def _matrix(text: str) -> ProjectiveMatrix:
    return ProjectiveMatrix.from_text(text)


def _double_coset(args) -> DoubleCoset:
    if getattr(args, "sigma", None):
        return DoubleCoset(_matrix(args.sigma))
    return DoubleCoset.from_index(args.n)


def _read_json(path: str):
    file = Path(path)
    if not file.exists():
        raise PreconditionError(f"file not found: {path}")
    try:
        return json.loads(file.read_text())
    except json.JSONDecodeError as e:
        raise PreconditionError(f"{path} is not valid JSON: {e}") from e


def cmd_cosets(args, cfg: CommandConfig) -> Tuple[dict, int]:
    dc = DoubleCoset(_matrix(args.sigma))
    reps = decompose(dc, LEFT if args.side == "left" else RIGHT)
    index, sign = dc.key
    out = CosetsOutput(index=index, sign=sign, side=args.side, count=len(reps), reps=[r.to_json() for r in reps])
    return out.model_dump(), 0


def cmd_product(args, cfg: CommandConfig) -> Tuple[dict, int]:
    dc1, dc2 = DoubleCoset.from_index(args.n1), DoubleCoset.from_index(args.n2)
    if args.support_only:
        terms = [ProductTerm(index=k[0], sign=k[1]) for k in sorted(hecke_product_support(dc1, dc2))]
    else:
        terms = [
            ProductTerm(index=t.coset.key[0], sign=t.coset.key[1], mult=t.mult) for t in hecke_product(dc1, dc2)
        ]
    return ProductOutput(support_only=args.support_only, terms=terms).model_dump(exclude_none=True), 0


def cmd_unimodular(args, cfg: CommandConfig) -> Tuple[dict, int]:
    dc = DoubleCoset(_matrix(args.sigma))
    left, right = len(decompose(dc, LEFT)), len(decompose(dc, RIGHT))
    return {"unimodular": unimodularity_check(dc.base), "left": left, "right": right}, 0


def cmd_hecke_matrix(args, cfg: CommandConfig) -> Tuple[dict, int]:
    dc = _double_coset(args)
    moves = DoubleCoset.from_index(args.window_index) if args.window_index else dc
    window = CosetWindow.closure(moves, args.depth)
    result = hecke_matrix(dc, window)
    if cfg.output:
        result.to_frame().to_csv(cfg.output)
        logger.info(f"wrote {len(window)}x{len(window)} matrix to {cfg.output}")
    return {
        "labels": [label.to_json() for label in result.labels],
        "matrix": result.matrix,
        "overflow": result.overflow,
    }, 0


def _report_payload(report) -> dict:
    return report.to_json()


def _save(report, command: str, target: str = "") -> int:
    from database.db_session import save_report

    run_id = asyncio.run(save_report(report, command, target))
    logger.info(f"saved run {run_id}")
    return run_id


def cmd_verify_finite(args, cfg: CommandConfig) -> Tuple[dict, int]:
    from operators.finite_model import BUILTIN_MODELS, resolve_model
    from verification.scheduler import SuiteOutcome, VerificationReport, print_summary
    from verification.suites import finite_model_checks

    model = resolve_model(args.model)
    key = args.model if args.model in BUILTIN_MODELS else None
    checks = finite_model_checks(model, cfg.seed, cfg.cases, key)
    report = VerificationReport(
        seed=cfg.seed, suites=[SuiteOutcome(key="finite", name=model.name, priority=2, checks=checks)]
    )
    print_summary(report)
    payload = {"model": model.name, **_report_payload(report)}
    if cfg.save:
        payload["run_id"] = _save(report, "verify-finite", args.model)
    return payload, 0 if report.passed else 1


def cmd_phi(args, cfg: CommandConfig) -> Tuple[dict, int]:
    from geometry import phi

    return phi.phi0_value(_matrix(args.g)).model_dump(), 0


def cmd_psi(args, cfg: CommandConfig) -> Tuple[dict, int]:
    from geometry import phi

    return phi.psi0_value(_matrix(args.s1), _matrix(args.s2)).model_dump(), 0


def _parse_elements(raw) -> List[ProjectiveMatrix]:
    if not isinstance(raw, list) or not raw:
        raise PreconditionError("elements file must hold a nonempty JSON list")
    out = []
    for item in raw:
        if isinstance(item, str):
            out.append(ProjectiveMatrix.from_text(item))
        elif isinstance(item, dict):
            out.append(ProjectiveMatrix.from_json(item))
        else:
            raise PreconditionError(f"cannot read a matrix from {item!r}")
    return out


def cmd_gram(args, cfg: CommandConfig) -> Tuple[dict, int]:
    from geometry import phi

    elements = _parse_elements(_read_json(args.file))
    tol = cfg.tolerance if cfg.tolerance is not None else config.settings.PSD_TOL
    if args.kind == "phi":
        smallest, psd = phi.gram_psd_check(phi.phi0, elements, tol)
    else:
        smallest, psd = phi.psi_gram_psd_check(elements, tol)
    return {"kind": args.kind, "size": len(elements), "min_eigenvalue": smallest, "psd": psd, "tolerance": tol}, 0


def _test_element(args) -> radial_free.SupportedGroupElement:
    if args.x:
        return radial_free.SupportedGroupElement.from_json(_read_json(args.x))
    return radial_free.coset_representative_sum(args.p)


def cmd_moments(args, cfg: CommandConfig) -> Tuple[dict, int]:
    x = _test_element(args)
    if not len(x):
        raise PreconditionError("X has empty support")
    degree = len(decompose(DoubleCoset(next(iter(x.support))), LEFT))
    rows = [
        {"n": n, "moment": utils.format_gaussian(power.coefficient(exact_core.IDENTITY)),
         "kesten": str(radial_free.kesten_moment(degree, n))}
        for n, power in enumerate(radial_free.powers(x, args.nmax))
    ]
    return {"degree": degree, "rows": rows}, 0


def cmd_criterion(args, cfg: CommandConfig) -> Tuple[dict, int]:
    report = radial_free.criterion_check(_test_element(args), args.nmax)
    return report.model_dump(), 0


def cmd_qexp(args, cfg: CommandConfig) -> Tuple[dict, int]:
    precision = cfg.precision or config.settings.QEXP_PRECISION
    f = modular_qexp.delta_qexp(precision)
    result = modular_qexp.eigenvalue_of(f, args.p)
    return result.model_dump(exclude_none=True), 0


def cmd_verify_all(args, cfg: CommandConfig) -> Tuple[dict, int]:
    from verification.registry import SuiteKind
    from verification.scheduler import print_summary, run_all_suites

    kinds = [SuiteKind(k) for k in args.kind] if args.kind else None
    report = asyncio.run(run_all_suites(cfg.seed, kinds))
    print_summary(report)
    payload = _report_payload(report)
    if cfg.save:
        payload["run_id"] = _save(report, "verify-all")
    return payload, 0 if report.passed else 1


def cmd_runs(args, cfg: CommandConfig) -> Tuple[dict, int]:
    from database.db_session import load_runs

    return {"runs": asyncio.run(load_runs(args.limit))}, 0


COMMANDS: Dict[str, Callable] = {
    "cosets": cmd_cosets,
    "product": cmd_product,
    "unimodular": cmd_unimodular,
    "hecke-matrix": cmd_hecke_matrix,
    "verify-finite": cmd_verify_finite,
    "phi": cmd_phi,
    "psi": cmd_psi,
    "gram": cmd_gram,
    "moments": cmd_moments,
    "criterion": cmd_criterion,
    "qexp": cmd_qexp,
    "verify-all": cmd_verify_all,
    "runs": cmd_runs,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hecke-lab", description="Hecke algebra toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--seed", type=int, default=config.settings.DEFAULT_SEED, help="Random seed")
        return p

    p = add("cosets", "Coset labels of a double coset")
    p.add_argument("--sigma", required=True, help='Matrix "a b c d"')
    p.add_argument("--side", choices=["left", "right"], default="left")

    p = add("product", "Structure constants of T_n1 * T_n2")
    p.add_argument("--n1", type=int, required=True)
    p.add_argument("--n2", type=int, required=True)
    p.add_argument("--support-only", action="store_true", help="Double cosets met, without multiplicities")

    p = add("unimodular", "Compare left and right coset counts")
    p.add_argument("--sigma", required=True)

    p = add("hecke-matrix", "Hecke operator on a finite coset window")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--sigma")
    group.add_argument("--n", type=int, help="Index of the primitive double coset diag(1, n)")
    p.add_argument("--depth", type=int, default=2, help="Window closure depth")
    p.add_argument("--window-index", type=int, default=None, help="Moves generating the window (default: the operator)")
    p.add_argument("--csv", dest="output", default=None, help="Write the matrix as CSV")

    p = add("verify-finite", "Every operator identity on a finite model")
    p.add_argument("--model", required=True, help="Built-in model key or JSON model file")
    p.add_argument("--cases", type=int, default=None)
    p.add_argument("--save", action="store_true")

    p = add("phi", "phi0(g)")
    p.add_argument("--g", required=True)

    p = add("psi", "psi0(s1, s2)")
    p.add_argument("--s1", required=True)
    p.add_argument("--s2", required=True)

    p = add("gram", "Minimum eigenvalue of a phi0 / psi0 Gram matrix")
    p.add_argument("--file", required=True, help="JSON list of matrices")
    p.add_argument("--kind", choices=["phi", "psi"], default="phi")
    p.add_argument("--tolerance", type=float, default=None)

    for name, help_text in (("moments", "tau(X^n) against Kesten moments"), ("criterion", "Radial criterion report")):
        p = add(name, help_text)
        p.add_argument("--p", type=int, default=2)
        p.add_argument("--nmax", type=int, default=6)
        p.add_argument("--x", default=None, help="JSON file of {matrix, coeff} terms")

    p = add("qexp", "Hecke eigenvalue of a q-expansion")
    p.add_argument("--form", choices=["delta"], default="delta")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--N", dest="precision", type=int, default=None, help="Number of coefficients")

    p = add("verify-all", "Run every acceptance suite")
    p.add_argument("--kind", action="append", choices=["exact", "finite", "numeric"], default=None)
    p.add_argument("--save", action="store_true")

    p = add("runs", "List persisted verification runs")
    p.add_argument("--limit", type=int, default=10)
    return parser


def run(argv: Optional[Sequence[str]] = None, stdout=None) -> int:
    """Run one subcommand; JSON goes to stdout, logs and tables to stderr."""
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 2

    try:
        cfg = CommandConfig(
            command=args.command,
            seed=args.seed,
            cases=getattr(args, "cases", None),
            tolerance=getattr(args, "tolerance", None),
            precision=getattr(args, "precision", None),
            save=getattr(args, "save", False),
            output=getattr(args, "output", None),
        )
        payload, code = COMMANDS[args.command](args, cfg)
    except (PreconditionError, ValidationError) as e:
        logger.error(f"{args.command}: {e}")
        parser.print_usage(sys.stderr)
        return 2
    except HeckeLabError as e:
        logger.error(f"{args.command}: {e}")
        return 1
    except Exception as e:
        logger.exception(f"Fatal error: {e}")
        return 1

    stdout.write(json.dumps(payload, indent=2) + "\n")
    return code


if __name__ == "__main__":
    try:
        sys.exit(run())
    except KeyboardInterrupt:
        logger.warning("Interrupted by user.")
        sys.exit(130)
