"""Command-line entry point: ``capelli verify``, ``capelli show``, ``capelli list``."""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import linalg
from .coeff import U, UnivPoly
from .elements import ELEMENTS, build, lookup
from .lemmas import LEMMAS
from .pbw import render
from .realizations import general_realization, make_realization
from .verify import CHECKS, CheckSpec, all_passed, run_specs

log = logging.getLogger("capelli")

ALGEBRAS = ("gl", "o-id", "o-split", "sp")


def read_form_matrix(path: str) -> list:
    """Rational matrix from a CSV file (one row per line; entries like 1, -1/2)."""
    with open(path, newline="") as fh:
        rows = [[Fraction(x.strip()) for x in row if x.strip()] for row in csv.reader(fh) if any(c.strip() for c in row)]
    n = len(rows)
    if not rows or any(len(r) != n for r in rows):
        raise ValueError(f"{path}: expected a square matrix")
    return rows


def _partition(text: str) -> tuple:
    return tuple(Fraction(x) for x in text.split(",") if x.strip())


def _u_value(text: Optional[str]):
    return None if text is None else Fraction(text)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="capelli", description="Exact checks of Capelli-type central elements.")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run checks and report pass/fail")
    v.add_argument("--check", choices=CHECKS, required=True)
    v.add_argument("--algebra", choices=ALGEBRAS, default="gl")
    v.add_argument("--N", type=int, default=2)
    v.add_argument("--k", type=int, default=None, help="minor size (half the minor size for pfaffian/hafnian)")
    v.add_argument("--lambda", dest="lam", type=_partition, default=None, help="highest weight, e.g. 2,1,0")
    v.add_argument("--element", default=None, help="registered element name, e.g. D.sp")
    v.add_argument("--lemma", default=None, help="lemma id, e.g. lem5.2")
    v.add_argument("--form-matrix", default=None, help="CSV file with a symmetric or alternating form")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--format", choices=("text", "json"), default="text")
    v.add_argument("--u-rational", default=None, help="substitute a rational value for u (fast smoke mode)")
    v.add_argument("--jobs", type=int, default=1, help="worker threads")

    s = sub.add_parser("show", help="print a registered element in PBW normal form")
    s.add_argument("element")
    s.add_argument("--N", type=int, default=2)
    s.add_argument("--k", type=int, default=None)
    s.add_argument("--form-matrix", default=None)
    s.add_argument("--u-rational", default=None)

    sub.add_parser("list", help="list registered elements and lemma ids")
    return p


def _cmd_verify(args) -> int:
    form = read_form_matrix(args.form_matrix) if args.form_matrix else None
    N = len(form) if form is not None else args.N
    spec = CheckSpec(
        check=args.check,
        algebra=args.algebra,
        N=N,
        k=args.k,
        lam=args.lam,
        element=args.element,
        lemma=args.lemma,
        form=form,
        seed=args.seed,
        u_rational=_u_value(args.u_rational),
    )
    log.info("running %s", spec)
    reports = run_specs([spec], jobs=args.jobs)
    if args.format == "json":
        print(json.dumps([r.to_dict() for r in reports], indent=2, sort_keys=True))
    else:
        for r in reports:
            print(r.line())
        failed = sum(r.status == "fail" for r in reports)
        print(f"{len(reports)} checks, {failed} failed")
    return 0 if all_passed(reports) else 1


def _cmd_show(args) -> int:
    d = lookup(args.element)
    if args.form_matrix:
        R = general_realization("sp" if d.algebra.startswith("sp") else "o", read_form_matrix(args.form_matrix))
        if not d.accepts(R):
            raise ValueError(f"{d.name} needs a {d.algebra} realization")
    else:
        R = make_realization(d.algebra, args.N)
    u = U if args.u_rational is None else UnivPoly.const(Fraction(args.u_rational))
    print(render(build(d.name, R, args.k, u)))
    return 0


def _cmd_list(args) -> int:
    print("elements:")
    for name, d in ELEMENTS.items():
        print(f"  {name:12} {d.algebra:10} {d.doc}")
    print("lemmas:")
    for lid, d in LEMMAS.items():
        print(f"  {lid:8} {d.algebra:3} {d.title}")
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    handlers = {"verify": _cmd_verify, "show": _cmd_show, "list": _cmd_list}
    try:
        return handlers[args.command](args)
    except (ValueError, KeyError, IndexError, linalg.SingularMatrixError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"capelli: error: {msg}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
