"""Check runner: centrality, identities, eigenvalues, Pfaffian/Hafnian identities, lemmas, oracle."""

from __future__ import annotations

import itertools
import json
import logging
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Iterable, Optional, Sequence

from . import linalg
from .coeff import U, UnivPoly, format_poly
from .elements import ELEMENTS, IDENTITIES, build, eig_formula, lookup, tilde_natural
from .lemmas import LEMMAS, lemma_cases
from .matrices import (
    det_k,
    generator_matrix,
    hafnian,
    multiplicity_factorial,
    per_k,
    pfaffian,
    strict_sequences,
    weak_sequences,
)
from .oracle import oracle_mul, random_element, structure_constants
from .pbw import EnvElement, eigenvalue, env_commutator, env_sum, first_term, render, weight_from_partition
from .realizations import LieRealization, general_realization, make_realization, normalize_kind, split_form

CHECKS = ("central", "identity", "eigenvalue", "pfaffian", "hafnian", "lemma", "oracle")
PASS, FAIL, SKIP = "pass", "fail", "skip"
COST_WARNING_TERMS = 10**7

log = logging.getLogger(__name__)


def estimated_terms(N: int, k: int) -> int:
    """Rough count of products generated by a symmetrized size-k side: weak sequences times (k!)^2."""
    return comb(N + k - 1, k) * factorial(k) ** 2


@dataclass
class CheckSpec:
    check: str
    algebra: str = "gl"
    N: int = 2
    k: Optional[int] = None
    lam: Optional[tuple] = None
    element: Optional[str] = None
    lemma: Optional[str] = None
    form: Optional[list] = None
    seed: int = 0
    u_rational: Optional[Fraction] = None

    def validate(self) -> None:
        if self.check not in CHECKS:
            raise ValueError(f"unknown check {self.check!r}; choose from {', '.join(CHECKS)}")
        if self.N < 1:
            raise ValueError("N must be positive")
        if self.k is not None and self.k < 0:
            raise ValueError("k must be non-negative")
        kind = normalize_kind(self.algebra)
        if kind.startswith("sp") and self.N % 2 and self.form is None:
            raise ValueError("sp needs an even N")


@dataclass
class CheckReport:
    check: str
    algebra: str
    N: int
    k: Optional[int]
    status: str
    witness: Optional[str]
    elapsed_ms: int
    terms: int
    subject: str = ""
    memo_hits: int = 0

    @property
    def ok(self) -> bool:
        return self.status != FAIL

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "CheckReport":
        return cls(**d)

    @classmethod
    def from_json(cls, s: str) -> "CheckReport":
        return cls.from_dict(json.loads(s))

    def line(self) -> str:
        head = f"{self.status.upper():4} {self.check:10} {self.algebra}:N={self.N}"
        if self.k is not None:
            head += f",k={self.k}"
        if self.subject:
            head += f"  {self.subject}"
        tail = f"  ({self.elapsed_ms} ms, {self.terms} terms)"
        if self.witness:
            tail += f"\n     witness: {self.witness}"
        return head + tail


class _Timer:
    def __init__(self) -> None:
        self.t0 = time.perf_counter()

    def ms(self) -> int:
        return int(round((time.perf_counter() - self.t0) * 1000))


def _report(check, R_or_kind, N, k, ok, witness, timer, terms, subject="", status=None) -> CheckReport:
    if isinstance(R_or_kind, LieRealization):
        algebra, memo = R_or_kind.kind, R_or_kind.memo_hits
    else:
        algebra, memo = R_or_kind, 0
    if status is None:
        status = PASS if ok else FAIL
    return CheckReport(check, algebra, N, k, status, None if ok else witness, timer.ms(), terms, subject, memo)


# -- primitive checks -----------------------------------------------------------------------------


def check_central(e: EnvElement, subject: str = "", k: Optional[int] = None) -> CheckReport:
    """Pass iff ``e`` commutes with every basis generator (visited in (i, j) order)."""
    timer = _Timer()
    R = e.R
    for g in sorted(range(R.dim), key=lambda t: (R.basis[t].i, R.basis[t].j)):
        comm = env_commutator(e, EnvElement.generator(R, g))
        if comm:
            left = subject or (render(e) if len(e) <= 4 else "x")
            witness = f"[{left}, {R.basis[g]}] = {first_term(comm)}"
            return _report("central", R, R.N, k, False, witness, timer, len(e), subject)
    return _report("central", R, R.N, k, True, None, timer, len(e), subject)


def check_identity(lhs: EnvElement, rhs: EnvElement, subject: str = "", k: Optional[int] = None) -> CheckReport:
    """Pass iff ``lhs - rhs`` vanishes; the witness is its first term."""
    timer = _Timer()
    diff = lhs - rhs
    return _report("identity", lhs.R, lhs.R.N, k, not diff, first_term(diff) if diff else None, timer, len(lhs) + len(rhs), subject)


def default_partitions(kind: str, N: int, count: int = 5) -> list[tuple]:
    length = N if kind == "gl" else N // 2
    out = []
    for top in range(0, 5):
        for lam in itertools.product(range(top, -1, -1), repeat=length):
            if lam and lam[0] != top:
                continue
            if all(lam[i] >= lam[i + 1] for i in range(length - 1)) and lam not in out:
                out.append(lam)
    # spread the choice over small and larger weights
    picks = out[:: max(1, len(out) // count)][:count]
    return picks if len(picks) >= count else out[:count]


def check_eigenvalue(name: str, N: int, k: Optional[int], lam, u=U) -> CheckReport:
    """Compare the engine eigenvalue with the closed form on the module of highest weight ``lam``."""
    timer = _Timer()
    d = lookup(name)
    R = make_realization(d.algebra, N)
    subject = f"{name} lambda={tuple(lam)}"
    formula = d.eig
    if formula is None and d.eig_full is not None and k == N:
        formula = d.eig_full
    if not R.is_graded or formula is None:
        return _report("eigenvalue", R, N, k, True, None, timer, 0, subject + " (no closed form)", status=SKIP)
    e = build(name, R, k, u)
    k_eff = k if d.takes_k else N
    got = eigenvalue(e, weight_from_partition(R, lam))
    want = eig_formula(formula, N, k_eff, lam, u)
    ok = got == want
    witness = None if ok else f"engine {format_poly(got)} != formula {format_poly(want)}"
    return _report("eigenvalue", R, N, k, ok, witness, timer, len(e), subject)


def _pf_sides(R: LieRealization, B, k: int, signed: bool):
    F = generator_matrix(R)
    M = linalg.to_matrix(B)
    FS = F.right_mul(M)
    SF = F.left_mul(linalg.inverse(M))
    if signed:
        lhs = det_k(F, 2 * k, tilde_natural(2 * k))
        rhs = env_sum((pfaffian(FS.submatrix(a)) * pfaffian(SF.submatrix(a)) for a in strict_sequences(R.N, 2 * k)), R)
    else:
        lhs = per_k(F, 2 * k, tilde_natural(2 * k))
        rhs = env_sum(
            (
                (hafnian(FS.submatrix(a)) * hafnian(SF.submatrix(a))).scale(Fraction(1, multiplicity_factorial(a)))
                for a in weak_sequences(R.N, 2 * k)
            ),
            R,
        )
    return lhs, rhs


def pfaffian_sides(S, k: int) -> tuple[EnvElement, EnvElement]:
    """Det_{2k}(F; tilde-natural) and the sum of Pf(FS)_a Pf(S^-1 F)_a over strict a."""
    return _pf_sides(general_realization("o", S), S, k, True)


def hafnian_sides(J, k: int) -> tuple[EnvElement, EnvElement]:
    """Per_{2k}(F; tilde-natural) and the 1/a!-weighted sum of Hf(FJ)_a Hf(J^-1 F)_a over weak a."""
    return _pf_sides(general_realization("sp", J), J, k, False)


def _pairing_check(name: str, sides, B, k: int) -> CheckReport:
    timer = _Timer()
    if 2 * k > len(B) and name == "pfaffian":
        raise ValueError(f"2k = {2 * k} exceeds N = {len(B)}")
    lhs, rhs = sides(B, k)
    diff = lhs - rhs
    return _report(name, lhs.R, lhs.R.N, k, not diff, first_term(diff) if diff else None, timer, len(lhs) + len(rhs), f"2k={2 * k}")


def check_pfaffian_identity(S, k: int) -> CheckReport:
    """``k`` is half the minor size."""
    return _pairing_check("pfaffian", pfaffian_sides, S, k)


def check_hafnian_identity(J, k: int) -> CheckReport:
    """``k`` is half the minor size."""
    return _pairing_check("hafnian", hafnian_sides, J, k)


def run_lemma(lemma_id: str, N: Optional[int] = None, k: Optional[int] = None) -> CheckReport:
    """Run every registered case; the witness names the first failing case."""
    timer = _Timer()
    d = LEMMAS.get(lemma_id)
    if d is None:
        raise KeyError(f"unknown lemma {lemma_id!r}; known: {', '.join(LEMMAS)}")
    count = 0
    sizes = set()
    for n, (label, lhs, rhs) in lemma_cases(lemma_id, N, k):
        count += 1
        sizes.add(n)
        diff = lhs - rhs
        if diff:
            witness = f"N={n} {label}: {first_term(diff)}"
            return _report("lemma", d.algebra, n, k, False, witness, timer, count, lemma_id)
    shown = N if N is not None else max(sizes, default=0)
    return _report("lemma", d.algebra, shown, k, True, None, timer, count, lemma_id)


def check_oracle(R: LieRealization, seed: int = 0, count: int = 200, degree: int = 4) -> CheckReport:
    """env_mul against randomized free-algebra rewriting on ``count`` seeded products."""
    timer = _Timer()
    rng = random.Random(seed)
    consts = structure_constants(R)
    for t in range(count):
        a = random_element(R, rng, degree)
        b = random_element(R, rng, degree)
        diff = a * b - oracle_mul(a, b, rng, consts)
        if diff:
            return _report("oracle", R, R.N, None, False, f"product {t}: {first_term(diff)}", timer, t + 1, f"seed={seed}")
    return _report("oracle", R, R.N, None, True, None, timer, count, f"seed={seed}")


# -- check dispatch --------------------------------------------------------------------------------


def _realization(spec: CheckSpec) -> LieRealization:
    kind = normalize_kind(spec.algebra)
    if spec.form is not None:
        base = "sp" if kind.startswith("sp") else "o"
        return general_realization(base, spec.form)
    return make_realization(kind, spec.N)


def _elements_for(R: LieRealization, name: Optional[str]) -> list[str]:
    if name is not None:
        d = lookup(name)
        if not d.accepts(R):
            raise ValueError(f"{name} lives over {d.algebra}, not {R.kind}")
        return [name]
    return [n for n, d in ELEMENTS.items() if d.accepts(R)]


def _k_values(spec: CheckSpec, takes_k: bool, N: int) -> list:
    if not takes_k:
        return [None]
    if spec.k is not None:
        cost = estimated_terms(N, spec.k)
        if cost > COST_WARNING_TERMS:
            log.warning("N=%d, k=%d generates roughly %.1e terms; expect a long run", N, spec.k, cost)
        return [spec.k]
    return list(range(1, min(N, 3) + 1))


def _u(spec: CheckSpec):
    return U if spec.u_rational is None else UnivPoly.const(spec.u_rational)


def run_spec(spec: CheckSpec) -> list[CheckReport]:
    spec.validate()
    kind = normalize_kind(spec.algebra)
    if spec.check == "lemma":
        ids = [spec.lemma] if spec.lemma else list(LEMMAS)
        N = spec.N if spec.lemma else None
        return [run_lemma(i, N, spec.k if spec.lemma else None) for i in ids]
    if spec.check in ("pfaffian", "hafnian"):
        base = "o" if spec.check == "pfaffian" else "sp"
        form = spec.form
        if form is None:
            form = split_form(base, spec.N)
        k = 1 if spec.k is None else spec.k
        fn = check_pfaffian_identity if spec.check == "pfaffian" else check_hafnian_identity
        return [fn(form, k)]
    R = _realization(spec)
    if spec.check == "oracle":
        return [check_oracle(R, spec.seed)]
    u = _u(spec)
    reports = []
    if spec.check == "central":
        for name in _elements_for(R, spec.element):
            for k in _k_values(spec, lookup(name).takes_k, R.N):
                reports.append(check_central(build(name, R, k, u), name, k))
        return reports
    if spec.check == "identity":
        names = _elements_for(R, spec.element)
        for left, right in IDENTITIES:
            if left not in names and right not in names:
                continue
            if not (lookup(left).accepts(R) and lookup(right).accepts(R)):
                continue
            for k in _k_values(spec, lookup(left).takes_k, R.N):
                reports.append(check_identity(build(left, R, k, u), build(right, R, k, u), f"{left} = {right}", k))
        return reports
    if spec.check == "eigenvalue":
        names = [n for n in _elements_for(R, spec.element) if spec.element or ELEMENTS[n].eig or ELEMENTS[n].eig_full or not R.is_graded]
        lams = [spec.lam] if spec.lam is not None else default_partitions(R.kind, R.N) if R.is_graded else [()]
        for name in names:
            for k in _k_values(spec, lookup(name).takes_k, R.N):
                for lam in lams:
                    reports.append(check_eigenvalue(name, R.N, k, lam, u))
        return reports
    raise ValueError(spec.check)


def run_specs(specs: Sequence[CheckSpec], jobs: int = 1) -> list[CheckReport]:
    """Run specs (optionally on worker threads) and merge reports in spec order."""
    if jobs <= 1:
        return [r for s in specs for r in run_spec(s)]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return [r for batch in pool.map(run_spec, specs) for r in batch]


def all_passed(reports: Iterable[CheckReport]) -> bool:
    return all(r.ok for r in reports)
