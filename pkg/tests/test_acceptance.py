"""Acceptance criteria, one test per criterion.

Each test prints a single ``PASS``/``FAIL`` line (shown even without ``-s``) and
the module ends with a summary of all criteria run.
"""

from __future__ import annotations

import itertools
import random
import time

import pytest

from capelli import linalg
from capelli.coeff import U
from capelli.elements import (
    IDENTITIES,
    build,
    coeff_R,
    double_expansion_lhs_rhs,
    orthogonality_sum,
    rising_expansion_lhs_rhs,
)
from capelli.lemmas import LEMMAS
from capelli.matrices import conjugate, det_k, generator_matrix, per_k
from capelli.oracle import oracle_mul, random_element, structure_constants
from capelli.pbw import eigenvalue, weight_from_partition
from capelli.realizations import (
    gl_realization,
    o_identity_realization,
    o_split_realization,
    sp_split_realization,
    split_form,
)
from capelli.verify import (
    CheckSpec,
    check_central,
    check_eigenvalue,
    check_hafnian_identity,
    check_identity,
    check_pfaffian_identity,
    default_partitions,
    run_lemma,
    run_spec,
)

SP_SIZES = [(2, 1), (2, 2), (2, 3), (4, 1), (4, 2)]
RESULTS: list[str] = []


@pytest.fixture(scope="module", autouse=True)
def summary(request):
    yield
    capture = request.config.pluginmanager.getplugin("capturemanager")
    with capture.global_and_fixture_disabled():
        passed = sum(line.startswith("PASS") for line in RESULTS)
        print(f"\nacceptance summary: {passed}/{len(RESULTS)} criteria passed")
        for line in RESULTS:
            print("  " + line)


def report(request, number: int, title: str, failures: list, started: float) -> None:
    elapsed = time.perf_counter() - started
    status = "FAIL" if failures else "PASS"
    line = f"{status} criterion {number}: {title} ({elapsed:.1f} s)"
    if failures:
        line += f"; first failure: {failures[0]}"
    RESULTS.append(line)
    capture = request.config.pluginmanager.getplugin("capturemanager")
    with capture.global_and_fixture_disabled():
        print("\n" + line)
    assert not failures, line


def _fails(reports):
    return [f"{r.subject} N={r.N} k={r.k}: {r.witness}" for r in reports if r.status == "fail"]


def test_criterion_01_sp_permanent_forms_agree(request):
    t0 = time.perf_counter()
    failures = []
    for N, k in SP_SIZES:
        R = sp_split_realization(N)
        r = check_identity(build("D.sp", R, k, U), build("D'.sp", R, k, U), "D.sp = D'.sp", k)
        failures += _fails([r])
    elapsed = time.perf_counter() - t0
    if elapsed > 60:
        failures.append(f"took {elapsed:.1f} s, budget 60 s")
    report(request, 1, "D.sp = D'.sp for (N,k) in " + str(SP_SIZES), failures, t0)


def test_criterion_02_sp_elements_are_central(request):
    t0 = time.perf_counter()
    failures = []
    for N, k in SP_SIZES:
        R = sp_split_realization(N)
        for name in ("D.sp", "D'.sp"):
            failures += _fails([check_central(build(name, R, k, U), name, k)])
    report(request, 2, "D.sp and D'.sp commute with the sp basis", failures, t0)


def test_criterion_03_gl_suite(request):
    t0 = time.perf_counter()
    failures = []
    for N in range(1, 5):
        failures += _fails(run_spec(CheckSpec(check="central", algebra="gl", N=N, element="C.gl")))
        failures += _fails(run_spec(CheckSpec(check="identity", algebra="gl", N=N, element="C.gl")))
    for N in range(1, 4):
        for k in range(1, 4):
            for left, right in [("C.gl.k", "C'.gl.k"), ("D.gl.k", "D'.gl.k")]:
                R = gl_realization(N)
                if left.startswith("C") and k > N:
                    continue
                failures += _fails([check_identity(build(left, R, k, U), build(right, R, k, U), f"{left} = {right}", k)])
                failures += _fails([check_central(build(left, R, k, U), left, k)])
    for N in (2, 3):
        lams = default_partitions("gl", N, count=5)
        assert len(lams) >= 5
        for lam in lams:
            failures += _fails([check_eigenvalue("C.gl", N, None, lam)])
            for k in range(1, N + 1):
                failures += _fails([check_eigenvalue("C.gl.k", N, k, lam), check_eigenvalue("D.gl.k", N, k, lam)])
    R = gl_realization(2)
    got = eigenvalue(build("C.gl", R, None, U), weight_from_partition(R, (1, 0)))
    if got != (U + 2) * U:
        failures.append(f"C.gl eigenvalue at lambda=(1,0) is {got}, expected u^2+2u")
    report(request, 3, "gl centrality, identities and eigenvalues", failures, t0)


def test_criterion_04_o_suite(request):
    t0 = time.perf_counter()
    failures = []
    for N in range(2, 5):
        for check in ("central", "identity"):
            failures += _fails(run_spec(CheckSpec(check=check, algebra="o-id", N=N)))
    for N in (2, 3, 4):
        for check in ("central", "identity"):
            failures += _fails(run_spec(CheckSpec(check=check, algebra="o-split", N=N)))
        lams = default_partitions("o-split", N, count=3)
        assert len(lams) >= 3
        for lam in lams:
            failures += _fails([check_eigenvalue("C.oS0", N, None, lam), check_eigenvalue("C.oS0.k", N, N, lam)])
    R = o_split_realization(2)
    got = eigenvalue(build("C.oS0", R, None, U), weight_from_partition(R, (2,)))
    if got != U * U - 4:
        failures.append(f"C.oS0 eigenvalue at lambda=(2) is {got}, expected u^2-4")
    report(request, 4, "o(1) and o(S0) centrality, identities and eigenvalues", failures, t0)


def test_criterion_05_sp_eigenvalues(request):
    t0 = time.perf_counter()
    failures = []
    for N in (2, 4):
        lams = default_partitions("sp-split", N, count=3)
        for k in range(1, 4):
            for lam in lams:
                failures += _fails([check_eigenvalue("D.sp", N, k, lam)])
    R = sp_split_realization(2)
    e = build("D.sp", R, 1, U)
    got = eigenvalue(e, weight_from_partition(R, (3,)))
    if got != 2 * U:
        failures.append(f"D.sp k=1 eigenvalue is {got}, expected 2u")
    report(request, 5, "sp eigenvalue closed form, N in {2,4}, k <= 3", failures, t0)


def test_criterion_06_pfaffian_and_hafnian(request):
    t0 = time.perf_counter()
    failures = []
    for N in (2, 3, 4):
        for S in (split_form("o", N), linalg.identity(N)):
            failures += _fails([check_pfaffian_identity(S, 1)])
    failures += _fails([check_pfaffian_identity(split_form("o", 4), 2), check_pfaffian_identity(linalg.identity(4), 2)])
    for N in (2, 4):
        failures += _fails([check_hafnian_identity(split_form("sp", N), 1)])
    report(request, 6, "Pfaffian and Hafnian identities", failures, t0)


def test_criterion_07_lemma_suite(request):
    t0 = time.perf_counter()
    failures = []
    for lemma_id in LEMMAS:
        r = run_lemma(lemma_id)
        if r.status == "fail":
            failures.append(f"{lemma_id}: {r.witness}")
    elapsed = time.perf_counter() - t0
    if elapsed > 120:
        failures.append(f"took {elapsed:.1f} s, budget 120 s")
    report(request, 7, f"all {len(LEMMAS)} registered identities", failures, t0)


def _matchings(points: tuple, pairs: int) -> int:
    """Brute-force count of sets of ``pairs`` disjoint pairs."""
    if pairs == 0:
        return 1
    if len(points) < 2 * pairs:
        return 0
    first, rest = points[0], points[1:]
    skip = _matchings(rest, pairs)
    take = sum(_matchings(rest[:i] + rest[i + 1 :], pairs - 1) for i in range(len(rest)))
    return skip + take


def test_criterion_08_matching_coefficients(request):
    t0 = time.perf_counter()
    failures = []
    for k in range(0, 9):
        for l in range(0, k // 2 + 1):
            if coeff_R(k, l) != _matchings(tuple(range(k)), l):
                failures.append(f"R^{k}_{l} closed form")
            if l >= 1 and coeff_R(k + 1, l) != coeff_R(k, l) + (k - 2 * l + 2) * coeff_R(k, l - 1):
                failures.append(f"R^{k}_{l} recurrence")
        for lhs, rhs in (rising_expansion_lhs_rhs(k), double_expansion_lhs_rhs(k)):
            if lhs != rhs:
                failures.append(f"expansion at k={k}")
        for m in range(0, k // 2 + 1):
            if orthogonality_sum(k, m) != (1 if m == 0 else 0):
                failures.append(f"orthogonality at k={k}, m={m}")
    report(request, 8, "R^k_l closed form, recurrence, expansions, orthogonality for k <= 8", failures, t0)


def _all_realizations(max_n):
    for N in range(1, max_n + 1):
        yield gl_realization(N)
        if N >= 2:
            yield o_identity_realization(N)
            yield o_split_realization(N)
        if N % 2 == 0:
            yield sp_split_realization(N)


def test_criterion_09_engine_soundness(request):
    t0 = time.perf_counter()
    failures = []
    small = [R for R in _all_realizations(3)]
    consts = [structure_constants(R) for R in small]
    rng = random.Random(2025)
    for t in range(200):
        i = t % len(small)
        a, b = random_element(small[i], rng, degree=4), random_element(small[i], rng, degree=4)
        if a * b != oracle_mul(a, b, rng, consts[i]):
            failures.append(f"oracle product {t} over {small[i].descriptor()}")
    for t in range(100):
        R = small[t % len(small)]
        a, b, c = (random_element(R, rng, degree=3) for _ in range(3))
        if (a * b) * c != a * (b * c):
            failures.append(f"associativity triple {t} over {R.descriptor()}")
    for R in _all_realizations(6):
        for x, y, z in itertools.combinations(range(R.dim), 3):
            total: dict = {}
            for p, q, r in ((x, y, z), (y, z, x), (z, x, y)):
                for key, v in R.bracket_combo(R.bracket(p, q), {r: 1}).items():
                    total[key] = total.get(key, 0) + v
            if any(total.values()):
                failures.append(f"Jacobi fails on {(x, y, z)} over {R.descriptor()}")
                break
    report(request, 9, "oracle on 200 products, associativity on 100 triples, Jacobi for N <= 6", failures, t0)


def test_criterion_10_conjugation_invariance(request):
    t0 = time.perf_counter()
    failures = []
    rng = random.Random(99)
    for R in _all_realizations(4):
        F = generator_matrix(R)
        for trial in range(5):
            g = linalg.random_invertible(R.N, rng)
            G = conjugate(F, g)
            for k in range(1, min(R.N, 2) + 1):
                a = [U - t for t in range(k)]
                if det_k(G, k, a) != det_k(F, k, a) or per_k(G, k, a) != per_k(F, k, a):
                    failures.append(f"{R.descriptor()} trial {trial} k={k}")
    report(request, 10, "Det_k/Per_k conjugation invariance, 5 random g, N <= 4, k <= 2", failures, t0)


def test_identity_registry_is_exercised():
    # every registered pair shows up in one of the criteria above
    covered = {"C.gl", "C.gl.k", "D.gl.k", "C.o1", "C.o1.k", "C.oS0", "C.oS0.k", "D.sp"}
    assert {left for left, _ in IDENTITIES} <= covered
