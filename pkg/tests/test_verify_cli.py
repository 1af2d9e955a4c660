from __future__ import annotations

import json
import logging
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from capelli import linalg
from capelli.cli import main, read_form_matrix
from capelli.coeff import U
from capelli.elements import build
from capelli.oracle import oracle_mul, structure_constants
from capelli.pbw import EnvElement, render
from capelli.realizations import gl_realization, make_realization, o_split_realization, split_form
from capelli.verify import (
    FAIL,
    PASS,
    SKIP,
    CheckReport,
    CheckSpec,
    all_passed,
    check_central,
    check_eigenvalue,
    check_hafnian_identity,
    check_identity,
    check_oracle,
    check_pfaffian_identity,
    default_partitions,
    estimated_terms,
    hafnian_sides,
    pfaffian_sides,
    run_lemma,
    run_spec,
    run_specs,
)

# -- centrality and identities ---------------------------------------------------------------


def test_gl_capelli_determinant_is_central():
    R = gl_realization(3)
    assert check_central(build("C.gl", R, None, U), "C.gl").status == PASS


def test_single_generator_fails_centrality_with_witness():
    R = gl_realization(2)
    report = check_central(EnvElement.gen(R, 1, 1))
    assert report.status == FAIL
    assert report.witness == "[E[1,1], E[1,2]] = E[1,2]"


def test_sp_permanent_element_is_central_at_rank_two():
    R = make_realization("sp", 4)
    assert check_central(build("D.sp", R, 2, U)).ok


def test_sp_first_elements_agree_and_equal_2u():
    R = make_realization("sp", 2)
    lhs, rhs = build("D.sp", R, 1, U), build("D'.sp", R, 1, U)
    assert check_identity(lhs, rhs).status == PASS
    assert lhs == EnvElement.scalar(R, 2 * U)


def test_gl_determinant_forms_agree_at_n3():
    R = gl_realization(3)
    assert check_identity(build("C.gl", R, None, U), build("C'.gl", R, None, U)).ok


def test_perturbed_identity_reports_constant_witness():
    R = gl_realization(2)
    e = build("C.gl", R, None, U)
    report = check_identity(e, e + 1)
    assert report.status == FAIL
    # witness is the first term of lhs - rhs
    assert report.witness == "-1"


def test_identity_across_realizations_is_rejected():
    with pytest.raises(ValueError):
        check_identity(EnvElement.scalar(gl_realization(2), 1), EnvElement.scalar(gl_realization(3), 1))


# -- eigenvalues ----------------------------------------------------------------------------


def test_gl_minor_eigenvalue_example():
    assert check_eigenvalue("C.gl.k", 3, 2, (2, 1, 0)).status == PASS


def test_sp_first_eigenvalue_example():
    r = check_eigenvalue("D.sp", 2, 1, (3,))
    assert r.status == PASS


def test_o_split_full_size_minor_uses_determinant_formula():
    assert check_eigenvalue("C.oS0.k", 2, 2, (2,)).status == PASS
    assert check_eigenvalue("C.oS0.k", 2, 1, (2,)).status == SKIP


def test_ungraded_realization_is_skipped():
    r = check_eigenvalue("C.o1", 2, None, ())
    assert r.status == SKIP and r.ok and r.witness is None


def test_default_partitions_are_dominant():
    for kind, N, length in [("gl", 3, 3), ("sp-split", 4, 2), ("o-split", 4, 2)]:
        lams = default_partitions(kind, N)
        assert len(lams) == 5 and len(set(lams)) == 5
        for lam in lams:
            assert len(lam) == length
            assert all(lam[i] >= lam[i + 1] >= 0 for i in range(length - 1))


# -- Pfaffian and Hafnian --------------------------------------------------------------------


def test_pfaffian_split_form_rank_one_sides():
    lhs, rhs = pfaffian_sides(split_form("o", 2), 1)
    assert lhs == rhs
    assert render(lhs) == "-F[1,1]*F[1,1]"
    assert check_pfaffian_identity(split_form("o", 2), 1).ok


@pytest.mark.parametrize("N,k", [(3, 1), (4, 1), (4, 2)])
def test_pfaffian_identity_form(N, k):
    assert check_pfaffian_identity(linalg.identity(N), k).status == PASS


@pytest.mark.parametrize("N", [2, 4])
def test_hafnian_identity_split_form(N):
    assert check_hafnian_identity(split_form("sp", N), 1).status == PASS


def test_pfaffian_size_too_large():
    with pytest.raises(ValueError):
        check_pfaffian_identity(linalg.identity(2), 2)


def test_hafnian_sides_are_nonzero_and_equal():
    lhs, rhs = hafnian_sides(split_form("sp", 2), 1)
    assert lhs and lhs == rhs


# -- lemmas and oracle -----------------------------------------------------------------------


@pytest.mark.parametrize("lemma_id,N,k", [("lem5.2", 2, None), ("eq2.3", 3, None), ("lem5.1", 2, 2)])
def test_lemma_examples(lemma_id, N, k):
    r = run_lemma(lemma_id, N, k)
    assert r.status == PASS and r.N == N and r.terms > 0


def test_unknown_lemma():
    with pytest.raises(KeyError):
        run_lemma("lem0.0")


def test_oracle_trivial_and_small_products():
    R = gl_realization(2)
    one = EnvElement.scalar(R, 1)
    assert oracle_mul(one, one) == one
    a, b = EnvElement.gen(R, 1, 2), EnvElement.gen(R, 2, 1)
    assert oracle_mul(a, b) == a * b


def test_oracle_structure_constants_match_engine_brackets():
    R = o_split_realization(3)
    consts = structure_constants(R)
    for a, b in consts:
        assert a < b
        assert consts[(a, b)] == R.bracket(a, b)


def test_oracle_check_passes():
    assert check_oracle(gl_realization(2), seed=3, count=40).ok


# -- reports ---------------------------------------------------------------------------------

reports = st.builds(
    CheckReport,
    check=st.sampled_from(["central", "identity", "lemma"]),
    algebra=st.sampled_from(["gl", "sp-split", "o-identity"]),
    N=st.integers(1, 6),
    k=st.none() | st.integers(0, 4),
    status=st.sampled_from([PASS, FAIL, SKIP]),
    witness=st.none() | st.text(max_size=30),
    elapsed_ms=st.integers(0, 10**6),
    terms=st.integers(0, 10**6),
    subject=st.text(max_size=20),
    memo_hits=st.integers(0, 10**6),
)


@given(reports)
def test_report_json_round_trip(report):
    assert CheckReport.from_json(report.to_json()) == report


def test_report_json_schema_keys():
    r = check_eigenvalue("D.sp", 2, 1, (0,))
    d = json.loads(r.to_json())
    for key in ("check", "algebra", "N", "k", "status", "witness", "elapsed_ms", "terms"):
        assert key in d


def test_reports_deterministic_given_seed():
    def strip(rs):
        return [(r.status, r.witness, r.terms, r.subject) for r in rs]

    spec = CheckSpec(check="oracle", algebra="o-split", N=3, seed=11)
    assert strip(run_spec(spec)) == strip(run_spec(CheckSpec(check="oracle", algebra="o-split", N=3, seed=11)))


def test_threaded_runner_keeps_spec_order():
    specs = [CheckSpec(check="central", algebra="gl", N=n, element="C.gl") for n in (1, 2, 3)]
    serial = run_specs(specs)
    threaded = run_specs(specs, jobs=3)
    assert [r.N for r in threaded] == [1, 2, 3]
    assert [r.status for r in threaded] == [r.status for r in serial]
    assert all_passed(threaded)


def test_spec_validation():
    with pytest.raises(ValueError):
        run_spec(CheckSpec(check="central", algebra="sp", N=3))
    with pytest.raises(ValueError):
        run_spec(CheckSpec(check="nonsense"))
    with pytest.raises(ValueError):
        run_spec(CheckSpec(check="central", N=2, k=-1))


def test_cost_warning_for_large_minors(caplog):
    assert estimated_terms(4, 3) == 720
    with caplog.at_level(logging.WARNING, logger="capelli.verify"):
        run_spec(CheckSpec(check="eigenvalue", algebra="o-id", N=9, k=8, element="C.o1.k"))
    assert any("expect a long run" in rec.message for rec in caplog.records)


# -- command line ----------------------------------------------------------------------------


def test_cli_passing_run(capsys):
    assert main(["verify", "--check", "central", "--algebra", "gl", "--N", "2"]) == 0
    out = capsys.readouterr().out
    assert "PASS" in out and "0 failed" in out


def test_cli_json_output(capsys):
    code = main(["verify", "--check", "eigenvalue", "--algebra", "sp", "--N", "2", "--k", "1", "--lambda", "3", "--format", "json"])
    assert code == 0
    data = json.loads(capsys.readouterr().out)
    assert data and all(d["status"] == "pass" for d in data)


def test_cli_wrong_weight_length_is_usage_error(capsys):
    # a weight of the wrong length is a usage error
    assert main(["verify", "--check", "eigenvalue", "--algebra", "gl", "--N", "2", "--lambda", "1,2,3"]) == 2
    assert "error" in capsys.readouterr().err


def test_cli_unknown_lemma_exit_code(capsys):
    assert main(["verify", "--check", "lemma", "--lemma", "nope"]) == 2
    assert "unknown lemma 'nope'" in capsys.readouterr().err


def test_cli_failure_exit_code(monkeypatch, capsys):
    import capelli.cli as cli

    def fake_runner(specs, jobs=1):
        return [CheckReport("central", "gl", 2, None, FAIL, "[x, E[1,2]] = E[1,2]", 0, 1)]

    monkeypatch.setattr(cli, "run_specs", fake_runner)
    assert main(["verify", "--check", "central"]) == 1
    assert "witness" in capsys.readouterr().out


def test_cli_form_matrix(tmp_path, capsys):
    path = tmp_path / "form.csv"
    path.write_text("0,1\n-1,0\n")
    assert read_form_matrix(str(path)) == [[0, 1], [-1, 0]]
    assert main(["verify", "--check", "hafnian", "--form-matrix", str(path)]) == 0
    assert main(["verify", "--check", "central", "--algebra", "sp", "--element", "D'.sp", "--form-matrix", str(path)]) == 0
    assert main(["verify", "--check", "central", "--algebra", "sp", "--form-matrix", str(path)]) == 0
    assert main(["show", "D'.sp", "--k", "1", "--form-matrix", str(path)]) == 0
    assert "D'.sp" in capsys.readouterr().out
    # split-only elements are refused over a general form
    assert main(["verify", "--check", "central", "--algebra", "sp", "--element", "D.sp", "--form-matrix", str(path)]) == 2


def test_primed_elements_central_for_general_forms():
    from capelli.realizations import general_realization

    J = [[0, 2, 0, 1], [-2, 0, 3, 0], [0, -3, 0, Fraction(1, 2)], [-1, 0, Fraction(-1, 2), 0]]
    S = [[1, 2, 0], [2, 0, 1], [0, 1, 3]]
    for k in (1, 2):
        assert check_central(build("D'.sp", general_realization("sp", J), k, U)).ok
    for k in (1, 2, 3):
        assert check_central(build("C'.oS0.k", general_realization("o", S), k, U)).ok


def test_cli_form_matrix_must_be_square(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("1,2,3\n4,5\n")
    assert main(["verify", "--check", "pfaffian", "--form-matrix", str(path)]) == 2


def test_cli_rational_u(capsys):
    assert main(["verify", "--check", "identity", "--algebra", "sp", "--N", "2", "--u-rational", "1/3"]) == 0
    assert main(["show", "D.sp", "--N", "2", "--k", "1", "--u-rational", "1/2"]) == 0
    assert capsys.readouterr().out.strip().endswith("1")


def test_cli_show_and_list(capsys):
    assert main(["show", "D.sp", "--N", "2", "--k", "1"]) == 0
    assert capsys.readouterr().out.strip() == "2*u"
    assert main(["list"]) == 0
    out = capsys.readouterr().out
    assert "D'.sp" in out and "lem5.12" in out


def test_cli_oracle_and_lemma(capsys):
    assert main(["verify", "--check", "oracle", "--algebra", "o-id", "--N", "2", "--seed", "5"]) == 0
    assert main(["verify", "--check", "lemma", "--lemma", "eq2.1", "--N", "2", "--jobs", "2"]) == 0
    capsys.readouterr()
