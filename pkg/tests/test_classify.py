"""Tests for the residual systems, family checks, sampling and audits."""

import json
import random

import pytest

from liecodazzi.poly import Polynomial, PolyError, parse
from liecodazzi.liealg import ConstraintViolation, SamplerStarvation, make_group
from liecodazzi.tensorcalc import PAIRS, cov_deriv_02, curvature, ricci, symmetrize, torsion
from liecodazzi.connection import make_connection
from liecodazzi.classify import (
    DiscrepancyRegister,
    SolutionFamily,
    Verdict,
    build_system,
    check_on_family,
    codazzi_system,
    compute_object,
    expand_tokens,
    load_claims,
    load_printed_systems,
    load_printed_tables,
    quasistat_system,
    sample_family_member,
    sample_necessity,
    systems_equivalent,
    verify_paper_theorems,
)


def all_groups():
    out = []
    for family in ("G1", "G2", "G3", "G5", "G6", "G7"):
        out.append(make_group(family))
    out.append(make_group("G4", eta=1))
    out.append(make_group("G4", eta=-1))
    return out


# -- token expansion ---------------------------------------------------------


def test_expand_tokens_m_constants():
    assert parse(expand_tokens("m1+m2+m3")) == parse("(3*a-b-g)/2")
    assert parse(expand_tokens("m3*g")) == parse("g*(a+b-g)/2")


def test_expand_tokens_n_resolves_eta():
    assert parse(expand_tokens("n3", eta=1)) == parse("a/2+1")
    assert parse(expand_tokens("n3", eta=-1)) == parse("a/2-1")
    assert parse(expand_tokens("n1-n2", eta=1)) == parse("2-b")


def test_expand_tokens_leaves_unknown_words():
    assert expand_tokens("alpha*m1") == "alpha*((a-b-g)/2)"


def test_expand_tokens_without_eta_leaves_h():
    with pytest.raises(PolyError):
        parse(expand_tokens("n3"))


def test_expand_tokens_respects_word_boundaries():
    # m1 inside a longer identifier must not expand
    assert expand_tokens("m12") == "m12"


# -- system construction -----------------------------------------------------


def test_g1_bott_codazzi_reduced():
    system = codazzi_system(make_group("G1"), "bott")
    assert [p.text() for p in system.reduced()] == ["a^2*b", "a^3", "a^3-a*b^2"]


def test_g1_bott_quasistatistical_adds_pairing_equation():
    system = quasistat_system(make_group("G1"), "bott")
    assert [p.text() for p in system.reduced()] == [
        "a*b^2", "a^2*b", "a^3", "a^3-a*b^2"]


def test_g3_bott_systems_trivial():
    L = make_group("G3")
    assert codazzi_system(L, "bott").is_trivial()
    assert quasistat_system(L, "bott").is_trivial()


def test_case_id_includes_eta_branch():
    system = codazzi_system(make_group("G4", eta=1), "kn")
    assert system.case_id == "G4(eta=+1)/kobayashi-nomizu/codazzi"


def test_build_system_rejects_unknown_structure():
    with pytest.raises(ValueError):
        build_system(make_group("G1"), "bott", "statistical")


def test_quasistat_minus_codazzi_is_torsion_pairing_everywhere():
    for L in all_groups():
        for kind in ("levi_civita", "bott", "canonical", "kobayashi_nomizu"):
            cod = codazzi_system(L, kind)
            qs = quasistat_system(L, kind)
            C = make_connection(L, kind)
            omega = symmetrize(ricci(curvature(C)))
            T = torsion(C)
            for x, y in PAIRS:
                for j in (1, 2, 3):
                    pairing = sum(
                        (T.at(x, y).c[k - 1] * omega.at(k, j) for k in (1, 2, 3)),
                        Polynomial.zero())
                    assert qs.entries[(x, y, j)] - cod.entries[(x, y, j)] == pairing


def test_residuals_antisymmetric_in_first_pair():
    for L in all_groups():
        for kind in ("bott", "canonical"):
            C = make_connection(L, kind)
            omega = symmetrize(ricci(curvature(C)))
            D = cov_deriv_02(C, omega)
            T = torsion(C)
            qs = quasistat_system(L, kind)
            for x, y in PAIRS:
                for j in (1, 2, 3):
                    swapped = D.at(y, x, j) - D.at(x, y, j) + sum(
                        (T.at(y, x).c[k - 1] * omega.at(k, j) for k in (1, 2, 3)),
                        Polynomial.zero())
                    assert swapped == -qs.entries[(x, y, j)]


def test_bott_and_kobayashi_nomizu_systems_coincide():
    # on every group here the two connections have the same table,
    # so the residual systems must agree as well
    for L in all_groups():
        for structure in ("codazzi", "quasistatistical"):
            assert build_system(L, "bott", structure).entries == \
                build_system(L, "kn", structure).entries


# -- solution families -------------------------------------------------------


def test_from_text_assignments_and_inequations():
    fam = SolutionFamily.from_text("a=0, b=g/2, d!=0")
    assert fam.assignment["a"] == Polynomial.zero()
    assert fam.assignment["b"] == parse("g/2")
    assert fam.extra_inequations == (parse("d"),)


def test_from_text_accepts_greek_names():
    fam = SolutionFamily.from_text("alpha=0,beta!=0")
    assert set(fam.assignment) == {"a"}
    assert fam.extra_inequations == (parse("b"),)


def test_from_text_rejects_bad_clauses():
    with pytest.raises(PolyError):
        SolutionFamily.from_text("a+b")
    with pytest.raises(PolyError):
        SolutionFamily.from_text("a!=1")
    with pytest.raises(PolyError):
        SolutionFamily.from_text("a*b=0")


def test_assignment_values_must_be_free():
    with pytest.raises(PolyError):
        SolutionFamily.from_text("a=0,b=a/2")


def test_from_spec_resolves_eta():
    fam = SolutionFamily.from_spec({"assign": {"b": "a/2+h"}}, eta=-1)
    assert fam.assignment["b"] == parse("a/2-1")


def test_contains_checks_all_conditions():
    fam = SolutionFamily.from_text("a=0,g!=0")
    point = {"a": 0, "b": 3, "g": 1, "d": 0}
    assert fam.contains(point)
    assert not fam.contains({**point, "a": 1})
    assert not fam.contains({**point, "g": 0})


def test_contains_quadratic_relation():
    fam = SolutionFamily(quadratic_relations=((parse("b^2"), parse("2*a^2")),))
    assert fam.contains({"a": 0, "b": 0, "g": 1, "d": 2})
    assert not fam.contains({"a": 1, "b": 1, "g": 0, "d": 0})


def test_describe_renders_both_alphabets():
    fam = SolutionFamily.from_text("a=0,g!=0")
    assert fam.describe() == "a = 0, g != 0"
    assert fam.describe(greek=True) == "α = 0, γ ≠ 0"
    assert SolutionFamily().describe() == "no restriction"


def test_rewrite_reduces_powers_to_fixpoint():
    fam = SolutionFamily(quadratic_relations=((parse("b^2"), parse("2*a^2")),))
    assert fam.rewrite(parse("b^4")) == parse("4*a^4")
    assert fam.rewrite(parse("a*b^3+b")) == parse("2*a^3*b+b")


def test_quadratic_lhs_must_be_monomial():
    with pytest.raises(PolyError):
        SolutionFamily(quadratic_relations=((parse("b^2+a"), parse("a^2")),))


# -- deciding on families ----------------------------------------------------


def test_check_holds_g2_bott_codazzi_on_zero_family():
    system = codazzi_system(make_group("G2"), "bott")
    result = check_on_family(system, SolutionFamily.from_text("a=0,b=0"))
    assert result.holds and not result.residuals


def test_check_reports_residuals_g1():
    system = codazzi_system(make_group("G1"), "bott")
    result = check_on_family(system, SolutionFamily.from_text("b=0"))
    assert not result.holds
    assert all(p.monic() == parse("a^3") for p in result.residuals.values())


def test_check_conflict_with_family_inequation():
    system = codazzi_system(make_group("G1"), "bott")
    with pytest.raises(ConstraintViolation):
        check_on_family(system, SolutionFamily.from_text("a=0"))


def test_check_conflict_with_family_equality():
    system = codazzi_system(make_group("G5"), "bott")
    with pytest.raises(ConstraintViolation):
        check_on_family(system, SolutionFamily.from_text("a=0,d=0"))


def test_check_uses_quadratic_rewrite_g6():
    system = quasistat_system(make_group("G6"), "canonical")
    fam = SolutionFamily.from_spec({
        "assign": {"d": "0", "g": "0"},
        "require_nonzero": ["a"],
        "quadratic": [["b^2", "2*a^2"]],
    })
    assert check_on_family(system, fam).holds


def test_check_uses_constraint_monomial_rule():
    # on G6 with g = 0 the equality a*g - b*d = 0 forces b*d = 0
    system = codazzi_system(make_group("G6"), "bott")
    fam = SolutionFamily.from_text("g=0,b=0")
    assert check_on_family(system, fam).holds


# -- sampling ----------------------------------------------------------------


def test_sample_family_member_obeys_everything():
    L = make_group("G2")
    fam = SolutionFamily.from_text("a=0,b=0")
    rng = random.Random(5)
    for _ in range(20):
        pt = sample_family_member(L, fam, rng)
        assert pt["a"] == 0 and pt["b"] == 0 and pt["g"] != 0
        assert fam.contains(pt)


def test_sample_family_member_starves_on_conflict():
    L = make_group("G1")
    fam = SolutionFamily.from_text("a=0")
    with pytest.raises(SamplerStarvation):
        sample_family_member(L, fam, random.Random(0), max_attempts=50)


def test_sample_necessity_requires_positive_trials():
    system = codazzi_system(make_group("G1"), "bott")
    with pytest.raises(ValueError):
        sample_necessity(system, [], 0, seed=1)


def test_sample_necessity_deterministic():
    system = codazzi_system(make_group("G1"), "bott")
    a = sample_necessity(system, [], 40, seed=11)
    b = sample_necessity(system, [], 40, seed=11)
    assert a == b
    assert a.trials == 40 and a.satisfied == 0 and a.violations == 40
    assert a.witness is not None and a.counterexample is None
    assert any(v != 0 for v in a.witness_residuals.values())


def test_sample_necessity_starves_when_exclusion_covers_all():
    system = codazzi_system(make_group("G3"), "bott")
    with pytest.raises(SamplerStarvation):
        sample_necessity(system, [SolutionFamily()], 5, seed=0)


def test_sample_necessity_skips_excluded_points():
    system = codazzi_system(make_group("G2"), "bott")
    fam = SolutionFamily.from_text("a=0,b=0")
    report = sample_necessity(system, [fam], 60, seed=3)
    assert report.satisfied == 0
    assert report.counterexample is None


# -- compute_object ----------------------------------------------------------


def test_compute_object_key_shapes():
    L = make_group("G1")
    assert len(compute_object(L, "bott", "connection")) == 9
    assert len(compute_object(L, "bott", "curvature")) == 9
    assert len(compute_object(L, "bott", "ricci")) == 9
    assert len(compute_object(L, "bott", "ricci-sym")) == 6
    assert len(compute_object(L, "bott", "nabla-ricci-sym")) == 18
    assert len(compute_object(L, "bott", "torsion")) == 3


def test_compute_object_rejects_unknown():
    with pytest.raises(ValueError):
        compute_object(make_group("G1"), "bott", "weyl")


def test_compute_object_matches_printed_bott_torsion():
    table = compute_object(make_group("G1"), "bott", "torsion")
    assert table["1,2"].c[2] == parse("b")
    assert table["1,3"].is_zero() and table["2,3"].is_zero()


# -- span comparison ---------------------------------------------------------


def test_span_equal_under_recombination():
    left = [parse("a^3"), parse("a^3-a*b^2")]
    right = [parse("a*b^2"), parse("a^3")]
    assert systems_equivalent(left, right)


def test_span_detects_missing_direction():
    assert not systems_equivalent([parse("a^3")], [parse("a^3"), parse("a^2*b")])


def test_span_scaling_is_irrelevant():
    assert systems_equivalent([parse("2*a^3")], [parse("-a^3/3")])


def test_span_of_empty_systems():
    assert systems_equivalent([], [])
    assert systems_equivalent([Polynomial.zero()], [])


# -- data files --------------------------------------------------------------


def test_printed_tables_load_and_materialize():
    tables = load_printed_tables()
    assert len(tables) == 97
    by_id = {}
    for t in tables:
        by_id.setdefault(t.id, t)
        for eta in t.branches():
            t.materialize(eta)
    assert by_id["(2.9)"].kind == "connection"
    assert by_id["(2.30)"].eta_template
    assert by_id["(2.30)"].branches() == (1, -1)
    assert by_id["(2.9)"].branches() == (None,)


def test_printed_systems_load():
    systems = load_printed_systems()
    assert len(systems) == 31
    ids = {s.id for s in systems}
    assert "(2.21)" in ids and "(5.38)" in ids


def test_claims_cover_42_cases():
    claims = load_claims()
    assert len(claims) == 42
    seen = {(c.family, c.connection, c.structure) for c in claims}
    assert len(seen) == 42
    statuses = {c.status for c in claims}
    assert statuses == {"always", "families", "never"}


# -- verdicts ----------------------------------------------------------------


def test_verdict_never_requires_explanation():
    with pytest.raises(ValueError):
        Verdict(case_id="x", anchor="(0.0)", status="never-holds")


def test_verdict_discrepancy_requires_both_claims():
    with pytest.raises(ValueError):
        Verdict(case_id="x", anchor="(0.0)", status="paper-discrepancy",
                paper_claim="never-holds")


def test_verdict_rejects_unknown_status():
    with pytest.raises(ValueError):
        Verdict(case_id="x", anchor="(0.0)", status="maybe")


def test_register_validates_severity():
    reg = DiscrepancyRegister()
    with pytest.raises(ValueError):
        reg.add("(1.1)", "x", "y", "curious")
    reg.add("(1.1)", "x", "y", "typo-suspected")
    assert len(reg) == 1 and reg.entries[0].location == "(1.1)"


@pytest.fixture(scope="module")
def audit_result():
    return verify_paper_theorems(trials_per_case=60, seed=0)


def test_verify_produces_42_verdicts(audit_result):
    verdicts, _ = audit_result
    assert len(verdicts) == 42
    assert len({v.case_id for v in verdicts}) == 42


def test_g2_bott_codazzi_discrepancy_carries_evidence(audit_result):
    verdicts, register = audit_result
    v = next(v for v in verdicts if v.case_id == "G2/bott/codazzi")
    assert v.status == "paper-discrepancy"
    assert v.paper_claim == "never-holds"
    assert v.recomputed_claim == "holds-on-family: a = 0, b = 0"
    assert v.witness is not None and v.witness["a"] == 0 and v.witness["b"] == 0
    assert set(v.residuals.values()) == {0}
    assert v.to_json()["paper_claim"] == "never-holds"
    rows = [e for e in register if e.location == "(2.21)"]
    assert len(rows) == 1 and rows[0].severity == "verdict-conflict"


def test_g4_verdicts_merge_branches(audit_result):
    verdicts, _ = audit_result
    for v in verdicts:
        if v.case_id.startswith("G4"):
            assert v.case_id.split("/")[0] == "G4"
            assert "(both signs of h agree)" in v.explanation


def test_never_verdicts_explain_themselves(audit_result):
    verdicts, _ = audit_result
    nevers = [v for v in verdicts if v.status == "never-holds"]
    assert len(nevers) == 10
    for v in nevers:
        assert v.explanation
        assert v.witness is not None
        assert any(r != 0 for r in v.residuals.values())


def test_audit_json_deterministic_for_seed():
    v1, r1 = verify_paper_theorems(trials_per_case=25, seed=4)
    v2, r2 = verify_paper_theorems(trials_per_case=25, seed=4)
    blob1 = json.dumps({"v": [x.to_json() for x in v1], "r": r1.to_json()},
                       sort_keys=True)
    blob2 = json.dumps({"v": [x.to_json() for x in v2], "r": r2.to_json()},
                       sort_keys=True)
    assert blob1 == blob2
