import json

import pytest

from hardylogic.formula import Atom, Not, StrictImp, parse, unparse
from hardylogic.proof import (
    ProofLine,
    ProofScript,
    audit,
    builtin_script,
    check_rule,
    sr_truth_table,
    validate_scopes,
)
from hardylogic.worlds import build_model


@pytest.fixture(scope="module")
def script():
    return builtin_script()


def test_script_has_fourteen_lines(script):
    assert [ln.index for ln in script.lines] == list(range(1, 15))


EXPECTED_LINES = [
    "(L2 & R2 & L2+) => (R1 []-> L2 & R1 & L2+)",
    "(L2 & R2 & R2+) => (L2 & R2 & L2+)",
    "(L2 & R1 & L2+) => (L2 & R1 & R1-)",
    "(L2 & R2 & R2+) => (R1 []-> L2 & R1 & R1-)",
    "L2 => ((R2 & R2+) -> (R1 []-> R1 & R1-))",
    "L1 => ((R2 & R2+) -> (R1 []-> R1 & R1-))",
    "(L1 & R2 & R2+) => (R1 []-> R1 & R1-)",
    "(L1 & R2 & L1-) => (L1 & R2 & R2+)",
    "(L1 & R2 & L1-) => (R1 []-> R1 & R1-)",
    "(L1 & R2) => (L1- -> (R1 []-> R1 & R1-))",
    "(L1 & R2) => (R1 []-> (L1- -> R1 & R1-))",
    "(L1 & R1) => ~(L1- -> R1 & R1-)",
    "L1 => (R1 -> ~(L1- -> R1 & R1-))",
    "(L1 & R2) => (R1 []-> ~(L1- -> R1 & R1-))",
]


def test_statements_match_their_frozen_forms(script):
    for ln, text in zip(script.lines, EXPECTED_LINES):
        assert ln.statement == parse(text), f"line {ln.index}"


def test_every_statement_is_paper_normal(script):
    from hardylogic.formula import check_paper_normal

    for ln in script.lines:
        assert check_paper_normal(ln.statement).ok, f"line {ln.index}"


def test_line5_statement(script):
    line5 = script.line(5)
    assert unparse(line5.statement) == "L2 => R2 & R2+ -> (R1 []-> R1 & R1-)"
    assert line5.statement == parse("L2 => ((R2 & R2+) -> (R1 []-> R1 & R1-))")


def test_line6_is_the_hypothesis(script):
    line6 = script.line(6)
    assert line6.rule == "HYPOTHESIS"
    assert line6.hypothesis_scope == frozenset()
    # line 6 is line 5 with the L2 antecedent replaced by L1
    assert line6.statement == StrictImp(Atom("L1"), script.line(5).statement.right)


def test_hypothesis_scopes(script):
    for ln in script.lines:
        expected = frozenset({6}) if 7 <= ln.index <= 11 else frozenset()
        assert ln.hypothesis_scope == expected, f"line {ln.index}"


def test_side_condition(script):
    (side,) = script.side_conditions
    assert side.formula == parse("L1 & R1 & L1-")
    assert "possible world" in side.description


def test_scope_validation_passes(script):
    assert validate_scopes(script) == []


def test_scope_validation_catches_missing_scope(script):
    lines = tuple(
        ProofLine(ln.index, ln.statement, ln.rule, ln.premises, frozenset(), ln.note)
        for ln in script.lines
    )
    broken = ProofScript(lines, script.side_conditions)
    problems = validate_scopes(broken)
    assert any("line 7" in p for p in problems)


def test_unknown_rule_tag_rejected():
    with pytest.raises(ValueError):
        ProofLine(1, parse("L1"), "MODUS_WAT")


def test_forward_premise_rejected():
    with pytest.raises(ValueError):
        ProofLine(3, parse("L1"), "A5", premises=(3,))


def test_all_rules_valid_on_hardy_model(hardy_model, script):
    for ln in script.lines:
        verdict = check_rule(hardy_model, script, ln.index)
        assert verdict.ok, f"line {ln.index} ({ln.rule}): {verdict.detail}"


def test_prediction_rule_checks_cells(hardy_model, script):
    v = check_rule(hardy_model, script, 2)
    assert v.ok and "L2" in v.detail
    v12 = check_rule(hardy_model, script, 12)
    assert v12.ok and "witness" in v12.detail


def test_prediction_rules_fail_on_uniform_model(uniform_model, script):
    for index in (2, 3, 8):
        assert not check_rule(uniform_model, script, index).ok
    assert check_rule(uniform_model, script, 12).ok  # witness cell still possible


def test_line4_without_weakening_premise_is_invalid(hardy_model, script):
    line4 = script.line(4)
    mutated = _with_line(script, ProofLine(4, line4.statement, "B7", (1, 2)))
    assert not check_rule(hardy_model, mutated, 4).ok


def test_line7_citing_wrong_premise_is_invalid(hardy_model, script):
    line7 = script.line(7)
    mutated = _with_line(
        script, ProofLine(7, line7.statement, "A5", (5,), line7.hypothesis_scope)
    )
    assert not check_rule(hardy_model, mutated, 7).ok


def _with_line(script, new_line):
    lines = tuple(new_line if ln.index == new_line.index else ln for ln in script.lines)
    return ProofScript(lines, script.side_conditions, script.notes)


def _flip_atom(f, position, replacement, counter=None):
    """Replace the atom at pre-order `position` with `replacement`."""
    if counter is None:
        counter = [0]
    if isinstance(f, Atom):
        counter[0] += 1
        return replacement if counter[0] - 1 == position else f
    if isinstance(f, Not):
        return Not(_flip_atom(f.arg, position, replacement, counter))
    kind = type(f)
    return kind(
        _flip_atom(f.left, position, replacement, counter),
        _flip_atom(f.right, position, replacement, counter),
    )


def _count_atoms(f):
    if isinstance(f, Atom):
        return 1
    if isinstance(f, Not):
        return _count_atoms(f.arg)
    return _count_atoms(f.left) + _count_atoms(f.right)


def test_mutation_robustness_atom_flips(hardy_model, script):
    # flipping any single atom occurrence anywhere in the script must
    # invalidate at least one rule verdict
    for ln in script.lines:
        n = _count_atoms(ln.statement)
        for pos in range(n):
            for new_name in ("L1", "R2-", "L2+"):
                mutated_stmt = _flip_atom(ln.statement, pos, Atom(new_name))
                if mutated_stmt == ln.statement:
                    continue
                mutated = _with_line(
                    script,
                    ProofLine(
                        ln.index, mutated_stmt, ln.rule, ln.premises, ln.hypothesis_scope
                    ),
                )
                verdicts = [
                    check_rule(hardy_model, mutated, other.index)
                    for other in mutated.lines
                    if other.rule != "HYPOTHESIS"
                ]
                assert not all(v.ok for v in verdicts), (
                    f"flip at line {ln.index} pos {pos} -> {new_name} went undetected: "
                    f"{unparse(mutated_stmt)}"
                )


def test_mutation_robustness_premise_sets(hardy_model, script):
    for ln in script.lines:
        if not ln.premises:
            continue
        for drop in range(len(ln.premises)):
            reduced = ln.premises[:drop] + ln.premises[drop + 1 :]
            mutated = _with_line(
                script,
                ProofLine(ln.index, ln.statement, ln.rule, reduced, ln.hypothesis_scope),
            )
            verdicts = [
                check_rule(hardy_model, mutated, other.index)
                for other in mutated.lines
                if other.rule != "HYPOTHESIS"
            ]
            assert not all(v.ok for v in verdicts), (
                f"dropping premise {ln.premises[drop]} from line {ln.index} went undetected"
            )


def test_audit_final_on_hardy_model(hardy_model):
    report = audit(hardy_model)
    assert report.final.line5_true
    assert report.final.line6_refuted
    assert report.final.rules_all_valid
    assert report.final.side_conditions_hold
    assert report.final.contradiction_lines == (11, 14)
    assert report.final.bridge_world is not None


def test_audit_line1_true_under_both_readings(hardy_model):
    report = audit(hardy_model)
    line1 = report.lines[0]
    assert line1.sem_every and line1.sem_some and not line1.divergence


def test_audit_line12_divergence(hardy_model):
    report = audit(hardy_model)
    line12 = next(la for la in report.lines if la.index == 12)
    assert not line12.sem_every
    assert line12.sem_some
    assert line12.divergence


def test_audit_lines13_and_14_also_diverge(hardy_model):
    report = audit(hardy_model)
    for idx in (13, 14):
        la = next(la for la in report.lines if la.index == idx)
        assert la.divergence, f"line {idx}"


def test_audit_scoped_lines_reported_as_consequences_of_the_hypothesis(hardy_model):
    report = audit(hardy_model)
    for la in report.lines:
        if la.scope:
            # line 6 fails its universal reading, so the material
            # consequence is vacuously true under that reading
            assert la.sem_every


def test_audit_divergence_flag_matches_fields(hardy_model):
    report = audit(hardy_model)
    for la in report.lines:
        assert la.divergence == (la.sem_every != la.sem_some)


def test_audit_stable_across_epsilon(hardy_table):
    outcomes = set()
    for eps in (1e-14, 1e-12, 1e-9, 1e-6):
        model = build_model(hardy_table, epsilon=eps)
        report = audit(model)
        outcomes.add(
            (
                report.final.line5_true,
                report.final.line6_refuted,
                report.final.rules_all_valid,
            )
        )
    assert outcomes == {(True, True, True)}


def test_audit_on_control_model_does_not_refute(control_model):
    # zeroing the paradox cell breaks the fourth-prediction rule check,
    # so the refutation of line 6 must not go through
    report = audit(control_model)
    line12 = next(la for la in report.lines if la.index == 12)
    assert not line12.rule_ok
    assert not report.final.line6_refuted
    assert not report.final.rules_all_valid


def test_audit_json_shape(hardy_model):
    report = audit(hardy_model)
    data = report.to_dict()
    assert len(data["lines"]) == 14
    first = data["lines"][0]
    assert first["index"] == 1 and first["rule"] == "B6"
    assert first["rule_ok"] is True
    assert {"sem_every", "sem_some", "divergence"} <= set(first)
    assert set(data["final"]) >= {"line5_true", "line6_refuted"}
    json.dumps(data)  # serializable as-is


def test_audit_render_mentions_divergence(hardy_model):
    text = audit(hardy_model).render()
    assert "DIVERGENT" in text
    assert "line 6 refuted: True" in text


def test_sr_truth_table_has_exactly_one_false_row():
    rows = sr_truth_table()
    assert len(rows) == 16
    false_rows = [r for r in rows if not r.sr]
    assert len(false_rows) == 1
    row = false_rows[0]
    assert (row.ra, row.ra_plus, row.rc, row.rc_minus) == (True, True, True, False)


def test_sr_truth_table_spot_values():
    by_quad = {(r.ra, r.ra_plus, r.rc, r.rc_minus): r.sr for r in sr_truth_table()}
    assert by_quad[(True, True, True, True)] is True
    assert by_quad[(False, False, False, False)] is True
    assert by_quad[(True, True, True, False)] is False
