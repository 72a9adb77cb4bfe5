import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hardylogic.formula import (
    ATOM_NAMES,
    And,
    Atom,
    Counterfactual,
    LexError,
    MatImp,
    Not,
    Or,
    ParseError,
    StrictImp,
    check_paper_normal,
    parse,
    unparse,
)
from oracles import random_formula

L1, L2, R1, R2 = Atom("L1"), Atom("L2"), Atom("R1"), Atom("R2")


def test_parse_derivation_line_1():
    f = parse("L2 & R2 & L2+ => (R1 []-> L2 & R1 & L2+)")
    assert f == StrictImp(
        And(And(L2, R2), Atom("L2+")),
        Counterfactual(R1, And(And(L2, R1), Atom("L2+"))),
    )


def test_parse_single_atom():
    assert parse("L1") == L1


def test_parse_negated_conditional():
    f = parse("~(L1- -> R1 & R1-)")
    assert f == Not(MatImp(Atom("L1-"), And(R1, Atom("R1-"))))


def test_parse_unicode_aliases():
    ascii_form = parse("L2 & R2 & L2+ => (R1 []-> ~(L1 | L2))")
    unicode_form = parse("L2 ∧ R2 ∧ L2+ ⇒ (R1 □→ ¬(L1 ∨ L2))")
    assert ascii_form == unicode_form


def test_precedence_and_binds_tighter_than_or():
    assert parse("L1 & L2 | R1") == Or(And(L1, L2), R1)


def test_precedence_or_binds_tighter_than_arrow():
    assert parse("L1 | L2 -> R1") == MatImp(Or(L1, L2), R1)


def test_mixed_conditionals_without_parens_rejected():
    with pytest.raises(ParseError):
        parse("L1 -> L2 []-> R1")
    with pytest.raises(ParseError):
        parse("L1 []-> L2 -> R1")


def test_chained_conditionals_rejected():
    with pytest.raises(ParseError):
        parse("L1 -> L2 -> R1")
    with pytest.raises(ParseError):
        parse("L1 => L2 => R1")


def test_parenthesized_conditionals_accepted():
    f = parse("(L1 -> L2) []-> R1")
    assert f == Counterfactual(MatImp(L1, L2), R1)


def test_lex_error_reports_position():
    with pytest.raises(LexError) as err:
        parse("L1 & $L2")
    assert err.value.position == 5


def test_unknown_setting_is_a_lex_error():
    with pytest.raises(LexError):
        parse("L3")


def test_outcome_atom_is_one_token():
    # longest-match lexing: 'L1-' swallows the minus, leaving a bare '>'
    with pytest.raises(LexError):
        parse("L1->R1")
    assert parse("L1 -> R1") == MatImp(L1, R1)


def test_missing_operand():
    with pytest.raises(ParseError):
        parse("L1 &")
    with pytest.raises(ParseError):
        parse("~")


def test_unbalanced_parens():
    with pytest.raises(ParseError):
        parse("(L1 & L2")
    with pytest.raises(ParseError):
        parse("L1 & L2)")


def test_empty_input():
    with pytest.raises(ParseError):
        parse("")


def test_unparse_atom():
    assert unparse(L1) == "L1"


def test_unparse_counterfactual():
    assert unparse(Counterfactual(R1, And(R1, Atom("R1-")))) == "R1 []-> R1 & R1-"


def test_roundtrip_derivation_line_9():
    text = "(L1 & R2 & L1-) => (R1 []-> R1 & R1-)"
    f = parse(text)
    assert parse(unparse(f)) == f


def test_unparse_right_nested_conjunction_keeps_parens():
    f = And(L1, And(L2, R1))
    assert unparse(f) == "L1 & (L2 & R1)"
    assert parse(unparse(f)) == f


def test_atom_accessors():
    a = Atom("R1-")
    assert a.region == "R" and a.setting == "R1" and a.sign == "-"
    assert a.is_outcome and not a.is_choice
    assert a.choice() == R1
    assert R2.is_choice and R2.sign is None


def test_exactly_twelve_atoms():
    assert len(ATOM_NAMES) == 12
    with pytest.raises(ValueError):
        Atom("L3")
    with pytest.raises(ValueError):
        Atom("R1*")


def test_paper_normal_on_derivation_line_4():
    f = parse("(L2 & R2 & R2+) => (R1 []-> L2 & R1 & R1-)")
    report = check_paper_normal(f)
    assert report.ok and report.violation is None


def test_paper_normal_rejects_nested_strict():
    f = StrictImp(StrictImp(L1, L2), R1)
    report = check_paper_normal(f)
    assert not report.ok
    assert "strict" in report.violation


def test_paper_normal_rejects_compound_counterfactual_antecedent():
    report = check_paper_normal(Counterfactual(And(R1, L1), Atom("R1-")))
    assert not report.ok
    assert "antecedent" in report.violation


def test_paper_normal_rejects_outcome_antecedent():
    assert not check_paper_normal(Counterfactual(Atom("R1-"), R1)).ok


def test_roundtrip_seeded_random_formulas():
    rng = random.Random(42)
    for _ in range(2000):
        f = random_formula(rng)
        assert parse(unparse(f)) == f


_atoms = st.sampled_from(ATOM_NAMES).map(Atom)
_formulas = st.recursive(
    _atoms,
    lambda sub: st.one_of(
        sub.map(Not),
        st.tuples(sub, sub).map(lambda t: And(*t)),
        st.tuples(sub, sub).map(lambda t: Or(*t)),
        st.tuples(sub, sub).map(lambda t: MatImp(*t)),
        st.tuples(sub, sub).map(lambda t: StrictImp(*t)),
        st.tuples(sub, sub).map(lambda t: Counterfactual(*t)),
    ),
    max_leaves=25,
)


@given(_formulas)
@settings(max_examples=300)
def test_roundtrip_property(f):
    assert parse(unparse(f)) == f


@given(st.text(max_size=30))
@settings(max_examples=300)
def test_parser_is_total(text):
    try:
        parse(text)
    except ParseError:
        pass  # includes LexError; anything else is a genuine crash
