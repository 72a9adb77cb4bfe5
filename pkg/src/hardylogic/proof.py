"""The fourteen-line derivation as a checkable script.

Each line carries a statement, a rule tag with cited premises, and a
hypothesis scope.  `check_rule` verifies single steps by structural
matching (prediction lines are checked against the model's zero and
nonzero cells instead), and `audit` adds a per-line semantic reading in
two strengths plus the closing contradiction that discharges the
hypothesis.

Rule schemas, with E ranging over earlier-region atoms and c over
later-region choice atoms:

    PRED21/22/23  zero-cell prediction: the strict conditional's sole
                  escaping outcome cell carries zero probability
    PRED24        nonzero-cell prediction: the negated conditional has
                  a possible witness cell
    B6            pinned-history axiom:  (E ^ r ^ o) => [c []-> (E ^ c ^ o)]
    B5 / B7       from X => [c []-> D]: strengthen the antecedent by a
                  cited B => X, and/or weaken inside the box by a cited
                  D => F
    A5            import/export between (A ^ B) => C and A => (B -> C);
                  on export, conjuncts inside the box that restate a
                  pinned earlier-region atom from the antecedent may be
                  elided (they are invariant across accessible worlds)
    LOC1_COMMUTE  from X => [E -> (c []-> D)] infer X => [c []-> (E -> D)]:
                  a pinned earlier outcome keeps its truth value in
                  every accessible world
    DEF           from A => (c -> Y), all of A earlier-region, infer
                  (A ^ r) => [c []-> Y] with r a later-region choice that
                  c contradicts: accessible worlds satisfy A and c
    HYPOTHESIS    assumed for refutation
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .formula import And, Atom, Counterfactual, Formula, MatImp, Not, StrictImp, parse, unparse
from .semantics import (
    CfOptions,
    DEFAULT_OPTIONS,
    accessible,
    eval_at,
    holds_globally,
)
from .worlds import Model, World

RULE_TAGS = (
    "PRED21",
    "PRED22",
    "PRED23",
    "PRED24",
    "B6",
    "A5",
    "B5",
    "B7",
    "LOC1_COMMUTE",
    "DEF",
    "HYPOTHESIS",
)

VALID = "valid"
INVALID = "invalid"
NOT_MECHANIZED = "not-mechanized"


@dataclass(frozen=True)
class ProofLine:
    index: int
    statement: Formula
    rule: str
    premises: tuple[int, ...] = ()
    hypothesis_scope: frozenset[int] = frozenset()
    note: str | None = None

    def __post_init__(self):
        if self.rule not in RULE_TAGS:
            raise ValueError(f"unknown rule tag {self.rule!r}")
        if any(p >= self.index for p in self.premises):
            raise ValueError(f"line {self.index} cites a premise at or after itself")


@dataclass(frozen=True)
class SideCondition:
    """A nonemptiness claim: some possible world satisfies the formula."""

    formula: Formula
    description: str


@dataclass(frozen=True)
class ProofScript:
    lines: tuple[ProofLine, ...]
    side_conditions: tuple[SideCondition, ...]
    notes: tuple[str, ...] = ()

    def line(self, index: int) -> ProofLine:
        for ln in self.lines:
            if ln.index == index:
                return ln
        raise KeyError(f"no line {index}")


def builtin_script() -> ProofScript:
    """The fourteen derivation lines, hypothesis scopes, and side condition.

    Two normalizations from the printed source are applied and logged in
    the script notes: the mislabeled prediction citation on line 12 is
    read as the fourth prediction, and a stray R2- in the companion
    set-form argument for line 12 is read as R1-.
    """
    h = frozenset({6})
    lines = (
        ProofLine(1, parse("(L2 & R2 & L2+) => (R1 []-> L2 & R1 & L2+)"), "B6"),
        ProofLine(2, parse("(L2 & R2 & R2+) => (L2 & R2 & L2+)"), "PRED21"),
        ProofLine(3, parse("(L2 & R1 & L2+) => (L2 & R1 & R1-)"), "PRED22"),
        ProofLine(4, parse("(L2 & R2 & R2+) => (R1 []-> L2 & R1 & R1-)"), "B7", (1, 2, 3)),
        ProofLine(
            5,
            parse("L2 => (R2 & R2+ -> (R1 []-> R1 & R1-))"),
            "A5",
            (4,),
            note="export plus elision of the pinned L2 inside the box",
        ),
        ProofLine(
            6,
            parse("L1 => (R2 & R2+ -> (R1 []-> R1 & R1-))"),
            "HYPOTHESIS",
            note="line 5 with L2 replaced by L1; assumed, then refuted",
        ),
        ProofLine(7, parse("(L1 & R2 & R2+) => (R1 []-> R1 & R1-)"), "A5", (6,), h),
        ProofLine(8, parse("(L1 & R2 & L1-) => (L1 & R2 & R2+)"), "PRED23", (), h),
        ProofLine(9, parse("(L1 & R2 & L1-) => (R1 []-> R1 & R1-)"), "B5", (7, 8), h),
        ProofLine(10, parse("(L1 & R2) => (L1- -> (R1 []-> R1 & R1-))"), "A5", (9,), h),
        ProofLine(11, parse("(L1 & R2) => (R1 []-> (L1- -> R1 & R1-))"), "LOC1_COMMUTE", (10,), h),
        ProofLine(
            12,
            parse("(L1 & R1) => ~(L1- -> R1 & R1-)"),
            "PRED24",
            note="prediction citation normalized to PRED24",
        ),
        ProofLine(13, parse("L1 => (R1 -> ~(L1- -> R1 & R1-))"), "A5", (12,)),
        ProofLine(14, parse("(L1 & R2) => (R1 []-> ~(L1- -> R1 & R1-))"), "DEF", (13,)),
    )
    side = SideCondition(
        formula=parse("L1 & R1 & L1-"),
        description=(
            "some possible world performs L1 and R1 and records the minus "
            "outcome on the L side"
        ),
    )
    notes = (
        "normalized from the printed source: the line-12 prediction citation, "
        "and a stray R2- read as R1- in the companion set-form argument",
    )
    return ProofScript(lines=lines, side_conditions=(side,), notes=notes)


# ---------------------------------------------------------------------------
# Structural helpers

def _conjuncts(f: Formula) -> list[Formula]:
    if isinstance(f, And):
        return _conjuncts(f.left) + _conjuncts(f.right)
    return [f]


def _strict(f: Formula) -> tuple[Formula, Formula] | None:
    return (f.left, f.right) if isinstance(f, StrictImp) else None


def _box(f: Formula) -> tuple[Atom, Formula] | None:
    if isinstance(f, Counterfactual) and isinstance(f.left, Atom):
        return (f.left, f.right)
    return None


def _is_choice(f: Formula, region: str) -> bool:
    return isinstance(f, Atom) and f.is_choice and f.region == region


def _is_subsequence(short: list[Formula], long: list[Formula]) -> bool:
    it = iter(long)
    return all(any(x == y for y in it) for x in short)


@dataclass(frozen=True)
class RuleVerdict:
    status: str
    detail: str

    @property
    def ok(self) -> bool:
        return self.status == VALID


def check_rule(
    model: Model,
    script: ProofScript,
    index: int,
    opts: CfOptions = DEFAULT_OPTIONS,
) -> RuleVerdict:
    """Is the line derivable from its cited premises under its rule tag?

    Prediction tags are checked against the model's possibility pattern;
    every other tag is checked by structural matching.
    """
    line = script.line(index)
    premises = [script.line(i).statement for i in line.premises]
    checker = {
        "PRED21": _check_zero_prediction,
        "PRED22": _check_zero_prediction,
        "PRED23": _check_zero_prediction,
        "PRED24": _check_positive_prediction,
        "B6": _check_b6,
        "B5": _check_b5_b7,
        "B7": _check_b5_b7,
        "A5": _check_a5,
        "LOC1_COMMUTE": _check_loc1_commute,
        "DEF": _check_def,
        "HYPOTHESIS": _check_hypothesis,
    }[line.rule]
    return checker(model, line, premises, opts.order.earlier_region)


_ZERO_CELLS = {
    "PRED21": ("L2", "R2", "-+"),
    "PRED22": ("L2", "R1", "++"),
    "PRED23": ("L1", "R2", "--"),
}
_POSITIVE_CELL = ("L1", "R1", "-+")

_FLIP = {"+": "-", "-": "+"}


def _check_zero_prediction(model, line, premises, earlier):
    parts = _strict(line.statement)
    if parts is None:
        return RuleVerdict(INVALID, "prediction lines must be strict conditionals")
    ant, cons = (_conjuncts(parts[0]), _conjuncts(parts[1]))
    shape = _prediction_shape(ant, cons)
    if shape is None:
        return RuleVerdict(
            INVALID,
            "expected (choices ^ outcome) => (same choices ^ other region's outcome), "
            f"found {unparse(line.statement)}",
        )
    cell = shape
    expected = _ZERO_CELLS[line.rule]
    if cell != expected:
        return RuleVerdict(
            INVALID,
            f"statement demands zero cell {cell}, but {line.rule} pins {expected}",
        )
    world = World(cell[0], cell[1], cell[2][0], cell[2][1])
    if world in model.possible:
        return RuleVerdict(
            INVALID,
            f"cell {cell} carries probability {model.table.prob(world)!r}; not a zero cell",
        )
    return RuleVerdict(VALID, f"zero cell {cell} confirmed in the model")


def _prediction_shape(ant, cons):
    """The escaping cell (choice_l, choice_r, outcomes) of a prediction line, or None."""
    if len(ant) != 3 or len(cons) != 3:
        return None
    if not all(isinstance(a, Atom) for a in ant + cons):
        return None
    if ant[0] != cons[0] or ant[1] != cons[1]:
        return None
    cl, cr, ant_out = ant
    cons_out = cons[2]
    if not (_is_choice(cl, "L") and _is_choice(cr, "R")):
        return None
    if not (ant_out.is_outcome and cons_out.is_outcome):
        return None
    if ant_out.region == cons_out.region:
        return None
    choices = {"L": cl.name, "R": cr.name}
    if ant_out.setting != choices[ant_out.region] or cons_out.setting != choices[cons_out.region]:
        return None
    signs = {ant_out.region: ant_out.sign, cons_out.region: _FLIP[cons_out.sign]}
    return (cl.name, cr.name, signs["L"] + signs["R"])


def _check_positive_prediction(model, line, premises, earlier):
    parts = _strict(line.statement)
    if parts is None:
        return RuleVerdict(INVALID, "prediction lines must be strict conditionals")
    ant = _conjuncts(parts[0])
    cell = _negated_conditional_cell(ant, parts[1])
    if cell is None:
        return RuleVerdict(
            INVALID,
            "expected (choices) => ~(earlier outcome -> later choice ^ outcome), "
            f"found {unparse(line.statement)}",
        )
    if cell != _POSITIVE_CELL:
        return RuleVerdict(
            INVALID,
            f"statement demands witness cell {cell}, but {line.rule} pins {_POSITIVE_CELL}",
        )
    world = World(cell[0], cell[1], cell[2][0], cell[2][1])
    if world not in model.possible:
        return RuleVerdict(
            INVALID, f"witness cell {cell} carries no probability above the threshold"
        )
    return RuleVerdict(VALID, f"witness cell {cell} confirmed possible in the model")


def _negated_conditional_cell(ant, cons):
    if len(ant) != 2:
        return None
    cl, cr = ant
    if not (_is_choice(cl, "L") and _is_choice(cr, "R")):
        return None
    if not (isinstance(cons, Not) and isinstance(cons.arg, MatImp)):
        return None
    inner = cons.arg
    out_a = inner.left
    rest = _conjuncts(inner.right)
    if not (isinstance(out_a, Atom) and out_a.is_outcome):
        return None
    if len(rest) != 2 or not all(isinstance(a, Atom) for a in rest):
        return None
    later_choice, out_b = rest
    if not (later_choice.is_choice and out_b.is_outcome):
        return None
    choices = {"L": cl.name, "R": cr.name}
    if out_a.setting != choices[out_a.region]:
        return None
    if later_choice.name != choices[later_choice.region]:
        return None
    if out_b.setting != later_choice.name or out_b.region == out_a.region:
        return None
    signs = {out_a.region: out_a.sign, out_b.region: _FLIP[out_b.sign]}
    return (cl.name, cr.name, signs["L"] + signs["R"])


def _check_b6(model, line, premises, earlier):
    later = "R" if earlier == "L" else "L"
    parts = _strict(line.statement)
    if parts is None:
        return RuleVerdict(INVALID, "expected a strict conditional")
    ant = _conjuncts(parts[0])
    box = _box(parts[1])
    if box is None:
        return RuleVerdict(INVALID, "consequent must be a counterfactual")
    c, cons = box
    if len(ant) != 3:
        return RuleVerdict(INVALID, "antecedent must conjoin choice, choice, outcome")
    e, r, o = ant
    shape_ok = (
        _is_choice(e, earlier)
        and _is_choice(r, later)
        and isinstance(o, Atom)
        and o.is_outcome
        and o.region == earlier
        and o.setting == e.name
        and _is_choice(c, later)
        and c != r
        and _conjuncts(cons) == [e, c, o]
    )
    if not shape_ok:
        return RuleVerdict(
            INVALID,
            "expected (E ^ r ^ o) => [c []-> (E ^ c ^ o)] with E, o pinned in the "
            f"earlier region, found {unparse(line.statement)}",
        )
    return RuleVerdict(VALID, "pinned-history axiom instance")


def _check_b5_b7(model, line, premises, earlier):
    concl = _strict(line.statement)
    if concl is None:
        return RuleVerdict(INVALID, "expected a strict conditional")
    b, concl_box = concl
    box = _box(concl_box)
    if box is None:
        return RuleVerdict(INVALID, "consequent must be a counterfactual")
    c, f_cons = box
    for prem in premises:
        parts = _strict(prem)
        if parts is None:
            continue
        prem_box = _box(parts[1])
        if prem_box is None or prem_box[0] != c:
            continue
        x, d = parts[0], prem_box[1]
        others = [p for p in premises if p is not prem]
        ant_ok = x == b or any(
            (sp := _strict(p)) is not None and sp[0] == b and sp[1] == x for p in others
        )
        cons_ok = d == f_cons or any(
            (sp := _strict(p)) is not None and sp[0] == d and sp[1] == f_cons for p in others
        )
        if ant_ok and cons_ok:
            return RuleVerdict(
                VALID, "box premise matched with cited strengthening/weakening"
            )
    return RuleVerdict(
        INVALID,
        "no cited premise chain yields this conclusion: need X => [c []-> D] plus "
        "B => X and/or D => F",
    )


def _check_a5(model, line, premises, earlier):
    if len(premises) != 1:
        return RuleVerdict(INVALID, "import/export cites exactly one premise")
    prem = _strict(premises[0])
    concl = _strict(line.statement)
    if prem is None or concl is None:
        return RuleVerdict(INVALID, "premise and conclusion must be strict conditionals")

    # import: from A => (B -> C) infer (A ^ B) => C
    if isinstance(prem[1], MatImp):
        a, inner = prem
        if _conjuncts(concl[0]) == _conjuncts(a) + _conjuncts(inner.left) and concl[1] == inner.right:
            return RuleVerdict(VALID, "import: hypothesis folded into the antecedent")

    # export: from (A ^ B) => C infer A => (B -> C), with optional elision of
    # pinned earlier-region conjuncts inside a counterfactual consequent
    if isinstance(concl[1], MatImp):
        ab = _conjuncts(prem[0])
        a, inner = concl[0], concl[1]
        if _conjuncts(a) + _conjuncts(inner.left) == ab:
            if inner.right == prem[1]:
                return RuleVerdict(VALID, "export: antecedent split around the arrow")
            elided = _elision_ok(prem[1], inner.right, ab, earlier)
            if elided is not None:
                return RuleVerdict(
                    VALID,
                    "export with elision of pinned earlier-region conjuncts "
                    f"{', '.join(unparse(e) for e in elided)} inside the box",
                )
    return RuleVerdict(
        INVALID,
        f"no import/export match between premise {unparse(premises[0])} and "
        f"conclusion {unparse(line.statement)}",
    )


def _elision_ok(prem_cons, concl_cons, antecedent_conjuncts, earlier):
    """Dropped box conjuncts, if the transformation is a legal elision."""
    pb, cb = _box(prem_cons), _box(concl_cons)
    if pb is None or cb is None or pb[0] != cb[0]:
        return None
    full, reduced = _conjuncts(pb[1]), _conjuncts(cb[1])
    if not _is_subsequence(reduced, full):
        return None
    dropped = [x for x in full if x not in reduced]
    if not dropped:
        return None
    for atom in dropped:
        if not (isinstance(atom, Atom) and atom.region == earlier):
            return None
        if atom not in antecedent_conjuncts:
            return None
    return dropped


def _check_loc1_commute(model, line, premises, earlier):
    later = "R" if earlier == "L" else "L"
    if len(premises) != 1:
        return RuleVerdict(INVALID, "commute cites exactly one premise")
    prem = _strict(premises[0])
    concl = _strict(line.statement)
    if prem is None or concl is None or prem[0] != concl[0]:
        return RuleVerdict(INVALID, "antecedents must match across the commute")
    if not isinstance(prem[1], MatImp):
        return RuleVerdict(INVALID, "premise consequent must be (E -> [c []-> D])")
    e, prem_box = prem[1].left, _box(prem[1].right)
    concl_box = _box(concl[1])
    if prem_box is None or concl_box is None:
        return RuleVerdict(INVALID, "both sides must carry a counterfactual")
    c, d = prem_box
    c2, inner = concl_box
    shape_ok = (
        c2 == c
        and _is_choice(c, later)
        and isinstance(inner, MatImp)
        and inner.left == e
        and inner.right == d
        and isinstance(e, Atom)
        and e.is_outcome
        and e.region == earlier
        and e.choice() in _conjuncts(concl[0])
    )
    if not shape_ok:
        return RuleVerdict(
            INVALID,
            "expected X => [E -> (c []-> D)] commuting to X => [c []-> (E -> D)] "
            "with E a pinned earlier-region outcome",
        )
    return RuleVerdict(VALID, f"earlier outcome {unparse(e)} is invariant across accessible worlds")


def _check_def(model, line, premises, earlier):
    later = "R" if earlier == "L" else "L"
    if len(premises) != 1:
        return RuleVerdict(INVALID, "definition step cites exactly one premise")
    prem = _strict(premises[0])
    concl = _strict(line.statement)
    if prem is None or concl is None:
        return RuleVerdict(INVALID, "premise and conclusion must be strict conditionals")
    if not isinstance(prem[1], MatImp):
        return RuleVerdict(INVALID, "premise consequent must be (c -> Y)")
    c, y = prem[1].left, prem[1].right
    box = _box(concl[1])
    if box is None:
        return RuleVerdict(INVALID, "conclusion consequent must be a counterfactual")
    if not (_is_choice(c, later) and box[0] == c and box[1] == y):
        return RuleVerdict(INVALID, "imposed choice and box consequent must match the premise")
    a = _conjuncts(prem[0])
    b = _conjuncts(concl[0])
    if not _is_subsequence(a, b):
        return RuleVerdict(INVALID, "conclusion antecedent must extend the premise antecedent")
    if not all(isinstance(x, Atom) and x.region == earlier for x in a):
        return RuleVerdict(
            INVALID, "premise antecedent must contain only earlier-region atoms"
        )
    extra = [x for x in b if x not in a]
    if not all(isinstance(x, Atom) and x.region == later for x in extra):
        return RuleVerdict(
            INVALID, "extra conclusion conjuncts must be later-region atoms"
        )
    contradicted = [x for x in extra if x.is_choice]
    if len(contradicted) != 1 or contradicted[0] == c:
        return RuleVerdict(
            INVALID,
            "the conclusion must fix exactly one later-region choice that the "
            "imposed choice contradicts",
        )
    return RuleVerdict(
        VALID,
        "accessible worlds satisfy the pinned earlier-region atoms and the imposed choice",
    )


def _check_hypothesis(model, line, premises, earlier):
    if premises:
        return RuleVerdict(INVALID, "a hypothesis cites no premises")
    return RuleVerdict(VALID, "assumed for refutation; discharged by the closing contradiction")


def validate_scopes(script: ProofScript) -> list[str]:
    """Structural scope discipline: scopes propagate from cited premises."""
    problems = []
    by_index = {ln.index: ln for ln in script.lines}
    for ln in script.lines:
        required: set[int] = set()
        for p in ln.premises:
            prem = by_index[p]
            required |= set(prem.hypothesis_scope)
            if prem.rule == "HYPOTHESIS":
                required.add(p)
        if not required <= set(ln.hypothesis_scope):
            missing = sorted(required - set(ln.hypothesis_scope))
            problems.append(f"line {ln.index} must carry hypothesis scope {missing}")
        for h in ln.hypothesis_scope:
            if h not in by_index or by_index[h].rule != "HYPOTHESIS":
                problems.append(f"line {ln.index} scoped to non-hypothesis line {h}")
    return problems


# ---------------------------------------------------------------------------
# Semantic audit

@dataclass(frozen=True)
class LineAudit:
    index: int
    rule: str
    premises: tuple[int, ...]
    scope: tuple[int, ...]
    rule_status: str
    rule_detail: str
    sem_every: bool
    sem_some: bool
    note: str | None = None

    @property
    def rule_ok(self) -> bool:
        return self.rule_status == VALID

    @property
    def divergence(self) -> bool:
        return self.sem_every != self.sem_some


@dataclass(frozen=True)
class FinalVerdict:
    line5_true: bool
    line6_refuted: bool
    rules_all_valid: bool
    side_conditions_hold: bool
    contradiction_lines: tuple[int, int] | None
    bridge_world: World | None
    detail: str


@dataclass(frozen=True)
class AuditReport:
    lines: tuple[LineAudit, ...]
    final: FinalVerdict
    notes: tuple[str, ...]

    def to_dict(self) -> dict:
        return {
            "lines": [
                {
                    "index": la.index,
                    "rule": la.rule,
                    "premises": list(la.premises),
                    "scope": list(la.scope),
                    "rule_ok": la.rule_ok,
                    "rule_status": la.rule_status,
                    "rule_detail": la.rule_detail,
                    "sem_every": la.sem_every,
                    "sem_some": la.sem_some,
                    "divergence": la.divergence,
                    "note": la.note,
                }
                for la in self.lines
            ],
            "final": {
                "line5_true": self.final.line5_true,
                "line6_refuted": self.final.line6_refuted,
                "rules_all_valid": self.final.rules_all_valid,
                "side_conditions_hold": self.final.side_conditions_hold,
                "contradiction_lines": (
                    list(self.final.contradiction_lines)
                    if self.final.contradiction_lines
                    else None
                ),
                "bridge_world": (
                    f"{self.final.bridge_world.choice_l},{self.final.bridge_world.choice_r},"
                    f"{self.final.bridge_world.outcome_l},{self.final.bridge_world.outcome_r}"
                    if self.final.bridge_world
                    else None
                ),
                "detail": self.final.detail,
            },
            "notes": list(self.notes),
        }

    def render(self) -> str:
        out = ["line  rule          verdict  every  some   flags"]
        for la in self.lines:
            flags = []
            if la.divergence:
                flags.append("DIVERGENT")
            if la.scope:
                flags.append("scope " + ",".join(str(s) for s in la.scope))
            out.append(
                f"{la.index:>4}  {la.rule:<12}  {la.rule_status:<7}  "
                f"{str(la.sem_every):<5}  {str(la.sem_some):<5}  {' '.join(flags)}"
            )
        for note in self.notes:
            out.append(f"note: {note}")
        f = self.final
        out.append(f"final: {f.detail}")
        out.append(
            f"final: line 5 true: {f.line5_true}; line 6 refuted: {f.line6_refuted}"
        )
        return "\n".join(out)


def _reading_truth(model: Model, stmt: Formula, reading: str, opts: CfOptions) -> bool:
    """Universal reading: no escaping world.  Existential: a conforming world."""
    ropts = replace(opts, quantifier=reading)
    if isinstance(stmt, StrictImp):
        if reading == "every":
            return holds_globally(model, stmt, ropts).holds
        return any(
            eval_at(model, w, stmt.left, ropts) and eval_at(model, w, stmt.right, ropts)
            for w in model.possible_in_order()
        )
    if reading == "every":
        return holds_globally(model, stmt, ropts).holds
    return any(eval_at(model, w, stmt, ropts) for w in model.possible_in_order())


def audit(
    model: Model,
    script: ProofScript | None = None,
    opts: CfOptions = DEFAULT_OPTIONS,
) -> AuditReport:
    """Rule-check every line and read each one semantically, both strengths.

    Hypothesis-scoped lines are reported as material consequences of the
    hypothesis under the same reading.  The final section checks the
    refutation: a scoped and an unscoped line assert complementary
    counterfactual consequents over one antecedent, the side condition
    and a bridging world make them jointly unsatisfiable, and every
    derivation step is rule-valid, so the hypothesis is refuted.  The
    hypothesis's unconditional counterpart (the line just before it)
    must hold outright.
    """
    if script is None:
        script = builtin_script()
    scope_problems = validate_scopes(script)

    hyp = next((ln for ln in script.lines if ln.rule == "HYPOTHESIS"), None)
    raw: dict[int, dict[str, bool]] = {}
    for ln in script.lines:
        raw[ln.index] = {
            reading: _reading_truth(model, ln.statement, reading, opts)
            for reading in ("every", "some")
        }

    audits = []
    verdicts = {}
    for ln in script.lines:
        verdict = check_rule(model, script, ln.index, opts)
        verdicts[ln.index] = verdict
        sem = dict(raw[ln.index])
        if hyp is not None and hyp.index in ln.hypothesis_scope:
            for reading in ("every", "some"):
                sem[reading] = (not raw[hyp.index][reading]) or sem[reading]
        audits.append(
            LineAudit(
                index=ln.index,
                rule=ln.rule,
                premises=ln.premises,
                scope=tuple(sorted(ln.hypothesis_scope)),
                rule_status=verdict.status,
                rule_detail=verdict.detail,
                sem_every=sem["every"],
                sem_some=sem["some"],
                note=ln.note,
            )
        )

    rules_ok = (
        all(v.ok for i, v in verdicts.items() if script.line(i).rule != "HYPOTHESIS")
        and not scope_problems
    )
    side_ok = all(
        any(eval_at(model, w, sc.formula, opts) for w in model.possible_in_order())
        for sc in script.side_conditions
    )

    contradiction = None
    bridge = None
    if hyp is not None:
        contradiction, bridge = _find_contradiction(model, script, hyp.index, opts)

    refuted = bool(rules_ok and side_ok and contradiction and bridge)
    line5_true = False
    if hyp is not None:
        try:
            prior = script.line(hyp.index - 1)
            line5_true = holds_globally(model, prior.statement, opts).holds
        except KeyError:
            pass

    details = []
    if scope_problems:
        details.append("scope problems: " + "; ".join(scope_problems))
    if contradiction:
        details.append(
            f"lines {contradiction[0]} and {contradiction[1]} impose complementary "
            f"box consequents; bridge world {bridge} reaches the clash"
        )
    else:
        details.append("no complementary counterfactual pair found")
    details.append(f"side conditions hold: {side_ok}; all rules valid: {rules_ok}")

    final = FinalVerdict(
        line5_true=line5_true,
        line6_refuted=refuted,
        rules_all_valid=rules_ok,
        side_conditions_hold=side_ok,
        contradiction_lines=contradiction,
        bridge_world=bridge,
        detail="; ".join(details),
    )
    return AuditReport(lines=tuple(audits), final=final, notes=script.notes)


def _find_contradiction(model, script, hyp_index, opts):
    """A scoped/unscoped line pair asserting D and ~D inside one box."""
    scoped, unscoped = [], []
    for ln in script.lines:
        parts = _strict(ln.statement)
        if parts is None:
            continue
        box = _box(parts[1])
        if box is None:
            continue
        entry = (ln.index, parts[0], box[0], box[1])
        if hyp_index in ln.hypothesis_scope:
            scoped.append(entry)
        elif ln.index != hyp_index:
            unscoped.append(entry)
    for i, x1, c1, d1 in scoped:
        for j, x2, c2, d2 in unscoped:
            if x1 != x2 or c1 != c2:
                continue
            if d2 == Not(d1) or d1 == Not(d2):
                bridge = next(
                    (
                        w
                        for w in model.possible_in_order()
                        if eval_at(model, w, x1, opts)
                        and accessible(
                            model, w, c1, opts.order, opts.self_world_when_consistent
                        )
                    ),
                    None,
                )
                if bridge is not None:
                    return (i, j), bridge
    return None, None


# ---------------------------------------------------------------------------
# The sixteen-row truth table behind the dependence claim

@dataclass(frozen=True)
class SrRow:
    ra: bool
    ra_plus: bool
    rc: bool
    rc_minus: bool

    @property
    def sr(self) -> bool:
        return (not (self.ra and self.ra_plus and self.rc)) or self.rc_minus


def sr_truth_table() -> list[SrRow]:
    """All assignments to (RA, RA+, RC, RC-); exactly one makes SR false."""
    values = (True, False)
    return [
        SrRow(ra, ra_plus, rc, rc_minus)
        for ra in values
        for ra_plus in values
        for rc in values
        for rc_minus in values
    ]
