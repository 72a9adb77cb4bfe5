"""Evaluation of formulas at worlds and across a whole model.

Three conditionals with three different scopes:

* material (->): world-local, false antecedent or true consequent;
* strict (=>): global, the antecedent's worlds are contained in the
  consequent's worlds over all physically possible worlds;
* counterfactual ([]->): at a world w, the consequent must hold in the
  worlds that differ from w only by the effects of imposing the
  antecedent choice.

The accessibility relation encodes the one-frame no-backward-influence
condition: imposing a later-region choice keeps the earlier region's
choice and recorded outcome fixed, while the later region's outcome
ranges over everything the table leaves possible.
"""

from __future__ import annotations

from dataclasses import dataclass

from .formula import (
    And,
    Atom,
    Counterfactual,
    Formula,
    MatImp,
    Not,
    Or,
    StrictImp,
    parse,
)
from .worlds import Model, World, satisfies_atom


class UnsupportedCounterfactualError(ValueError):
    """Counterfactual antecedent outside the defined fragment."""


@dataclass(frozen=True)
class TemporalOrder:
    """Which region precedes the cut time in the preferred frame."""

    earlier_region: str = "L"

    def __post_init__(self):
        if self.earlier_region not in ("L", "R"):
            raise ValueError(f"earlier_region must be 'L' or 'R', got {self.earlier_region!r}")

    @property
    def later_region(self) -> str:
        return "R" if self.earlier_region == "L" else "L"


L_EARLIER = TemporalOrder("L")


@dataclass(frozen=True)
class CfOptions:
    order: TemporalOrder = L_EARLIER
    quantifier: str = "every"  # 'every' or 'some', over accessible worlds
    self_world_when_consistent: bool = True

    def __post_init__(self):
        if self.quantifier not in ("every", "some"):
            raise ValueError(f"quantifier must be 'every' or 'some', got {self.quantifier!r}")


DEFAULT_OPTIONS = CfOptions()


def accessible(
    model: Model,
    world: World,
    choice: Atom,
    order: TemporalOrder = L_EARLIER,
    self_world_when_consistent: bool = True,
) -> list[World]:
    """Worlds reachable from `world` by imposing a later-region choice.

    If the choice already holds, nothing is contradicted and the world
    itself is the only member (when `self_world_when_consistent`).
    Otherwise: the earlier region's choice and outcome are pinned, the
    imposed choice holds, and the later outcome is unconstrained.
    Returned in canonical world order.
    """
    if not (isinstance(choice, Atom) and choice.is_choice):
        raise UnsupportedCounterfactualError(
            f"counterfactual antecedent must be a choice atom, got {choice}"
        )
    if choice.region != order.later_region:
        raise UnsupportedCounterfactualError(
            f"counterfactual antecedent {choice.name} picks the earlier region; "
            "only later-region choices can be imposed"
        )
    if world not in model.possible:
        raise ValueError(f"world {world} is not possible in this model")

    if self_world_when_consistent and satisfies_atom(world, choice):
        return [world]

    if order.earlier_region == "L":
        pinned = (world.choice_l, world.outcome_l)
        reachable = [
            w
            for w in model.possible_in_order()
            if satisfies_atom(w, choice) and (w.choice_l, w.outcome_l) == pinned
        ]
    else:
        pinned = (world.choice_r, world.outcome_r)
        reachable = [
            w
            for w in model.possible_in_order()
            if satisfies_atom(w, choice) and (w.choice_r, w.outcome_r) == pinned
        ]
    return reachable


def eval_at(model: Model, world: World, f: Formula, opts: CfOptions = DEFAULT_OPTIONS) -> bool:
    """Truth of `f` at a possible world.

    Strict conditionals are world-independent and evaluate to their
    global value, so the evaluator is total on the whole language.
    """
    if world not in model.possible:
        raise ValueError(f"world {world} is not possible in this model")
    return _eval(model, world, f, opts)


def _eval(model: Model, world: World, f: Formula, opts: CfOptions) -> bool:
    if isinstance(f, Atom):
        return satisfies_atom(world, f)
    if isinstance(f, Not):
        return not _eval(model, world, f.arg, opts)
    if isinstance(f, And):
        return _eval(model, world, f.left, opts) and _eval(model, world, f.right, opts)
    if isinstance(f, Or):
        return _eval(model, world, f.left, opts) or _eval(model, world, f.right, opts)
    if isinstance(f, MatImp):
        return (not _eval(model, world, f.left, opts)) or _eval(model, world, f.right, opts)
    if isinstance(f, Counterfactual):
        if not isinstance(f.left, Atom):
            raise UnsupportedCounterfactualError(
                f"counterfactual antecedent must be a choice atom, got {f.left}"
            )
        reachable = accessible(
            model, world, f.left, opts.order, opts.self_world_when_consistent
        )
        if opts.quantifier == "every":
            return all(_eval(model, w, f.right, opts) for w in reachable)
        return any(_eval(model, w, f.right, opts) for w in reachable)
    if isinstance(f, StrictImp):
        return holds_globally(model, f, opts).holds
    raise TypeError(f"not a formula node: {f!r}")


@dataclass(frozen=True)
class GlobalCheck:
    holds: bool
    witness: World | None
    counterexamples: tuple[World, ...]


def strict_counterexamples(
    model: Model, antecedent: Formula, consequent: Formula, opts: CfOptions = DEFAULT_OPTIONS
) -> list[World]:
    """Possible worlds satisfying the antecedent and the negated consequent."""
    return [
        w
        for w in model.possible_in_order()
        if _eval(model, w, antecedent, opts) and not _eval(model, w, consequent, opts)
    ]


def strict_holds_by_containment(
    model: Model, antecedent: Formula, consequent: Formula, opts: CfOptions = DEFAULT_OPTIONS
) -> bool:
    """Alternate route: the antecedent's world set is a subset of the consequent's."""
    ant_worlds = {w for w in model.possible_in_order() if _eval(model, w, antecedent, opts)}
    cons_worlds = {w for w in model.possible_in_order() if _eval(model, w, consequent, opts)}
    return ant_worlds <= cons_worlds


def holds_globally(
    model: Model, f: Formula, opts: CfOptions = DEFAULT_OPTIONS
) -> GlobalCheck:
    """Global truth with a counterexample witness on failure.

    A strict conditional holds iff no possible world satisfies its
    antecedent together with the negated consequent.  Any other formula
    holds globally iff it is true at every possible world.  The witness
    is the first counterexample in canonical world order.
    """
    if isinstance(f, StrictImp):
        bad = strict_counterexamples(model, f.left, f.right, opts)
    else:
        bad = [w for w in model.possible_in_order() if not _eval(model, w, f, opts)]
    if bad:
        return GlobalCheck(holds=False, witness=bad[0], counterexamples=tuple(bad))
    return GlobalCheck(holds=True, witness=None, counterexamples=())


# ---------------------------------------------------------------------------
# The dependence theorem: one region's statement flips with the faraway choice

SR_TEXT = "(R2 & R2+) -> (R1 []-> R1 & R1-)"
LINE5_TEXT = "L2 => (R2 & R2+) -> (R1 []-> R1 & R1-)"
LINE6_TEXT = "L1 => (R2 & R2+) -> (R1 []-> R1 & R1-)"

# worlds the three vanishing predictions force out, and the cell the
# fourth prediction forces in
FORBIDDEN_WORLDS = (
    World("L2", "R2", "-", "+"),
    World("L2", "R1", "+", "+"),
    World("L1", "R2", "-", "-"),
)
PARADOX_WORLD = World("L1", "R1", "-", "+")


@dataclass(frozen=True)
class TheoremReport:
    hardy_conforming: bool
    conformance_detail: str
    line5: GlobalCheck
    line6: GlobalCheck
    sr_true_on_all_l2_worlds: bool
    sr_false_l1_witness: World | None

    @property
    def confirmed(self) -> bool:
        return self.line5.holds and not self.line6.holds

    def render(self) -> str:
        lines = [
            f"hardy-conforming table: {'yes' if self.hardy_conforming else 'NO'}"
            + ("" if self.hardy_conforming else f"  ({self.conformance_detail})"),
            f"line 5  {LINE5_TEXT}",
            f"        holds: {self.line5.holds}"
            + ("" if self.line5.holds else f"  witness {self.line5.witness}"),
            f"line 6  {LINE6_TEXT}",
            f"        holds: {self.line6.holds}"
            + ("" if self.line6.holds else f"  witness {self.line6.witness}"),
        ]
        if self.line6.counterexamples:
            worlds = ", ".join(str(w) for w in self.line6.counterexamples)
            lines.append(f"        all counterexamples: {worlds}")
        lines.append(
            f"SR true at every possible L2 world: {self.sr_true_on_all_l2_worlds}"
        )
        if self.sr_false_l1_witness is not None:
            lines.append(f"SR false at L1 world: {self.sr_false_l1_witness}")
        lines.append(
            "dependence confirmed: "
            + ("yes" if self.confirmed else "NO")
            + " (the R-region statement's truth tracks the faraway L choice)"
        )
        return "\n".join(lines)


def hardy_conformance(model: Model) -> tuple[bool, str]:
    """Does the model's possibility pattern realize the four predictions?"""
    problems = []
    for w in FORBIDDEN_WORLDS:
        if w in model.possible:
            problems.append(f"forbidden world {w} is possible")
    if PARADOX_WORLD not in model.possible:
        problems.append(f"paradox world {PARADOX_WORLD} is not possible")
    if problems:
        return False, "; ".join(problems)
    return True, "all four prediction cells conform"


def check_theorem(model: Model, opts: CfOptions = DEFAULT_OPTIONS) -> TheoremReport:
    """Evaluate both conclusion lines and the dependence they exhibit.

    Proceeds even on a non-conforming model; the report records the
    conformance check separately.
    """
    conforming, detail = hardy_conformance(model)
    line5 = holds_globally(model, parse(LINE5_TEXT), opts)
    line6 = holds_globally(model, parse(LINE6_TEXT), opts)
    sr = parse(SR_TEXT)
    l2_worlds = [w for w in model.possible_in_order() if w.choice_l == "L2"]
    l1_worlds = [w for w in model.possible_in_order() if w.choice_l == "L1"]
    sr_on_l2 = all(_eval(model, w, sr, opts) for w in l2_worlds)
    sr_l1_witness = next(
        (w for w in l1_worlds if not _eval(model, w, sr, opts)), None
    )
    return TheoremReport(
        hardy_conforming=conforming,
        conformance_detail=detail,
        line5=line5,
        line6=line6,
        sr_true_on_all_l2_worlds=sr_on_l2,
        sr_false_l1_witness=sr_l1_witness,
    )


__all__ = [
    "CfOptions",
    "DEFAULT_OPTIONS",
    "GlobalCheck",
    "L_EARLIER",
    "TemporalOrder",
    "TheoremReport",
    "UnsupportedCounterfactualError",
    "accessible",
    "check_theorem",
    "eval_at",
    "hardy_conformance",
    "holds_globally",
    "strict_counterexamples",
    "strict_holds_by_containment",
]
