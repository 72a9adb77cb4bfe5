"""Logically possible worlds and probability-table-backed models.

A world history fixes a measurement choice and an outcome in each of the
two regions; there are exactly sixteen.  A model pairs a per-choice-pair
outcome distribution with a possibility threshold: the physically
possible worlds are those whose outcome cell carries probability above
the threshold.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .formula import Atom

CHOICES_L = ("L1", "L2")
CHOICES_R = ("R1", "R2")
SIGNS = ("+", "-")

CHOICE_PAIRS = tuple((cl, cr) for cl in CHOICES_L for cr in CHOICES_R)
OUTCOME_PAIRS = tuple(sl + sr for sl in SIGNS for sr in SIGNS)  # L sign first

DISTRIBUTION_TOL = 1e-9
NO_SIGNALING_TOL = 1e-9
DEFAULT_EPSILON = 1e-12


class TableError(ValueError):
    """Probability table violating its invariants or schema."""


class DegenerateModelError(ValueError):
    """Some choice pair has no possible world at the given threshold."""


@dataclass(frozen=True, order=True)
class World:
    choice_l: str
    choice_r: str
    outcome_l: str
    outcome_r: str

    def __post_init__(self):
        if self.choice_l not in CHOICES_L or self.choice_r not in CHOICES_R:
            raise ValueError(f"bad choices ({self.choice_l}, {self.choice_r})")
        if self.outcome_l not in SIGNS or self.outcome_r not in SIGNS:
            raise ValueError(f"bad outcomes ({self.outcome_l}, {self.outcome_r})")

    @property
    def choice_pair(self) -> tuple[str, str]:
        return (self.choice_l, self.choice_r)

    @property
    def outcome_pair(self) -> str:
        return self.outcome_l + self.outcome_r

    def __str__(self) -> str:
        return f"({self.choice_l},{self.choice_r},{self.outcome_l},{self.outcome_r})"


def enumerate_worlds() -> list[World]:
    """All sixteen worlds in canonical order (L choice, R choice, L outcome, R outcome)."""
    return [
        World(cl, cr, ol, outcome_r)
        for cl in CHOICES_L
        for cr in CHOICES_R
        for ol in SIGNS
        for outcome_r in SIGNS
    ]


def parse_world(text: str) -> World:
    """Parse a world literal like 'L1,R2,-,+'."""
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 4:
        raise ValueError(f"world literal needs 4 comma-separated fields, got {text!r}")
    return World(*parts)


def satisfies_atom(world: World, atom: Atom) -> bool:
    """Truth of an atom at a world.

    A choice atom holds iff that region's choice matches.  An outcome
    atom such as R1- holds iff R1 is the performed choice AND the
    recorded outcome is minus: an unperformed experiment has no outcome.
    """
    performed = (
        world.choice_l if atom.region == "L" else world.choice_r
    ) == atom.setting
    if atom.is_choice:
        return performed
    recorded = world.outcome_l if atom.region == "L" else world.outcome_r
    return performed and recorded == atom.sign


@dataclass(frozen=True)
class ProbabilityTable:
    """Joint outcome distribution for each of the four choice pairs.

    `rows` maps (choice_l, choice_r) to {outcome pair: probability},
    outcome pairs written L sign first ('+-' means L got +, R got -).
    """

    rows: dict[tuple[str, str], dict[str, float]]

    def prob(self, world: World) -> float:
        return self.rows[world.choice_pair][world.outcome_pair]

    def cell(self, choice_l: str, choice_r: str, outcomes: str) -> float:
        return self.rows[(choice_l, choice_r)][outcomes]

    def validate(self) -> None:
        for pair in CHOICE_PAIRS:
            if pair not in self.rows:
                raise TableError(f"missing distribution for choice pair {pair}")
            row = self.rows[pair]
            for key in OUTCOME_PAIRS:
                if key not in row:
                    raise TableError(f"choice pair {pair} missing outcome cell {key!r}")
                if row[key] < 0:
                    raise TableError(f"negative probability {row[key]} in {pair} cell {key!r}")
            total = sum(row[key] for key in OUTCOME_PAIRS)
            if abs(total - 1.0) > DISTRIBUTION_TOL:
                raise TableError(f"distribution for {pair} sums to {total!r}, not 1")

    def marginal(self, region: str, choice: str, other_choice: str, sign: str) -> float:
        """P(outcome sign in `region` | choice, other region's choice)."""
        pair = (choice, other_choice) if region == "L" else (other_choice, choice)
        row = self.rows[pair]
        if region == "L":
            return row[sign + "+"] + row[sign + "-"]
        return row["+" + sign] + row["-" + sign]

    def no_signaling_gap(self) -> float:
        """Largest discrepancy between same-region marginals across faraway choices."""
        gap = 0.0
        for choice in CHOICES_L:
            for sign in SIGNS:
                values = [self.marginal("L", choice, cr, sign) for cr in CHOICES_R]
                gap = max(gap, abs(values[0] - values[1]))
        for choice in CHOICES_R:
            for sign in SIGNS:
                values = [self.marginal("R", choice, cl, sign) for cl in CHOICES_L]
                gap = max(gap, abs(values[0] - values[1]))
        return gap

    def is_no_signaling(self, tol: float = NO_SIGNALING_TOL) -> bool:
        return self.no_signaling_gap() <= tol

    def to_dict(self) -> dict:
        return {
            f"{cl},{cr}": {key: self.rows[(cl, cr)][key] for key in OUTCOME_PAIRS}
            for cl, cr in CHOICE_PAIRS
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ProbabilityTable":
        if not isinstance(data, dict):
            raise TableError(f"table must be a mapping, got {type(data).__name__}")
        rows = {}
        for key, row in data.items():
            parts = tuple(p.strip() for p in str(key).split(","))
            if len(parts) != 2 or parts not in CHOICE_PAIRS:
                raise TableError(f"bad choice-pair key {key!r}")
            if not isinstance(row, dict):
                raise TableError(f"row for {key!r} must be a mapping")
            cells = {}
            for outcomes, value in row.items():
                if outcomes not in OUTCOME_PAIRS:
                    raise TableError(f"bad outcome key {outcomes!r} in row {key!r}")
                if not isinstance(value, (int, float)) or isinstance(value, bool):
                    raise TableError(f"cell {key!r}/{outcomes!r} is not a number")
                cells[outcomes] = float(value)
            rows[parts] = cells
        table = cls(rows)
        table.validate()
        return table

    @classmethod
    def uniform(cls) -> "ProbabilityTable":
        return cls({pair: {key: 0.25 for key in OUTCOME_PAIRS} for pair in CHOICE_PAIRS})


@dataclass(frozen=True)
class Model:
    """Immutable possibility structure derived from a probability table."""

    table: ProbabilityTable
    epsilon: float
    possible: frozenset[World]

    def is_possible(self, world: World) -> bool:
        return world in self.possible

    def possible_in_order(self) -> list[World]:
        return [w for w in enumerate_worlds() if w in self.possible]

    def excluded_in_order(self) -> list[World]:
        return [w for w in enumerate_worlds() if w not in self.possible]


def build_model(table: ProbabilityTable, epsilon: float = DEFAULT_EPSILON) -> Model:
    """Filter the sixteen worlds down to those with probability above epsilon."""
    if not 0.0 <= epsilon <= 1e-3:
        raise ValueError(f"epsilon must lie in [0, 1e-3], got {epsilon}")
    table.validate()
    possible = frozenset(w for w in enumerate_worlds() if table.prob(w) > epsilon)
    for pair in CHOICE_PAIRS:
        if not any(w.choice_pair == pair for w in possible):
            raise DegenerateModelError(
                f"choice pair {pair} has no possible world at epsilon={epsilon}"
            )
    return Model(table=table, epsilon=epsilon, possible=possible)


# ---------------------------------------------------------------------------
# Model file schema: {"epsilon": number, "table": {"L1,R1": {"++": p, ...}, ...}}

def model_to_dict(model: Model) -> dict:
    return {"epsilon": model.epsilon, "table": model.table.to_dict()}


def model_from_dict(data: dict) -> Model:
    if not isinstance(data, dict) or "table" not in data:
        raise TableError("model file must be a mapping with a 'table' entry")
    epsilon = data.get("epsilon", DEFAULT_EPSILON)
    if not isinstance(epsilon, (int, float)) or isinstance(epsilon, bool):
        raise TableError("'epsilon' must be a number")
    return build_model(ProbabilityTable.from_dict(data["table"]), float(epsilon))


def save_model(model: Model, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(model_to_dict(model), fh, indent=2)
        fh.write("\n")


def load_model(path: str) -> Model:
    with open(path, encoding="utf-8") as fh:
        return model_from_dict(json.load(fh))
