"""Two-qubit Born-rule engine and the search for a paradox configuration.

State family: cos(theta)|00> + sin(theta)|11>, with every measurement a
real rotation in the x-z plane, one angle per setting.  For angle a the
analyzer vectors are

    |plus>  =  cos(a)|0> + sin(a)|1>
    |minus> = -sin(a)|0> + cos(a)|1>

This real five-parameter family is rich enough to realize the four
target constraints: three joint-outcome cells at exactly zero and the
remaining paradox cell strictly positive.

Search method (find_hardy): a projection scheme.  The three zero
constraints are solved in closed form for (angle_l1, angle_l2, angle_r1)
given the two free parameters (theta, angle_r2), which pins the zero
cells at machine-precision zero; the paradox probability is then
maximized over the free plane by a deterministic grid scan followed by
seeded random-restart coordinate descent.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass

from .worlds import CHOICE_PAIRS, OUTCOME_PAIRS, ProbabilityTable

# cells below this are treated as exact Born-rule zeros when exporting
ZERO_CLAMP = 1e-10

DEFAULT_TOL = 1e-9
DEFAULT_POSITIVITY_FLOOR = 1e-9


class SearchError(RuntimeError):
    """Constrained search failed to produce a verified configuration."""


@dataclass(frozen=True)
class HardyConfig:
    """State parameter plus one measurement angle per setting (radians).

    The state is entangled (non-product) exactly when theta lies
    strictly inside (0, pi/2).
    """

    theta: float
    angle_l1: float
    angle_l2: float
    angle_r1: float
    angle_r2: float

    def __post_init__(self):
        for name in ("theta", "angle_l1", "angle_l2", "angle_r1", "angle_r2"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")

    def angle(self, setting: str) -> float:
        return {
            "L1": self.angle_l1,
            "L2": self.angle_l2,
            "R1": self.angle_r1,
            "R2": self.angle_r2,
        }[setting]


def _analyzer(angle: float, sign: str) -> tuple[float, float]:
    if sign == "+":
        return (math.cos(angle), math.sin(angle))
    return (-math.sin(angle), math.cos(angle))


def joint_probability(
    cfg: HardyConfig, choice_l: str, choice_r: str, sign_l: str, sign_r: str
) -> float:
    """Born-rule probability of the (sign_l, sign_r) outcome pair."""
    vl = _analyzer(cfg.angle(choice_l), sign_l)
    vr = _analyzer(cfg.angle(choice_r), sign_r)
    amp = math.cos(cfg.theta) * vl[0] * vr[0] + math.sin(cfg.theta) * vl[1] * vr[1]
    return amp * amp


def export_table(cfg: HardyConfig) -> ProbabilityTable:
    """Full 4x4 probability table, with sub-clamp cells snapped to exact zero."""
    rows = {}
    for cl, cr in CHOICE_PAIRS:
        row = {}
        for key in OUTCOME_PAIRS:
            p = joint_probability(cfg, cl, cr, key[0], key[1])
            row[key] = 0.0 if p <= ZERO_CLAMP else p
        rows[(cl, cr)] = row
    table = ProbabilityTable(rows)
    table.validate()
    return table


# ---------------------------------------------------------------------------
# The four target constraints

def constraint_values(cfg: HardyConfig) -> tuple[float, float, float, float]:
    """(c1, c2, c3, c4): the three must-vanish cells and the paradox cell.

    c1 = P(L2-, R2+ | L2,R2)   c2 = P(L2+, R1+ | L2,R1)
    c3 = P(L1-, R2- | L1,R2)   c4 = P(L1-, R1+ | L1,R1)
    """
    return (
        joint_probability(cfg, "L2", "R2", "-", "+"),
        joint_probability(cfg, "L2", "R1", "+", "+"),
        joint_probability(cfg, "L1", "R2", "-", "-"),
        joint_probability(cfg, "L1", "R1", "-", "+"),
    )


@dataclass(frozen=True)
class PredictionReport:
    c1: float
    c2: float
    c3: float
    c4: float
    marginal_l1_minus: float
    tolerance: float
    positivity_floor: float

    @property
    def pass_c1(self) -> bool:
        return self.c1 <= self.tolerance

    @property
    def pass_c2(self) -> bool:
        return self.c2 <= self.tolerance

    @property
    def pass_c3(self) -> bool:
        return self.c3 <= self.tolerance

    @property
    def pass_c4(self) -> bool:
        return self.c4 >= self.positivity_floor

    @property
    def passed(self) -> bool:
        return self.pass_c1 and self.pass_c2 and self.pass_c3 and self.pass_c4

    def summary(self) -> str:
        lines = [
            f"c1 = P(L2-,R2+|L2,R2) = {self.c1:.3e}  "
            f"[{'ok' if self.pass_c1 else 'FAIL'}: must be <= {self.tolerance:.1e}]",
            f"c2 = P(L2+,R1+|L2,R1) = {self.c2:.3e}  "
            f"[{'ok' if self.pass_c2 else 'FAIL'}: must be <= {self.tolerance:.1e}]",
            f"c3 = P(L1-,R2-|L1,R2) = {self.c3:.3e}  "
            f"[{'ok' if self.pass_c3 else 'FAIL'}: must be <= {self.tolerance:.1e}]",
            f"c4 = P(L1-,R1+|L1,R1) = {self.c4:.9f}  "
            f"[{'ok' if self.pass_c4 else 'FAIL'}: must be >= {self.positivity_floor:.1e}]",
            f"P(L1-) marginal       = {self.marginal_l1_minus:.9f}",
        ]
        return "\n".join(lines)


def verify_hardy(
    cfg: HardyConfig,
    tol: float = DEFAULT_TOL,
    positivity_floor: float = DEFAULT_POSITIVITY_FLOOR,
) -> PredictionReport:
    """Check the three vanishing cells and the positive paradox cell."""
    if tol <= 0:
        raise ValueError(f"tol must be positive, got {tol}")
    c1, c2, c3, c4 = constraint_values(cfg)
    marginal = joint_probability(cfg, "L1", "R1", "-", "+") + joint_probability(
        cfg, "L1", "R1", "-", "-"
    )
    return PredictionReport(
        c1=c1,
        c2=c2,
        c3=c3,
        c4=c4,
        marginal_l1_minus=marginal,
        tolerance=tol,
        positivity_floor=positivity_floor,
    )


# ---------------------------------------------------------------------------
# Constrained search

@dataclass(frozen=True)
class SearchParams:
    seed: int = 0
    grid: int = 96
    refine_iters: int = 80
    restarts: int = 6


def _project(theta: float, angle_r2: float) -> HardyConfig | None:
    """Solve the three zero constraints exactly for the remaining angles.

    With s = sin(theta), c = cos(theta), t = tan(angle_r2):
      c1 = 0  <=>  tan(angle_l2) =  (s/c) t
      c2 = 0  <=>  tan(angle_r1) = -c^2 / (s^2 t)
      c3 = 0  <=>  tan(angle_l1) = -s / (c t)
    Undefined when t or sin/cos of theta vanish.
    """
    s, c = math.sin(theta), math.cos(theta)
    t = math.tan(angle_r2)
    if abs(t) < 1e-12 or abs(s) < 1e-12 or abs(c) < 1e-12:
        return None
    return HardyConfig(
        theta=theta,
        angle_l1=math.atan(-s / (c * t)),
        angle_l2=math.atan((s / c) * t),
        angle_r1=math.atan(-(c * c) / (s * s * t)),
        angle_r2=angle_r2,
    )


def _paradox_cell(theta: float, angle_r2: float) -> float:
    cfg = _project(theta, angle_r2)
    if cfg is None:
        return -1.0
    return joint_probability(cfg, "L1", "R1", "-", "+")


def find_hardy(params: SearchParams = SearchParams()) -> HardyConfig:
    """Deterministic seeded maximization of the paradox cell.

    Grid-scans the free plane (theta, angle_r2), then runs coordinate
    descent with shrinking steps from the best grid point and from
    seeded random restarts around it.  The zero constraints hold by
    construction at every candidate (projection), so the returned
    configuration passes verify_hardy at the default tolerance.
    """
    lo, hi = 1e-3, math.pi / 2 - 1e-3
    n = params.grid
    best = (-1.0, 0.0, 0.0)
    for i in range(n):
        theta = lo + (hi - lo) * i / (n - 1)
        for j in range(n):
            angle_r2 = lo + (hi - lo) * j / (n - 1)
            value = _paradox_cell(theta, angle_r2)
            if value > best[0]:
                best = (value, theta, angle_r2)

    rng = random.Random(params.seed)
    spread = (hi - lo) / max(n - 1, 1)
    starts = [(best[1], best[2])]
    starts += [
        (
            min(max(best[1] + rng.uniform(-spread, spread), lo), hi),
            min(max(best[2] + rng.uniform(-spread, spread), lo), hi),
        )
        for _ in range(params.restarts)
    ]

    for theta, angle_r2 in starts:
        value = _paradox_cell(theta, angle_r2)
        step = spread
        for _ in range(params.refine_iters):
            improved = False
            for d_theta, d_r2 in ((step, 0.0), (-step, 0.0), (0.0, step), (0.0, -step)):
                cand = (
                    min(max(theta + d_theta, lo), hi),
                    min(max(angle_r2 + d_r2, lo), hi),
                )
                cand_value = _paradox_cell(*cand)
                if cand_value > value:
                    theta, angle_r2 = cand
                    value = cand_value
                    improved = True
            if not improved:
                step *= 0.5
                if step < 1e-12:
                    break
        if value > best[0]:
            best = (value, theta, angle_r2)

    cfg = _project(best[1], best[2])
    if cfg is None or not verify_hardy(cfg).passed:
        raise SearchError(
            "no configuration met the constraints within the search budget; "
            "this family is known to contain solutions, so this indicates a bug"
        )
    return cfg


# ---------------------------------------------------------------------------
# Config file schema: {"theta": n, "angles": {"L1": n, "L2": n, "R1": n, "R2": n}}

def config_to_dict(cfg: HardyConfig) -> dict:
    return {
        "theta": cfg.theta,
        "angles": {
            "L1": cfg.angle_l1,
            "L2": cfg.angle_l2,
            "R1": cfg.angle_r1,
            "R2": cfg.angle_r2,
        },
    }


def config_from_dict(data: dict) -> HardyConfig:
    try:
        angles = data["angles"]
        return HardyConfig(
            theta=float(data["theta"]),
            angle_l1=float(angles["L1"]),
            angle_l2=float(angles["L2"]),
            angle_r1=float(angles["R1"]),
            angle_r2=float(angles["R2"]),
        )
    except (KeyError, TypeError) as exc:
        raise ValueError(f"bad config file structure: {exc!r}") from exc


def save_config(cfg: HardyConfig, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(config_to_dict(cfg), fh, indent=2)
        fh.write("\n")


def load_config(path: str) -> HardyConfig:
    with open(path, encoding="utf-8") as fh:
        return config_from_dict(json.load(fh))
