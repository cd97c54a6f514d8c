"""Charged quantum cost algebra and emulated search combinators.

The emulator computes exact classical answers while charging a ledger the
query budget the corresponding quantum routine is granted:

* plain search over m items, t oracle queries per evaluation:  t * sqrt(m)
* search with heterogeneous per-item costs t_s:                sqrt(sum t_s^2)
* walk over the r-subsets of a ground set, with setup / update / checking
  costs S, U, C and marked-fraction lower bound eps:
      S + (1 / sqrt(eps)) * (sqrt(r) * U + C)

Each formula optionally carries a ceil(ln ...) repetition factor
(``log_factors``). The default model strips those so fitted exponents read
the power law directly; flipping the toggle restores them for sensitivity
studies. Charged values are real-valued throughout: square roots are never
rounded, which keeps scaling fits free of staircase artifacts.

Emulation is deterministic and exact by default. Failure injection is
opt-in and only ever *suppresses* a true witness; it never fabricates one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, TypeVar

import numpy as np

from .graph import QueryLedger

__all__ = [
    "CostConfig",
    "WalkCharge",
    "log_multiplier",
    "grover_cost",
    "variable_search_cost",
    "walk_cost",
    "walk_cost_terms",
    "charged_grover",
    "charged_walk_decide",
]

T = TypeVar("T")


@dataclass(frozen=True)
class CostConfig:
    """Knobs of the charged-cost model.

    log_factors: multiply each formula by its ceil(ln ...) repetition
        factor and keep the log-sized cofactors of derived quantities
        (sampled cover size, estimator charge). Off by default: the clean
        power law is what exponent fitting wants.
    leading_constant: uniform multiplier on every cost formula.
    """

    log_factors: bool = False
    leading_constant: float = 1.0

    def __post_init__(self):
        if self.leading_constant <= 0:
            raise ValueError("leading_constant must be positive")


DEFAULT_CONFIG = CostConfig()


@dataclass(frozen=True)
class WalkCharge:
    """Inputs to the subset-walk cost formula.

    setup/update/check are per-operation query costs; r is the walked
    subset size; eps is an a priori lower bound on the marked fraction
    whenever any marked state exists. The label names the ground set for
    reports.
    """

    setup: float
    update: float
    check: float
    r: int
    eps: float
    label: str = ""

    def __post_init__(self):
        if self.setup < 0 or self.update < 0 or self.check < 0:
            raise ValueError("walk costs must be nonnegative")
        if self.r < 1:
            raise ValueError("subset size r must be a positive integer")
        if not 0.0 < self.eps <= 1.0:
            raise ValueError("eps must lie in (0, 1]")


def log_multiplier(base: float, cfg: CostConfig) -> float:
    """ceil(ln base), floored at 1, when log factors are on; else 1."""
    if not cfg.log_factors:
        return 1.0
    return float(max(1, math.ceil(math.log(base))))


def grover_cost(m: int, t: float, cfg: CostConfig = DEFAULT_CONFIG) -> float:
    """Charged cost of searching m items at t queries per evaluation."""
    if m < 1:
        raise ValueError("domain size m must be at least 1")
    if t < 0:
        raise ValueError("per-evaluation cost t must be nonnegative")
    return cfg.leading_constant * t * math.sqrt(m) * log_multiplier(m, cfg)


def variable_search_cost(costs, cfg: CostConfig = DEFAULT_CONFIG) -> float:
    """Charged cost of search with per-item costs: sqrt of the sum of squares."""
    arr = np.asarray(costs, dtype=float)
    if arr.size == 0:
        raise ValueError("variable-cost search needs a nonempty cost list")
    if np.any(arr < 0):
        raise ValueError("per-item costs must be nonnegative")
    return (
        cfg.leading_constant
        * math.sqrt(float(np.sum(arr * arr)))
        * log_multiplier(arr.size, cfg)
    )


def walk_cost_terms(
    charge: WalkCharge, cfg: CostConfig = DEFAULT_CONFIG
) -> tuple[float, float, float]:
    """Setup / update / check contributions whose sum is walk_cost.

    Exposed separately so pipelines can attribute each term to its own
    ledger phase while summing bit-identically to the total.
    """
    scale = cfg.leading_constant * log_multiplier(charge.r, cfg)
    amplify = 1.0 / math.sqrt(charge.eps)
    return (
        scale * charge.setup,
        scale * amplify * math.sqrt(charge.r) * charge.update,
        scale * amplify * charge.check,
    )


def walk_cost(charge: WalkCharge, cfg: CostConfig = DEFAULT_CONFIG) -> float:
    """Charged cost of a subset walk: S + (1/sqrt(eps)) (sqrt(r) U + C)."""
    t_setup, t_update, t_check = walk_cost_terms(charge, cfg)
    return t_setup + t_update + t_check


def charged_grover(
    domain: Sequence[T],
    predicate: Callable[[T], bool],
    t_per_eval: float,
    ledger: QueryLedger,
    phase: str,
    cfg: CostConfig = DEFAULT_CONFIG,
) -> Optional[T]:
    """Emulated search: exact classical scan, quantum-style charge.

    Returns the first item of ``domain`` (in its given order, which callers
    keep canonical) satisfying the predicate, or None. The ledger is
    charged grover_cost(len(domain), t_per_eval) regardless of outcome;
    predicate evaluations are free on the charged side.
    """
    items = list(domain)
    if not items:
        raise ValueError("search domain must be nonempty")
    ledger.charge(phase, grover_cost(len(items), t_per_eval, cfg))
    for item in items:
        if predicate(item):
            return item
    return None


def charged_walk_decide(
    charge: WalkCharge,
    marked_exists: bool,
    witness: Optional[T],
    ledger: QueryLedger,
    phase: str,
    cfg: CostConfig = DEFAULT_CONFIG,
    failure_prob: Optional[float] = None,
    rng: Optional[np.random.Generator] = None,
) -> Optional[T]:
    """Emulated subset-walk decision: charge the walk, hand back the witness.

    The caller has already decided (exactly, on the emulation side) whether
    a marked state exists. With failure injection enabled, a true witness
    is suppressed with probability ``failure_prob``, modelling the walk's
    bounded success probability; a missing witness is never fabricated.
    """
    if marked_exists and witness is None:
        raise ValueError("marked_exists requires a witness payload")
    ledger.charge(phase, walk_cost(charge, cfg))
    if not marked_exists:
        return None
    if failure_prob is not None:
        if rng is None:
            raise ValueError("failure injection needs an rng")
        if rng.random() < failure_prob:
            return None
    return witness
