"""Pairwise ordering census of entanglement measures against optimized QFI.

Every unordered pair of states lands in one of twelve cells: four
relations for the chosen entanglement measure (both values zero, first
greater, equal but positive, second greater) crossed with three relations
for the rotation-maximized mean QFI (greater, equal, less).  Six of the
twelve are discordant: the measure and the optimized QFI disagree about
the ordering, or one of them ties while the other does not.  Pairs of
states witnessing the discordant cells are the interesting output.

Comparators use absolute tolerances: values at or below eps count as
zero, and a gap at or below eps counts as a tie.  Tolerances are
per-quantity; the REE default is wider than the others because its value
carries solver noise.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, NamedTuple, Sequence

import numpy as np

from .rotations import EulerAngleSet

__all__ = [
    "MEASURE_NAMES",
    "MEASURE_RELATIONS",
    "MQFI_RELATIONS",
    "DEFAULT_EPS",
    "DISCORDANT_CELLS",
    "StateRecord",
    "OrderingClass",
    "PairWitness",
    "classify_pair",
    "census",
    "find_counterexamples",
]

MEASURE_NAMES = ("concurrence", "negativity", "ree")
MEASURE_RELATIONS = ("both-zero", "first-greater", "equal-positive", "second-greater")
MQFI_RELATIONS = ("greater", "equal", "less")

DEFAULT_EPS = {
    "concurrence": 1e-4,
    "negativity": 1e-4,
    "ree": 5e-3,
    "mqfi": 1e-4,
}


class OrderingClass(NamedTuple):
    measure_relation: str
    mqfi_relation: str


DISCORDANT_CELLS = frozenset(
    {
        OrderingClass("first-greater", "equal"),
        OrderingClass("first-greater", "less"),
        OrderingClass("second-greater", "equal"),
        OrderingClass("second-greater", "greater"),
        OrderingClass("equal-positive", "greater"),
        OrderingClass("equal-positive", "less"),
    }
)


@dataclass(frozen=True)
class StateRecord:
    """One state's full measurement row.

    base_max_value and base_min_value are the coarse-grid optima before any
    refinement pass; they equal qfi_max and qfi_min when refined is False.
    """

    id: int
    concurrence: float
    negativity: float
    ree: float
    separable: bool
    ree_converged: bool
    qfi_raw: float
    qfi_max: float
    qfi_min: float
    max_angles: EulerAngleSet
    min_angles: EulerAngleSet
    refined: bool
    base_max_value: float
    base_min_value: float


class PairWitness(NamedTuple):
    id_1: int
    id_2: int
    measure_name: str
    ordering: OrderingClass
    values: tuple[float, float, float, float]


def _normalize_eps(eps) -> dict[str, float]:
    table = dict(DEFAULT_EPS)
    if eps is None:
        return table
    if isinstance(eps, Mapping):
        for key, value in eps.items():
            if key not in table:
                raise ValueError(f"unknown tolerance key {key!r}")
            table[key] = float(value)
    else:
        table = {key: float(eps) for key in table}
    for key, value in table.items():
        if value <= 0.0:
            raise ValueError(f"tolerance {key} must be positive, got {value!r}")
    return table


def classify_pair(r1: StateRecord, r2: StateRecord, measure: str, eps=None) -> OrderingClass:
    """Cell of the pair (r1, r2) for one measure; eps as in the census."""
    if measure not in MEASURE_NAMES:
        raise ValueError(f"measure must be one of {MEASURE_NAMES}, got {measure!r}")
    table = _normalize_eps(eps)
    tol = table[measure]
    a = getattr(r1, measure)
    b = getattr(r2, measure)
    if a <= tol and b <= tol:
        relation = "both-zero"
    elif abs(a - b) <= tol:
        relation = "equal-positive"
    elif a > b:
        relation = "first-greater"
    else:
        relation = "second-greater"
    tol_q = table["mqfi"]
    qa = r1.qfi_max
    qb = r2.qfi_max
    if abs(qa - qb) <= tol_q:
        mqfi = "equal"
    elif qa > qb:
        mqfi = "greater"
    else:
        mqfi = "less"
    return OrderingClass(relation, mqfi)


def _measure_codes(first: np.ndarray, second: np.ndarray, tol: float) -> np.ndarray:
    both_zero = (first <= tol) & (second <= tol)
    equal = np.abs(first - second) <= tol
    greater = first > second
    return np.where(both_zero, 0, np.where(equal, 2, np.where(greater, 1, 3)))


def _mqfi_codes(first: np.ndarray, second: np.ndarray, tol: float) -> np.ndarray:
    equal = np.abs(first - second) <= tol
    greater = first > second
    return np.where(equal, 1, np.where(greater, 0, 2))


def _cell_of_codes(measure_code: int, mqfi_code: int) -> OrderingClass:
    return OrderingClass(MEASURE_RELATIONS[measure_code], MQFI_RELATIONS[mqfi_code])


def _pair_arrays(records: Sequence[StateRecord]):
    # a single record yields zero pairs, which is fine; only empty input is an error
    if not records:
        raise ValueError("census needs at least one record")
    idx_1, idx_2 = np.triu_indices(len(records), k=1)
    return idx_1, idx_2


def census(records: Sequence[StateRecord], eps=None) -> dict[str, dict[OrderingClass, int]]:
    """Cell counts over all unordered pairs, one table per measure.

    Pairs are taken in canonical order (lower id first), so counts per
    measure always sum to n(n-1)/2 exactly.
    """
    table = _normalize_eps(eps)
    idx_1, idx_2 = _pair_arrays(records)
    qfi = np.array([r.qfi_max for r in records])
    mqfi_codes = _mqfi_codes(qfi[idx_1], qfi[idx_2], table["mqfi"])
    out: dict[str, dict[OrderingClass, int]] = {}
    for measure in MEASURE_NAMES:
        values = np.array([getattr(r, measure) for r in records])
        codes = _measure_codes(values[idx_1], values[idx_2], table[measure])
        counts = np.bincount(codes * 3 + mqfi_codes, minlength=12)
        out[measure] = {
            _cell_of_codes(a, b): int(counts[a * 3 + b]) for a in range(4) for b in range(3)
        }
    return out


def find_counterexamples(
    records: Sequence[StateRecord], measure: str, eps=None, limit: int = 10
) -> list[PairWitness]:
    """Up to ``limit`` witnesses per discordant cell, in canonical pair order."""
    if measure not in MEASURE_NAMES:
        raise ValueError(f"measure must be one of {MEASURE_NAMES}, got {measure!r}")
    if limit < 1:
        raise ValueError("limit must be at least 1")
    table = _normalize_eps(eps)
    idx_1, idx_2 = _pair_arrays(records)
    qfi = np.array([r.qfi_max for r in records])
    values = np.array([getattr(r, measure) for r in records])
    cell_codes = (
        _measure_codes(values[idx_1], values[idx_2], table[measure]) * 3
        + _mqfi_codes(qfi[idx_1], qfi[idx_2], table["mqfi"])
    )
    witnesses: list[PairWitness] = []
    for a in range(4):
        for b in range(3):
            cell = _cell_of_codes(a, b)
            if cell not in DISCORDANT_CELLS:
                continue
            hits = np.flatnonzero(cell_codes == a * 3 + b)[:limit]
            for flat in hits:
                i = int(idx_1[flat])
                j = int(idx_2[flat])
                witnesses.append(
                    PairWitness(
                        id_1=records[i].id,
                        id_2=records[j].id,
                        measure_name=measure,
                        ordering=cell,
                        values=(
                            float(values[i]),
                            float(values[j]),
                            float(qfi[i]),
                            float(qfi[j]),
                        ),
                    )
                )
    return witnesses
