"""Partitions, Young-diagram hooks and the zeta-factor predictor.

Rows are stored in non-increasing order ``m_1 >= m_2 >= ...``; boxes are
addressed 1-based as (row j, column k). Displays that list a partition
smallest-first (``[n_r, ..., n_1]``) are the reverse of this order; all input
and output here is non-increasing.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from .exactnum import ZetaExpression, format_rational, parse_rational
from .tate import LocalZetaFactor


@dataclass(frozen=True)
class Partition:
    rows: tuple[int, ...]

    def __post_init__(self):
        rows = tuple(int(r) for r in self.rows)
        if not rows:
            raise ValueError("a partition needs at least one row")
        if any(r < 1 for r in rows):
            raise ValueError("rows must be positive")
        if any(a < b for a, b in zip(rows, rows[1:])):
            raise ValueError(f"rows must be non-increasing, got {list(rows)}")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def of(cls, *rows: int) -> "Partition":
        return cls(tuple(rows))

    @property
    def size(self) -> int:
        return sum(self.rows)

    def __len__(self):
        return len(self.rows)

    def boxes(self) -> Iterator[tuple[int, int]]:
        for j, m in enumerate(self.rows, start=1):
            for k in range(1, m + 1):
                yield j, k

    def is_single_row(self) -> bool:
        return len(self.rows) == 1

    def is_all_ones(self) -> bool:
        return self.rows[0] == 1

    def __str__(self):
        return "[" + ",".join(map(str, self.rows)) + "]"


def partitions_of(n: int) -> Iterator[Partition]:
    """All partitions of n, each in non-increasing order."""
    def rec(remaining: int, largest: int) -> Iterator[tuple[int, ...]]:
        if remaining == 0:
            yield ()
            return
        for first in range(min(remaining, largest), 0, -1):
            for rest in rec(remaining - first, first):
                yield (first,) + rest
    for rows in rec(n, n):
        yield Partition(rows)


def conjugate(lam: Partition) -> Partition:
    return Partition(tuple(sum(1 for m in lam.rows if m >= k)
                           for k in range(1, lam.rows[0] + 1)))


def _check_box(lam: Partition, j: int, k: int) -> None:
    if not (1 <= j <= len(lam.rows) and 1 <= k <= lam.rows[j - 1]):
        raise ValueError(f"box ({j},{k}) is outside the diagram of {lam}")


def hook_arm_leg(lam: Partition, j: int, k: int) -> tuple[int, int, int]:
    """(hook, arm, leg) of box (j, k)."""
    _check_box(lam, j, k)
    arm = lam.rows[j - 1] - k
    leg = sum(1 for m in lam.rows[j:] if m >= k)
    return arm + leg + 1, arm, leg


def h_prop4(lam: Partition, j: int, k: int) -> int:
    """m_j - k + #{l >= j : m_l >= k}, the hook coefficient of the singular
    orbital-integral zeta factors."""
    _check_box(lam, j, k)
    rows = lam.rows
    return rows[j - 1] - k + sum(1 for m in rows[j - 1:] if m >= k)


@dataclass(frozen=True)
class ClassComponent:
    """One irreducible factor of the characteristic polynomial with its partition.

    ``poly`` holds ascending coefficients of the monic irreducible factor.
    """

    poly: tuple[Fraction, ...]
    partition: Partition
    label: str = ""

    @property
    def degree(self) -> int:
        return len(self.poly) - 1


@dataclass(frozen=True)
class ClassDatum:
    components: tuple[ClassComponent, ...]
    n: int = field(default=0)

    def __post_init__(self):
        comps = tuple(self.components)
        if not comps:
            raise ValueError("a class datum needs at least one component")
        polys = [c.poly for c in comps]
        if len(set(polys)) != len(polys):
            raise ValueError("irreducible factors must be pairwise distinct")
        for c in comps:
            if c.degree < 1 or c.poly[-1] != 1:
                raise ValueError("factors must be monic of positive degree")
        total = sum(c.degree * c.partition.size for c in comps)
        if self.n and self.n != total:
            raise ValueError(f"sum of d_i |lambda_i| is {total}, expected {self.n}")
        object.__setattr__(self, "components", comps)
        object.__setattr__(self, "n", total)

    def field_labels(self) -> list[str]:
        labels = []
        for i, c in enumerate(self.components, start=1):
            if c.label:
                labels.append(c.label)
            elif c.degree == 1:
                labels.append("F")
            else:
                labels.append(f"E{i}")
        return labels

    def to_json(self) -> dict:
        return {"components": [
            {"poly": [format_rational(x) for x in c.poly], "partition": list(c.partition.rows)}
            for c in self.components]}

    @classmethod
    def from_json(cls, data: dict) -> "ClassDatum":
        comps = []
        for raw in data["components"]:
            poly = tuple(parse_rational(x) for x in raw["poly"])
            if poly[-1] != 1:
                raise ValueError("polynomials must be monic (leading coefficient 1)")
            comps.append(ClassComponent(poly, Partition(tuple(raw["partition"])), raw.get("label", "")))
        return cls(tuple(comps))


def predict_zeta_multiset(datum: ClassDatum) -> Counter:
    """Multiset of LocalZetaFactor(deg d_i, hook h, arm a), one per box."""
    out: Counter = Counter()
    for comp in datum.components:
        lam = comp.partition
        for j, k in lam.boxes():
            h = h_prop4(lam, j, k)
            a = lam.rows[j - 1] - k
            out[LocalZetaFactor(comp.degree, h, a)] += 1
    return out


def predicted_factors_by_component(datum: ClassDatum) -> list[tuple[str, list[LocalZetaFactor]]]:
    labels = datum.field_labels()
    result = []
    for label, comp in zip(labels, datum.components):
        lam = comp.partition
        factors = sorted(LocalZetaFactor(comp.degree, h_prop4(lam, j, k), lam.rows[j - 1] - k)
                         for j, k in lam.boxes())
        result.append((label, factors))
    return result


def render_prediction(datum: ClassDatum) -> str:
    parts = []
    for label, factors in predicted_factors_by_component(datum):
        parts.extend(f.symbol(label) for f in factors)
    return "".join(parts)


def prediction_expression(datum: ClassDatum, q: int) -> ZetaExpression:
    """Product of the predicted local zeta factors at residue cardinality q."""
    result = ZetaExpression.constant(1, q)
    for factor, mult in sorted(predict_zeta_multiset(datum).items()):
        for _ in range(mult):
            result = result * factor.to_expression(q)
    return result


def verify_conjugation_symmetry(lam: Partition) -> bool:
    """Multiset {(hook, arm)} over the conjugate equals {(hook, leg)} over lam."""
    mu = conjugate(lam)
    left = Counter((hook_arm_leg(mu, j, k)[0], hook_arm_leg(mu, j, k)[1]) for j, k in mu.boxes())
    right = Counter((hook_arm_leg(lam, j, k)[0], hook_arm_leg(lam, j, k)[2]) for j, k in lam.boxes())
    return left == right


def datum_from_pairs(pairs: Sequence[tuple[Sequence, Sequence[int]]]) -> ClassDatum:
    return ClassDatum(tuple(
        ClassComponent(tuple(parse_rational(c) for c in poly), Partition(tuple(rows)))
        for poly, rows in pairs))
