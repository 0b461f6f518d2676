"""Conjugacy-class data: partitions per irreducible factor, and classification."""
from __future__ import annotations

from dataclasses import dataclass

from ..partitions import ClassComponent, ClassDatum, Partition
from .factor import DEFAULT_DEGREE_BOUND, factor_over_rationals
from .linalg import RationalMatrix, char_poly
from .poly import RationalPoly, discriminant
from .smith import invariant_factors


def _multiplicity(q: RationalPoly, p: RationalPoly) -> int:
    m = 0
    while p.degree >= q.degree:
        quot, rem = divmod(p, q)
        if rem:
            break
        p, m = quot, m + 1
    return m


def class_datum(x: RationalMatrix, degree_bound: int = DEFAULT_DEGREE_BOUND) -> ClassDatum:
    """Partition lambda_i = [m_i1 >= m_i2 >= ...] of each irreducible q_i, read from
    the exponents of q_i in p_1, p_2, ... (largest invariant factor first)."""
    chain = list(reversed(invariant_factors(x)))
    comps = []
    for q, _ in factor_over_rationals(char_poly(x), degree_bound):
        exps = [_multiplicity(q, pj) for pj in chain]
        comps.append(ClassComponent(q.coeffs, Partition(tuple(e for e in exps if e))))
    datum = ClassDatum(tuple(comps))
    if datum.n != x.nrows:
        raise ValueError("class datum does not account for the full dimension")
    return datum


@dataclass(frozen=True)
class Classification:
    regular: bool
    semisimple: bool
    regular_semisimple: bool
    elliptic: bool

    @property
    def label(self) -> str:
        """The most specific applicable name."""
        if self.elliptic:
            return "elliptic"
        if self.regular_semisimple:
            return "regular-semisimple"
        if self.regular:
            return "regular"
        if self.semisimple:
            return "semisimple"
        return "other"

    def to_json(self) -> dict:
        return {"label": self.label, "regular": self.regular, "semisimple": self.semisimple,
                "regular_semisimple": self.regular_semisimple, "elliptic": self.elliptic}


def classify(p: RationalPoly, datum: ClassDatum) -> Classification:
    prod = RationalPoly([1])
    for comp in datum.components:
        prod = prod * RationalPoly(comp.poly) ** comp.partition.size
    if prod != p.monic() or p.degree != datum.n:
        raise ValueError("class datum is inconsistent with the characteristic polynomial")
    regular = all(c.partition.is_single_row() for c in datum.components)
    semisimple = all(c.partition.is_all_ones() for c in datum.components)
    rs = regular and semisimple
    elliptic = len(datum.components) == 1 and datum.components[0].partition.rows == (1,)
    if rs != (discriminant(p) != 0):
        raise ValueError("classification disagrees with the discriminant criterion")
    return Classification(regular, semisimple, rs, elliptic)
