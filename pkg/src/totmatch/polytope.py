"""Small-scale empirical polyhedral checks: polytope dimension, validity,
and facetness of inequalities over the total-matching polytope.

Everything here is exact: polytope vertices are 0/1 vectors, inequality
coefficients are integers (or rationals), and ranks are computed by exact
rational elimination, so a facet verdict is an algebraic fact, not a
float guess.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import SizeLimitError
from .graph import Graph

ENUM_CAP = 24


@dataclass(frozen=True)
class LinearInequality:
    """Generic coeffs . z <= rhs over elements, exact coefficients."""

    coefficients: tuple
    rhs: object  # int or Fraction
    label: str = ""

    def coeffs(self):
        return list(self.coefficients)


def star_inequality(g: Graph, v: int) -> LinearInequality:
    """x_v + sum of its incident y_e <= 1."""
    c = [0] * g.num_elements
    c[v] = 1
    for e in g.incident[v]:
        c[g.n + e] = 1
    return LinearInequality(tuple(c), 1, label=f"star({v})")


def edge_inequality(g: Graph, e: int) -> LinearInequality:
    """x_u + x_w + y_e <= 1 for the edge e = {u, w}."""
    c = [0] * g.num_elements
    u, w = g.endpoints(e)
    c[u] = 1
    c[w] = 1
    c[g.n + e] = 1
    return LinearInequality(tuple(c), 1, label=f"edge({e})")


def nonnegativity(g: Graph, element_index: int) -> LinearInequality:
    """-z_a <= 0, i.e. z_a >= 0."""
    c = [0] * g.num_elements
    c[element_index] = -1
    return LinearInequality(tuple(c), 0, label=f"nonneg({element_index})")


def enumerate_total_matchings(g: Graph):
    """Every total matching of g as an integer bitmask over elements.

    Includes the empty set and all singletons; capped at n+m <= 24.
    """
    ne = g.num_elements
    if ne > ENUM_CAP:
        raise SizeLimitError(f"enumeration capped at n+m <= {ENUM_CAP}, got {ne}")
    masks = g.element_adjacency_masks()
    out = []

    def rec(i, chosen, blocked):
        out.append(chosen)
        for j in range(i, ne):
            bit = 1 << j
            if not blocked & bit:
                rec(j + 1, chosen | bit, blocked | masks[j] | bit)

    rec(0, 0, 0)
    return out


def _as_exact(x):
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    f = Fraction(x).limit_denominator(10**9)
    if float(f) != float(x):
        raise ValueError(f"inequality datum {x!r} is not exactly rational")
    return f


class _ExactRankTracker:
    """Incremental rank of rational rows by exact Gaussian elimination."""

    def __init__(self, width):
        self.width = width
        self.pivots = []  # (pivot column, row as list of Fractions)

    @property
    def rank(self):
        return len(self.pivots)

    def add(self, row) -> bool:
        """Reduce row against the pivots; returns True if rank grew."""
        row = [Fraction(x) for x in row]
        for col, prow in self.pivots:
            if row[col]:
                factor = row[col] / prow[col]
                for j in range(col, self.width):
                    row[j] -= factor * prow[j]
        for col in range(self.width):
            if row[col]:
                self.pivots.append((col, row))
                self.pivots.sort(key=lambda p: p[0])
                return True
        return False


def affine_rank(vectors, width) -> int:
    """Number of affinely independent vectors (rank of homogenized rows)."""
    tracker = _ExactRankTracker(width + 1)
    for vec in vectors:
        tracker.add([1] + list(vec))
        if tracker.rank == width + 1:
            break
    return tracker.rank


def _mask_to_vector(mask, width):
    return [(mask >> i) & 1 for i in range(width)]


def polytope_dimension(g: Graph) -> int:
    """Affine rank of all total-matching vectors minus one; always n+m
    (the polytope is full-dimensional: origin plus all unit vectors)."""
    ne = g.num_elements
    masks = enumerate_total_matchings(g)
    return affine_rank((_mask_to_vector(mk, ne) for mk in masks), ne) - 1


@dataclass
class FacetCheck:
    valid: bool
    tight_count: int
    face_affine_rank: int
    is_facet: bool
    max_lhs: object = None

    def report(self, label="inequality") -> str:
        verdict = (
            "facet" if self.is_facet else ("valid, not facet" if self.valid else "INVALID")
        )
        return (
            f"{label}: valid={self.valid} tight={self.tight_count} "
            f"affine_rank={self.face_affine_rank} -> {verdict}"
        )


def check_inequality(g: Graph, cut) -> FacetCheck:
    """Validity and facetness of coeffs . z <= rhs over P_T(g).

    Valid iff every total-matching vector satisfies it (exact arithmetic);
    facet iff additionally the tight vectors have affine rank n+m, i.e.
    they contain n+m affinely independent points.
    """
    ne = g.num_elements
    coeffs = [_as_exact(c) for c in cut.coeffs()]
    rhs = _as_exact(cut.rhs)
    support = [i for i, c in enumerate(coeffs) if c]
    vertices = enumerate_total_matchings(g)
    tight = []
    valid = True
    max_lhs = None
    for mask in vertices:
        lhs = sum(coeffs[i] for i in support if (mask >> i) & 1)
        if max_lhs is None or lhs > max_lhs:
            max_lhs = lhs
        if lhs > rhs:
            valid = False
        elif lhs == rhs:
            tight.append(mask)
    rank = affine_rank((_mask_to_vector(mk, ne) for mk in tight), ne)
    return FacetCheck(
        valid=valid,
        tight_count=len(tight),
        face_affine_rank=rank,
        is_facet=valid and rank == ne,
        max_lhs=max_lhs,
    )
