"""Strictly convex rational polyhedral cones over exact rationals.

A cone is stored with both descriptions: its extreme rays (primitive integer
vectors, lexicographically sorted) and the inequalities cutting it out (the
generators of the dual cone). Conversion between the two is done by
enumerating tight subsets of the defining rows, which at this scale (ambient
rank <= ~6) is the simplest exact form of the double-description method.

Cones that are not strictly convex (duals of lower-dimensional cones,
intersections) are carried with an explicit lineality basis instead of being
rejected; ``strictly_convex`` flags them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .linalg import (
    IntegerMatrix,
    IntVec,
    complete_to_basis,
    dot,
    integer_kernel_basis,
    is_zero_vector,
    lattice_index,
    primitive_of_rational,
)


def _hcone_generators(ineq_rows: Sequence[IntVec], d: int) -> tuple[list[IntVec], list[IntVec]]:
    """V-description of {x in Q^d : r.x >= 0 for every row r}.

    Returns (pointed_rays, lineality_basis). The pointed rays are primitive,
    deduplicated and lex-sorted; together with +/- the lineality basis they
    generate the cone. Candidate rays are kernels of rank-(d-1) subsets of
    the rows, which yields exactly the extreme rays of the pointed part.
    """
    rows = sorted(set(tuple(int(x) for x in r) for r in ineq_rows) - {(0,) * d})
    lineality = integer_kernel_basis(IntegerMatrix.from_rows([list(r) for r in rows], cols=d))
    l = len(lineality)
    dp = d - l
    if dp == 0:
        return [], lineality
    basis = list(lineality) + list(complete_to_basis(lineality, d))
    # constraints in the complement coordinates (the lineality coordinates pair to zero)
    reduced = sorted(set(
        tuple(dot(r, basis[l + k]) for k in range(dp)) for r in rows) - {(0,) * dp})
    rays: set[IntVec] = set()
    for subset in combinations(range(len(reduced)), dp - 1):
        sub = IntegerMatrix.from_rows([list(reduced[i]) for i in subset], cols=dp)
        ker = integer_kernel_basis(sub)
        if len(ker) != 1:
            continue
        w = ker[0]
        signs = [dot(r, w) for r in reduced]
        if all(s >= 0 for s in signs):
            rays.add(w)
        elif all(s <= 0 for s in signs):
            rays.add(tuple(-x for x in w))
    ambient = set()
    for w in rays:
        vec = tuple(sum(w[k] * basis[l + k][j] for k in range(dp)) for j in range(d))
        ambient.add(primitive_of_rational([Fraction(x) for x in vec]))
    return sorted(ambient), lineality


@dataclass(frozen=True)
class Cone:
    """Rational polyhedral cone with cached ray and inequality data."""

    ambient_rank: int
    rays: tuple[IntVec, ...] = ()
    lineality: tuple[IntVec, ...] = field(default=(), compare=True)
    dim: int = field(default=0, compare=False)
    dual_rays: tuple[IntVec, ...] = field(default=(), compare=False, repr=False)
    dual_lineality: tuple[IntVec, ...] = field(default=(), compare=False, repr=False)

    @classmethod
    def from_generators(cls, generators: Iterable[Sequence], ambient_rank: int) -> "Cone":
        gens = []
        for g in generators:
            if len(g) != ambient_rank:
                raise ValueError("generator length does not match ambient rank")
            if not is_zero_vector(g):
                gens.append(primitive_of_rational([Fraction(x) for x in g]))
        gens = sorted(set(gens))
        if not gens:
            dual_p, dual_l = [], [tuple(int(i == j) for j in range(ambient_rank))
                                 for i in range(ambient_rank)]
            return cls(ambient_rank, (), (), 0, tuple(dual_p), tuple(dual_l))
        dual_p, dual_l = _hcone_generators(gens, ambient_rank)
        ineqs = list(dual_p) + list(dual_l) + [tuple(-x for x in v) for v in dual_l]
        rays, lin = _hcone_generators(ineqs, ambient_rank)
        return cls(ambient_rank, tuple(rays), tuple(lin),
                   ambient_rank - len(dual_l), tuple(dual_p), tuple(dual_l))

    @property
    def strictly_convex(self) -> bool:
        return not self.lineality

    @property
    def is_zero(self) -> bool:
        return self.dim == 0

    def generating_vectors(self) -> tuple[IntVec, ...]:
        """Canonical generator list: rays plus +/- the lineality basis."""
        return self.rays + self.lineality + tuple(tuple(-x for x in v) for v in self.lineality)

    def inequality_rows(self) -> tuple[IntVec, ...]:
        """Rows m with the cone equal to {x : m.x >= 0 for all rows}."""
        return self.dual_rays + self.dual_lineality + tuple(
            tuple(-x for x in v) for v in self.dual_lineality)


def rays(c: Cone) -> tuple[IntVec, ...]:
    """Extreme rays of c as first lattice points, lex-sorted."""
    if not c.strictly_convex:
        raise ValueError("extreme rays are only canonical for strictly convex cones")
    return c.rays


def dual_cone(c: Cone) -> Cone:
    """The dual cone {m : <m, u> >= 0 for all u in c}.

    Strictly convex iff c is full-dimensional; otherwise the result carries
    its lineality basis and is flagged via ``strictly_convex``.
    """
    return Cone.from_generators(
        list(c.dual_rays) + list(c.dual_lineality)
        + [tuple(-x for x in v) for v in c.dual_lineality],
        c.ambient_rank)


def is_simplicial(c: Cone) -> bool:
    return c.strictly_convex and len(c.rays) == c.dim


def is_full_dimensional(c: Cone) -> bool:
    return c.dim == c.ambient_rank


def contains(c: Cone, v: Sequence) -> bool:
    """Exact membership test via the cached inequality description."""
    if len(v) != c.ambient_rank:
        raise ValueError("rank mismatch")
    return (all(dot(m, v) >= 0 for m in c.dual_rays)
            and all(dot(m, v) == 0 for m in c.dual_lineality))


def contains_cone(c: Cone, f: Cone) -> bool:
    if f.ambient_rank != c.ambient_rank:
        raise ValueError("rank mismatch")
    return all(contains(c, g) for g in f.generating_vectors())


def is_face(c: Cone, f: Cone) -> bool:
    """Whether f = c intersect m^perp for some m in the dual of c, and f <= c.

    The search runs over sums of subsets of the dual rays; each face of c is
    cut out by exactly one such subset (its tight set in the dual).
    """
    if f.ambient_rank != c.ambient_rank:
        raise ValueError("rank mismatch")
    if not contains_cone(c, f):
        return False
    gens = c.generating_vectors()
    for k in range(len(c.dual_rays) + 1):
        for subset in combinations(c.dual_rays, k):
            m = tuple(sum(col) for col in zip(*subset)) if subset else (0,) * c.ambient_rank
            tight = [g for g in gens if dot(m, g) == 0]
            if Cone.from_generators(tight, c.ambient_rank) == f:
                return True
    return False


def intersect(c1: Cone, c2: Cone) -> Cone:
    """Intersection, computed on the inequality descriptions."""
    if c1.ambient_rank != c2.ambient_rank:
        raise ValueError("rank mismatch")
    d = c1.ambient_rank
    pointed, lin = _hcone_generators(c1.inequality_rows() + c2.inequality_rows(), d)
    return Cone.from_generators(
        list(pointed) + list(lin) + [tuple(-x for x in v) for v in lin], d)


def multiplicity(c: Cone) -> int:
    """Index of the ray lattice Z v_1 + ... + Z v_r in the saturation of its span."""
    if not is_simplicial(c):
        raise ValueError("multiplicity requires a simplicial cone")
    if c.is_zero:
        return 1
    return int(lattice_index(c.rays, c.ambient_rank))


def ray_star(c: Cone, rho: Sequence[int]) -> IntVec:
    """The unique ray of the dual cone pairing positively with the ray rho.

    Requires c simplicial and full-dimensional; this is the bijection between
    the rays of c and the rays of its dual.
    """
    if not is_simplicial(c) or not is_full_dimensional(c):
        raise ValueError("ray_star requires a simplicial full-dimensional cone")
    rho = tuple(int(x) for x in rho)
    if rho not in c.rays:
        raise ValueError(f"{rho} is not a ray of the cone")
    hits = [m for m in c.dual_rays if dot(m, rho) > 0]
    if len(hits) != 1:
        raise AssertionError("ray star correspondence failed; cone data corrupt")
    return hits[0]


def relative_interior_point(c: Cone) -> IntVec:
    """Sum of the primitive ray generators; lies in the relative interior."""
    if c.is_zero:
        raise ValueError("the zero cone has no relative interior point")
    total = [0] * c.ambient_rank
    for r in c.rays:
        total = [a + b for a, b in zip(total, r)]
    return tuple(total)
