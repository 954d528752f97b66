"""Simplicial fans with level structures (stacky fans).

A fan is stored by its primitive rays (in user order, so ray indices are
stable identifiers) and its cones as sorted tuples of ray indices. Cones are
simplicial throughout, so the face closure is exactly the set of index
subsets; the geometric fan axioms (pairwise intersections are common faces)
are checked on construction. A stacky fan adds one positive integer level
per ray, whose free-net points n_rho * v_rho scale the lattice data of every
cone containing the ray.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from . import cones as conelib
from .cones import Cone
from .linalg import IntegerMatrix, IntVec, dot, primitive_vector, smith_normal_form
from .monoids import monoid_generators


class FanError(ValueError):
    """Base class for fan validation failures."""


class NonPrimitiveRay(FanError):
    def __init__(self, ray):
        self.ray = tuple(ray)
        try:
            hint = f"; use {primitive_vector(self.ray)}"
        except ValueError:
            hint = ""
        super().__init__(f"ray {self.ray} is not primitive{hint}")


class DuplicateRay(FanError):
    def __init__(self, ray):
        self.ray = tuple(ray)
        super().__init__(f"duplicate ray {self.ray}")


class NonSimplicial(FanError):
    def __init__(self, cone_indices):
        self.cone_indices = tuple(cone_indices)
        super().__init__(f"cone {self.cone_indices} is not simplicial "
                         "(rays are linearly dependent)")


class IntersectionNotFace(FanError):
    def __init__(self, c1, c2):
        self.cone_pair = (tuple(c1), tuple(c2))
        super().__init__(f"intersection of cones {tuple(c1)} and {tuple(c2)} "
                         "is not a common face")


class InvalidLevel(FanError):
    def __init__(self, ray_index, value):
        self.ray_index = ray_index
        self.value = value
        super().__init__(f"level on ray {ray_index} must be a positive integer, got {value!r}")


@dataclass(frozen=True)
class Fan:
    """Finite simplicial fan, closed under faces."""

    ambient_rank: int
    rays: tuple[IntVec, ...]
    cones: tuple[tuple[int, ...], ...]
    maximal_cones: tuple[tuple[int, ...], ...]

    @lru_cache(maxsize=None)
    def cone_geometry(self, indices: tuple[int, ...]) -> Cone:
        return Cone.from_generators([self.rays[i] for i in indices], self.ambient_rank)

    def normalize(self, indices: Iterable[int]) -> tuple[int, ...]:
        key = tuple(sorted(set(int(i) for i in indices)))
        if key not in set(self.cones):
            raise ValueError(f"cone {key} is not in the fan")
        return key

    def dim(self, indices: Iterable[int]) -> int:
        return len(self.normalize(indices))


def validate_fan(rays: Sequence[Sequence[int]], maximal_cones: Sequence[Sequence[int]],
                 ambient_rank: int | None = None) -> Fan:
    """Construct a fan, checking every axiom; raises FanError subclasses.

    Rays must be primitive and pairwise distinct (hence pairwise
    non-proportional once simpliciality holds), cones simplicial, and the
    intersection of any two cones must be the cone on their shared rays.
    """
    rays = [tuple(int(x) for x in r) for r in rays]
    if ambient_rank is None:
        if not rays:
            raise ValueError("ambient rank is required for a fan with no rays")
        ambient_rank = len(rays[0])
    for r in rays:
        if len(r) != ambient_rank:
            raise FanError(f"ray {r} does not have length {ambient_rank}")
        if all(x == 0 for x in r) or primitive_vector(r) != r:
            raise NonPrimitiveRay(r)
    seen = set()
    for r in rays:
        if r in seen:
            raise DuplicateRay(r)
        seen.add(r)

    normalized = set()
    for c in maximal_cones:
        idx = tuple(sorted(set(int(i) for i in c)))
        if len(idx) != len(list(c)):
            raise FanError(f"cone {tuple(c)} repeats a ray index")
        if idx and (idx[0] < 0 or idx[-1] >= len(rays)):
            raise FanError(f"cone {idx} references a ray out of range")
        mat = IntegerMatrix.from_rows([list(rays[i]) for i in idx], cols=ambient_rank)
        s, _, _ = smith_normal_form(mat)
        rank = sum(1 for i in range(min(mat.rows, mat.cols)) if s.entry(i, i) != 0)
        if rank != len(idx):
            raise NonSimplicial(idx)
        normalized.add(idx)

    if not normalized:
        normalized = {()}  # the torus fan: only the zero cone
    maximal = tuple(sorted(c for c in normalized
                           if not any(c != o and set(c) <= set(o) for o in normalized)))
    closure = {()}
    for c in normalized:
        for k in range(len(c) + 1):
            closure.update(combinations(c, k))
    fan = Fan(ambient_rank, tuple(rays), tuple(sorted(closure, key=lambda c: (len(c), c))),
              maximal)

    for c1, c2 in combinations(maximal, 2):
        shared = tuple(sorted(set(c1) & set(c2)))
        inter = conelib.intersect(fan.cone_geometry(c1), fan.cone_geometry(c2))
        if inter != fan.cone_geometry(shared):
            raise IntersectionNotFace(c1, c2)
    return fan


@dataclass(frozen=True)
class StackyFan:
    """Fan plus one positive integer level per ray."""

    fan: Fan
    levels: tuple[int, ...]

    @classmethod
    def build(cls, fan: Fan, levels: Mapping[int, int] | None = None) -> "StackyFan":
        table = [1] * len(fan.rays)
        for key, value in (levels or {}).items():
            idx = int(key)
            if idx < 0 or idx >= len(fan.rays):
                raise InvalidLevel(idx, value)
            if not isinstance(value, int) or isinstance(value, bool) or value < 1:
                raise InvalidLevel(idx, value)
            table[idx] = value
        sf = cls(fan, tuple(table))
        # stacky-fan axioms: per cone the free-net points generate a free
        # monoid of rank dim(sigma) close to sigma; automatic here since the
        # points are positive multiples of linearly independent rays
        for c in fan.maximal_cones:
            assert len({i for i in c}) == fan.cone_geometry(c).dim
        return sf


def free_net_points(sf: StackyFan) -> dict[int, IntVec]:
    """The point n_rho * v_rho on each ray, keyed by ray index."""
    return {i: tuple(n * x for x in ray)
            for i, (ray, n) in enumerate(zip(sf.fan.rays, sf.levels))}


def is_complete(fan: Fan) -> bool:
    """Wall criterion for completeness of a finite simplicial fan.

    The support is all of the ambient space iff the fan is pure of top
    dimension, every wall (codimension-one cone) bounds exactly two top
    cones, and the top cones are connected through shared walls.
    """
    d = fan.ambient_rank
    top = [c for c in fan.cones if len(c) == d]
    if not top:
        return False
    if any(len(c) != d for c in fan.maximal_cones):
        return False
    walls = [c for c in fan.cones if len(c) == d - 1]
    coface = {w: [t for t in top if set(w) <= set(t)] for w in walls}
    if any(len(cf) != 2 for cf in coface.values()):
        return False
    neighbours = {t: set() for t in top}
    for w, (a, b) in coface.items():
        neighbours[a].add(b)
        neighbours[b].add(a)
    seen = {top[0]}
    frontier = [top[0]]
    while frontier:
        nxt = []
        for t in frontier:
            for o in neighbours[t]:
                if o not in seen:
                    seen.add(o)
                    nxt.append(o)
        frontier = nxt
    return len(seen) == len(top)


def stacky_multiplicity(sf: StackyFan, sigma: Iterable[int]) -> int:
    """mult(sigma) times the product of the levels on the rays of sigma."""
    key = sf.fan.normalize(sigma)
    if not key:
        return 1
    mult = conelib.multiplicity(sf.fan.cone_geometry(key))
    return mult * math.prod(sf.levels[i] for i in key)


def is_tame(sf: StackyFan, residue_characteristics: Sequence[int]) -> bool:
    """Every stacky multiplicity invertible in every listed characteristic.

    Characteristic 0 imposes no condition.
    """
    chars = [int(p) for p in residue_characteristics if int(p) != 0]
    if not chars:
        return True
    for c in sf.fan.cones:
        m = stacky_multiplicity(sf, c)
        if any(math.gcd(m, p) != 1 for p in chars):
            return False
    return True


def cycle_ideal_classical(fan: Fan, tau: Iterable[int], sigma_chart: Iterable[int]) -> list[IntVec]:
    """Generators of the ideal of the torus-invariant cycle of tau in a chart.

    These are the monoid generators of sigma^vee intersect M that pair
    strictly positively with a relative interior point of tau; they generate
    the ideal of lattice points positive somewhere on tau.
    """
    tau_key = fan.normalize(tau)
    sigma_key = fan.normalize(sigma_chart)
    if not set(tau_key) <= set(sigma_key):
        raise ValueError(f"cone {tau_key} is not a face of chart cone {sigma_key}")
    if not tau_key:
        return []
    sigma_cone = fan.cone_geometry(sigma_key)
    dual = conelib.dual_cone(sigma_cone)
    relint = conelib.relative_interior_point(fan.cone_geometry(tau_key))
    return sorted(h for h in monoid_generators(dual) if dot(h, relint) > 0)
