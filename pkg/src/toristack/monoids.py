"""Affine toric monoids and their free resolutions.

A monoid P is stored through its defining cone C(P) in M (x) Q together with
its Hilbert basis, so saturation holds by construction: P is exactly the set
of lattice points of C(P). On top of that sit the resolution operations: the
minimal free resolution (the smallest free monoid F with P <= F <= P^gp (x) Q
and P close to F), its scalings by positive integer levels, the cokernel
F^gp / P^gp, and the correspondence between free generators, rays of C(P)
and height-one primes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Mapping, NamedTuple, Sequence

from . import cones
from .cones import Cone
from .linalg import (
    FiniteAbelianGroup,
    FracVec,
    IntegerMatrix,
    IntVec,
    cokernel_invariants,
    complete_to_basis,
    dot,
    fraction_content,
    hermite_normal_form,
    is_zero_vector,
    rational_inverse,
    rational_solve,
    saturate,
    smith_normal_form,
    unimodular_inverse,
    vec_sub,
)


class NotCloseError(ValueError):
    """A submonoid fails the closeness check within the search bound."""


class NotSaturatedError(ValueError):
    """A submonoid fails the brute-force saturation check."""


# ---------------------------------------------------------------------------
# Hilbert bases

def _hilbert_basis_full(ray_list: Sequence[IntVec], d: int) -> list[IntVec]:
    """Hilbert basis of a full-dimensional simplicial cone in Z^d.

    Enumerates the lattice points of the half-open fundamental parallelepiped
    of the primitive rays (one per residue class of Z^d modulo the ray
    lattice), adds the rays, and filters to irreducible elements. All inner
    loops run on integers: membership uses |det| times the inverse matrix.
    """
    a = IntegerMatrix.from_columns([list(r) for r in ray_list], rows=d)
    ainv = rational_inverse(a.row_list())
    vol = abs(a.determinant())
    scaled = [[int(x * vol) for x in row] for row in ainv]  # vol * A^-1, integral

    def scaled_coords(x: Sequence[int]) -> list[int]:
        return [sum(r * xi for r, xi in zip(row, x)) for row in scaled]

    s, u, _ = smith_normal_form(a)
    diag = [s.entry(i, i) for i in range(d)]
    uinv = unimodular_inverse(u)
    candidates: set[IntVec] = set(ray_list)
    for residue in product(*(range(di) for di in diag)):
        x0 = uinv.apply(residue)
        frac = [c % vol for c in scaled_coords(x0)]
        p = []
        for j in range(d):
            num = sum(frac[i] * ray_list[i][j] for i in range(d))
            q, rem = divmod(num, vol)
            if rem:
                raise AssertionError("parallelepiped point is not integral")
            p.append(q)
        p = tuple(p)
        if not is_zero_vector(p):
            candidates.add(p)
    # irreducibility: h is reducible iff h - g lies in the monoid for some
    # nonzero generator g != h; comparing by degree halves the search
    degree = {h: sum(scaled_coords(h)) for h in candidates}
    by_degree = sorted(candidates, key=lambda h: (degree[h], h))
    basis = []
    for h in sorted(candidates):
        reducible = False
        for g in by_degree:
            if degree[g] >= degree[h]:
                break
            if all(c >= 0 for c in scaled_coords(vec_sub(h, g))):
                reducible = True
                break
        if not reducible:
            basis.append(h)
    return basis


def hilbert_basis(c: Cone) -> list[IntVec]:
    """Minimal generating set of c intersected with the ambient lattice.

    The cone must be simplicial and strictly convex; lower-dimensional cones
    are handled inside the saturation of their span.
    """
    if not cones.is_simplicial(c):
        raise ValueError("Hilbert basis computation requires a simplicial cone")
    if c.is_zero:
        return []
    d = c.ambient_rank
    if c.dim == d:
        return _hilbert_basis_full(c.rays, d)
    span = saturate(list(c.rays))
    full = list(span) + list(complete_to_basis(span, d))
    full_t = [list(col) for col in zip(*full)]
    local_rays = []
    for r in c.rays:
        coords = rational_solve(full_t, r)
        if any(x.denominator != 1 for x in coords) or any(x != 0 for x in coords[c.dim:]):
            raise AssertionError("ray not in the saturated span")
        local_rays.append(tuple(int(x) for x in coords[:c.dim]))
    local = _hilbert_basis_full(local_rays, c.dim)
    lifted = [tuple(dot(h, col) for col in zip(*span)) for h in local]
    return sorted(lifted)


def monoid_generators(c: Cone) -> list[IntVec]:
    """Canonical generating set of c intersected with the lattice, units allowed.

    For a strictly convex cone this is the Hilbert basis. Otherwise the unit
    subgroup (lineality lattice) contributes +/- a basis, and the sharp
    quotient's Hilbert basis is lifted along the canonical basis completion.
    """
    if c.strictly_convex:
        return hilbert_basis(c)
    lin = list(c.lineality)
    comp = complete_to_basis(lin, c.ambient_rank)
    # sharp image: drop the lineality coordinates in the completed basis
    basis = lin + list(comp)
    binv = rational_inverse([list(col) for col in zip(*basis)])
    imaged = []
    for g in c.rays:
        y = [dot(row, g) for row in binv]
        imaged.append(tuple(int(x) for x in y[len(lin):]))
    image_cone = Cone.from_generators(imaged, c.ambient_rank - len(lin))
    lifts = [tuple(dot(h, col) for col in zip(*comp)) for h in hilbert_basis(image_cone)]
    units = lin + [tuple(-x for x in v) for v in lin]
    return sorted(lifts + units)


# ---------------------------------------------------------------------------
# monoids

@dataclass(frozen=True)
class AffineMonoid:
    """P = C(P) intersect M, stored by its defining cone and Hilbert basis."""

    lattice_rank: int
    defining_cone: Cone
    hilbert_basis: tuple[IntVec, ...]
    sharp: bool
    simplicial: bool

    @classmethod
    def from_dual_cone(cls, c: Cone) -> "AffineMonoid":
        """Monoid of lattice points of a cone in M (x) Q.

        The sharp flag records strict convexity of the cone. The generator
        set is computed for simplicial cones; a non-simplicial monoid is
        carried for flag queries only (resolution theory does not apply).
        """
        sharp = c.strictly_convex
        pointed_dim = c.dim - len(c.lineality)
        simplicial = len(c.rays) == pointed_dim
        gens: tuple[IntVec, ...] = ()
        if simplicial:
            gens = tuple(monoid_generators(c))
        return cls(c.ambient_rank, c, gens, sharp, simplicial)

    def contains(self, x: Sequence[int]) -> bool:
        return all(isinstance(v, int) or Fraction(v).denominator == 1 for v in x) \
            and cones.contains(self.defining_cone, x)


def monoid_from_cone(sigma: Cone, m_rank: int | None = None) -> AffineMonoid:
    """The monoid of the dual cone of sigma: lattice points of sigma^vee in M.

    sigma lives in N; the result is sharp iff sigma is full-dimensional.
    """
    if not cones.is_simplicial(sigma):
        raise ValueError("monoid_from_cone requires a simplicial cone")
    if m_rank is not None and m_rank != sigma.ambient_rank:
        raise ValueError("rank mismatch")
    return AffineMonoid.from_dual_cone(cones.dual_cone(sigma))


def is_simplicially_toric(p: AffineMonoid) -> bool:
    """Whether C(P) is simplicial, i.e. its ray count equals the rank of P^gp."""
    if not p.sharp:
        raise ValueError("sharpness is required; split off units first")
    return p.simplicial


# ---------------------------------------------------------------------------
# free resolutions

class RayCorrespondence(NamedTuple):
    """One line of the generator / ray / height-one prime dictionary."""

    index: int
    generator: FracVec          # realized free generator on the ray
    ray: IntVec                 # primitive ray of C(P)
    facet_rays: tuple[IntVec, ...]  # rays of the facet cutting out the prime


@dataclass(frozen=True)
class FreeResolution:
    """Embedding of P into a free monoid inside P^gp (x) Q.

    generators are the minimal free generators f_i = v_i / b_i sitting on the
    rays v_i of C(P); realized_generators g_i = f_i / n_i carry the level
    scalings (all n_i = 1 for the minimal resolution).
    """

    source: AffineMonoid
    rank: int
    denominators: tuple[int, ...]
    levels: tuple[int, ...]
    generators: tuple[FracVec, ...]
    realized_generators: tuple[FracVec, ...]

    def __post_init__(self):
        if any(n < 1 for n in self.levels):
            raise ValueError("levels must be positive integers")
        if any(b < 1 for b in self.denominators):
            raise ValueError("denominators must be positive integers")
        for h in self.source.hilbert_basis:
            c = self.coordinates(h)
            if any(x.denominator != 1 or x < 0 for x in c):
                raise AssertionError(
                    f"monoid element {h} is not a lattice point of the free monoid")

    @property
    def is_minimal(self) -> bool:
        return all(n == 1 for n in self.levels)

    @cached_property
    def _basis_inverse(self) -> list[list[Fraction]]:
        cols = [list(g) for g in self.realized_generators]
        return rational_inverse([list(r) for r in zip(*cols)])

    def coordinates(self, x: Sequence) -> FracVec:
        """Coordinates of x in the realized generator basis."""
        return tuple(dot(row, x) for row in self._basis_inverse)

    def coordinate_matrix(self) -> IntegerMatrix:
        """Columns: the standard basis of M written in the realized basis.

        This is the matrix of P^gp -> F^gp; a non-integral entry means the
        resolution data is broken and raises.
        """
        d = self.rank
        cols = []
        for k in range(d):
            e = [int(i == k) for i in range(d)]
            c = self.coordinates(e)
            if any(x.denominator != 1 for x in c):
                raise ValueError("non-integral coordinate matrix: broken resolution")
            cols.append([int(x) for x in c])
        return IntegerMatrix.from_columns(cols, rows=d)


def minimal_free_resolution(p: AffineMonoid) -> FreeResolution:
    """Canonical construction of the minimal free resolution of P.

    The free generators are v_i / b_i where v_i are the primitive rays of
    C(P) (lex order) and (1/b_i) Z is the image of P^gp under the i-th
    ray coordinate.
    """
    if not p.sharp:
        raise ValueError("minimal free resolution requires a sharp monoid")
    if not p.simplicial:
        raise ValueError("minimal free resolution requires a simplicially toric monoid")
    c = p.defining_cone
    if c.dim != p.lattice_rank:
        raise ValueError("defining cone must be full-dimensional (P^gp of full rank)")
    d = p.lattice_rank
    ray_list = c.rays
    ainv = rational_inverse([list(col) for col in zip(*ray_list)])
    denominators = []
    for i in range(d):
        content = fraction_content(ainv[i])
        b = 1 / content
        if b.denominator != 1:
            raise AssertionError("ray coordinate image is not of the form (1/b)Z")
        denominators.append(int(b))
    gens = tuple(tuple(Fraction(x, b) for x in v) for v, b in zip(ray_list, denominators))
    return FreeResolution(
        source=p, rank=d,
        denominators=tuple(denominators),
        levels=(1,) * d,
        generators=gens,
        realized_generators=gens,
    )


def admissible_resolution(p: AffineMonoid, levels: Mapping[IntVec, int]) -> FreeResolution:
    """Scale the minimal free resolution by per-ray levels.

    levels maps primitive rays of C(P) to positive integers; missing rays
    default to 1. The realized generators become f_i / n_i.
    """
    res = minimal_free_resolution(p)
    ray_list = p.defining_cone.rays
    known = set(ray_list)
    by_ray = {}
    for key, n in levels.items():
        key = tuple(int(x) for x in key)
        if key not in known:
            raise ValueError(f"level given for unknown ray {key}")
        if int(n) < 1:
            raise ValueError(f"level on ray {key} must be >= 1")
        by_ray[key] = int(n)
    ns = tuple(by_ray.get(r, 1) for r in ray_list)
    realized = tuple(tuple(x / n for x in f) for f, n in zip(res.generators, ns))
    return FreeResolution(
        source=p, rank=res.rank,
        denominators=res.denominators,
        levels=ns,
        generators=res.generators,
        realized_generators=realized,
    )


def resolution_cokernel(res: FreeResolution) -> FiniteAbelianGroup:
    """Invariant factors of F^gp modulo the image of P^gp."""
    return cokernel_invariants(res.coordinate_matrix())


def irreducible_ray_correspondence(res: FreeResolution) -> list[RayCorrespondence]:
    """Generator <-> ray of C(P) <-> height-one prime dictionary.

    The i-th free generator lies on the i-th ray; the matching prime ideal is
    the complement of the facet of C(P) spanned by the other rays.
    """
    ray_list = res.source.defining_cone.rays
    out = []
    for i, (g, v) in enumerate(zip(res.realized_generators, ray_list)):
        facet = tuple(r for j, r in enumerate(ray_list) if j != i)
        out.append(RayCorrespondence(i, g, v, facet))
    return out


# ---------------------------------------------------------------------------
# submonoids and quotients

def _positive_functional(p: AffineMonoid) -> IntVec:
    """Integer functional strictly positive on P minus the origin."""
    dual = cones.dual_cone(p.defining_cone)
    return cones.relative_interior_point(dual)


def _in_submonoid(target: IntVec, gens: Sequence[IntVec], phi: IntVec) -> bool:
    """Bounded search: is target a nonnegative integer combination of gens?"""
    weights = [dot(phi, g) for g in gens]

    def rec(idx: int, rest: IntVec, budget: int) -> bool:
        if is_zero_vector(rest):
            return True
        if idx == len(gens):
            return False
        w = weights[idx]
        top = budget // w if w > 0 else 0
        g = gens[idx]
        for k in range(top, -1, -1):
            nxt = tuple(a - k * b for a, b in zip(rest, g))
            if rec(idx + 1, nxt, budget - k * w):
                return True
        return False

    return rec(0, tuple(target), dot(phi, target))


def quotient_group(p: AffineMonoid, q_generators: Sequence[Sequence[int]],
                   multiple_bound: int | None = None) -> FiniteAbelianGroup:
    """P/Q for a saturated submonoid Q close to P, as P^gp / Q^gp.

    Both preconditions are checked: closeness by searching a positive
    multiple of every Hilbert-basis element of P inside Q (failing loudly at
    the bound), saturation by brute force over small-degree elements of
    C(Q) intersect Q^gp.
    """
    if not p.sharp:
        raise ValueError("quotient_group requires a sharp monoid")
    q_gens = []
    for g in q_generators:
        g = tuple(int(x) for x in g)
        if not p.contains(g):
            raise ValueError(f"generator {g} does not lie in P")
        if not is_zero_vector(g):
            q_gens.append(g)
    q_gens = sorted(set(q_gens))
    if not q_gens:
        raise NotCloseError("the trivial submonoid is not close to P")
    span = IntegerMatrix.from_columns([list(g) for g in q_gens], rows=p.lattice_rank)
    group = cokernel_invariants(span)
    if group.free_rank:
        raise NotCloseError("Q^gp has infinite index in P^gp, so Q cannot be close to P")
    exponent = group.invariant_factors[-1] if group.invariant_factors else 1
    bound = multiple_bound if multiple_bound is not None else exponent
    phi = _positive_functional(p)

    for h in p.hilbert_basis:
        if not any(_in_submonoid(tuple(k * x for x in h), q_gens, phi)
                   for k in range(1, bound + 1)):
            raise NotCloseError(
                f"no multiple of {h} found in Q within bound {bound}")

    # brute-force saturation check: lattice points of C(Q) = C(P) with degree
    # up to the largest generator degree that lie in Q^gp must lie in Q
    h_span, _ = hermite_normal_form(IntegerMatrix.from_rows([list(g) for g in q_gens]))
    basis_rows = [list(h_span.row(i)) for i in range(h_span.rows)
                  if not is_zero_vector(h_span.row(i))]

    def in_qgp(x: IntVec) -> bool:
        rest = list(x)
        for row in basis_rows:
            j = next(k for k, v in enumerate(row) if v != 0)
            if rest[j] % row[j] != 0:
                return False
            q = rest[j] // row[j]
            rest = [a - q * b for a, b in zip(rest, row)]
        return is_zero_vector(rest)

    deg_cap = max(dot(phi, g) for g in q_gens)
    seen = {(0,) * p.lattice_rank}
    frontier = [(0,) * p.lattice_rank]
    while frontier:
        nxt = []
        for x in frontier:
            for h in p.hilbert_basis:
                y = tuple(a + b for a, b in zip(x, h))
                if y not in seen and dot(phi, y) <= deg_cap:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    for x in sorted(seen):
        if not is_zero_vector(x) and in_qgp(x):
            if not _in_submonoid(x, q_gens, phi):
                raise NotSaturatedError(f"{x} lies in C(Q) and Q^gp but not in Q")
    return group


def restrict_resolution(p: AffineMonoid, res: FreeResolution,
                        coordinate_subset: Sequence[int]) -> tuple[AffineMonoid, FreeResolution]:
    """Project the minimal resolution to a subset of the free coordinates.

    Returns the projected monoid Q together with its minimal free resolution,
    asserting that the projection of the original resolution is that minimal
    resolution (recomputed from scratch). Q is re-coordinated by a canonical
    basis of Q^gp, since the projection need not span the full lattice; the
    identity projection returns (P, res) unchanged.
    """
    if not res.is_minimal:
        raise ValueError("restrict_resolution expects the minimal resolution")
    d = res.rank
    subset = sorted(set(int(i) for i in coordinate_subset))
    if not subset or subset[0] < 0 or subset[-1] >= d:
        raise ValueError("coordinate subset out of range")
    if len(subset) == d:
        return p, res
    r = len(subset)
    projected = sorted(set(
        tuple(int(res.coordinates(h)[i]) for i in subset) for h in p.hilbert_basis))
    h_basis, _ = hermite_normal_form(IntegerMatrix.from_rows([list(g) for g in projected]))
    basis = [h_basis.row(i) for i in range(h_basis.rows) if not is_zero_vector(h_basis.row(i))]
    if len(basis) != r:
        raise AssertionError("projected monoid group is not of full rank")
    basis_t = [list(col) for col in zip(*basis)]
    recoord = []
    for g in projected:
        y = rational_solve(basis_t, g)
        if any(v.denominator != 1 for v in y):
            raise AssertionError("projected generator outside its own group lattice")
        recoord.append(tuple(int(v) for v in y))
    q = AffineMonoid.from_dual_cone(Cone.from_generators(recoord, r))
    # the projection is guaranteed saturated: its lattice points must all be
    # reachable from the projected generators
    phi = _positive_functional(q)
    for h in q.hilbert_basis:
        if not _in_submonoid(h, recoord, phi):
            raise AssertionError("projection produced a non-saturated monoid")
    res_q = minimal_free_resolution(q)
    # Projection stability: the images of the projected free generators must
    # be exactly the recomputed minimal free generators.
    images = sorted(rational_solve(basis_t, [int(i == k) for k in range(r)])
                    for i in range(r))
    recomputed = sorted(res_q.generators)
    if images != recomputed:
        raise AssertionError(
            "projected resolution differs from the recomputed minimal one: "
            f"{images} vs {recomputed}")
    return q, res_q


def saturation_intersection_check(res: FreeResolution, degree_bound: int) -> bool:
    """Brute-force check that P^gp intersect F equals P up to the given degree.

    Walks every element of the free monoid with coordinate sum at most the
    bound; each one lying in the lattice M must already lie in P.
    """
    p = res.source
    d = res.rank
    for a in product(range(degree_bound + 1), repeat=d):
        if sum(a) > degree_bound or sum(a) == 0:
            continue
        x = [Fraction(0)] * d
        for coeff, g in zip(a, res.realized_generators):
            x = [acc + coeff * gi for acc, gi in zip(x, g)]
        if all(v.denominator == 1 for v in x):
            pt = tuple(int(v) for v in x)
            if not p.contains(pt):
                return False
    return True
