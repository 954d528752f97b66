"""Independent brute-force oracles used to freeze expected values.

Deliberately share no code with the library: membership tests run through a
local Gaussian solver, Hilbert bases come from exhaustive box enumeration,
cone membership from Fourier-Motzkin elimination, and quotient groups from
residue-class exploration keyed by fractional parts.
"""

from fractions import Fraction
from itertools import product


def solve_square(rows, rhs):
    """Gaussian elimination over Q; returns None when singular."""
    n = len(rows)
    a = [[Fraction(x) for x in row] + [Fraction(rhs[i])] for i, row in enumerate(rows)]
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col] != 0), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for i in range(n):
            if i != col and a[i][col] != 0:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    return [a[i][n] for i in range(n)]


def det(rows):
    """Determinant over Q by Gaussian elimination (no Bareiss)."""
    n = len(rows)
    a = [[Fraction(x) for x in row] for row in rows]
    result = Fraction(1)
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            result = -result
        result *= a[col][col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for i in range(col + 1, n):
            if a[i][col] != 0:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    return result


def box_hilbert_basis(ray_vectors, d):
    """Hilbert basis of a full-dimensional simplicial cone by box enumeration.

    Enumerates every lattice point of the closed fundamental parallelepiped
    {sum a_i v_i : 0 <= a_i <= 1} through its bounding box, then filters to
    irreducible elements by pairwise subtraction. Membership tests run on the
    integer adjugate so the box sweep stays cheap.
    """
    cols = [list(col) for col in zip(*ray_vectors)]  # matrix with ray columns
    dv = det(cols)
    assert dv != 0, "rays must be linearly independent and full-dimensional"
    # integer scaled inverse: row i of (det * cols^-1)
    scaled = []
    for i in range(d):
        unit = [Fraction(int(j == i)) for j in range(d)]
        col = solve_square(cols, unit)  # column i of the inverse
        scaled.append([x * dv for x in col])
    adj_rows = [[scaled[j][i] for j in range(d)] for i in range(d)]  # transpose back
    sign = 1 if dv > 0 else -1
    bound = abs(dv)

    def scaled_coords(x):
        # sign * det * (cone coordinates of x), all integers
        out = []
        for row in adj_rows:
            v = sum(a * b for a, b in zip(row, x))
            assert v.denominator == 1
            out.append(sign * v.numerator)
        return out

    lo = [sum(min(0, v[j]) for v in ray_vectors) for j in range(d)]
    hi = [sum(max(0, v[j]) for v in ray_vectors) for j in range(d)]
    candidates = set()
    for point in product(*(range(lo[j], hi[j] + 1) for j in range(d))):
        if all(x == 0 for x in point):
            continue
        if all(0 <= c <= bound for c in scaled_coords(point)):
            candidates.add(point)

    basis = []
    for h in sorted(candidates):
        reducible = False
        for g in candidates:
            if g == h:
                continue
            diff = tuple(a - b for a, b in zip(h, g))
            if any(diff):
                if all(c >= 0 for c in scaled_coords(diff)):
                    reducible = True
                    break
        if not reducible:
            basis.append(h)
    return basis


def fm_cone_contains(generators, v):
    """Feasibility of v = sum a_i g_i, a_i >= 0, by Fourier-Motzkin.

    Rows are (coefficients, bound) meaning coeffs . a <= bound.
    """
    n = len(generators)
    d = len(v)
    rows = []
    for i in range(n):
        coeffs = [Fraction(0)] * n
        coeffs[i] = Fraction(-1)
        rows.append((coeffs, Fraction(0)))
    for j in range(d):
        coeffs = [Fraction(generators[i][j]) for i in range(n)]
        rows.append((list(coeffs), Fraction(v[j])))
        rows.append(([-c for c in coeffs], Fraction(-v[j])))
    for var in range(n):
        pos, neg, rest = [], [], []
        for coeffs, bound in rows:
            c = coeffs[var]
            if c > 0:
                pos.append((coeffs, bound))
            elif c < 0:
                neg.append((coeffs, bound))
            else:
                rest.append((coeffs, bound))
        new_rows = rest
        for cp, bp in pos:
            for cn, bn in neg:
                scale_p, scale_n = -cn[var], cp[var]
                coeffs = [scale_p * a + scale_n * b for a, b in zip(cp, cn)]
                new_rows.append((coeffs, scale_p * bp + scale_n * bn))
        dedup = {}
        for coeffs, bound in new_rows:
            key = tuple(coeffs)
            if key not in dedup or bound < dedup[key]:
                dedup[key] = bound
        rows = [(list(k), b) for k, b in dedup.items()]
    return all(bound >= 0 for _, bound in rows)


def quotient_classes(square_cols):
    """Residue classes of Z^d modulo the column span of a nonsingular matrix.

    Classes are explored from 0 by unit steps; the canonical key of x is the
    tuple of fractional parts of the cone coordinates, which is constant on
    classes and distinct across them. Returns (class count, key function).
    """
    d = len(square_cols[0])
    rows = [list(r) for r in zip(*[list(c) for c in square_cols])]  # columns -> matrix

    def key(x):
        coords = solve_square(rows, list(x))
        return tuple(c - (c.numerator // c.denominator) for c in coords)

    seen = {key((0,) * d): (0,) * d}
    frontier = [(0,) * d]
    while frontier:
        nxt = []
        for x in frontier:
            for j in range(d):
                for step in (1, -1):
                    y = list(x)
                    y[j] += step
                    y = tuple(y)
                    k = key(y)
                    if k not in seen:
                        seen[k] = y
                        nxt.append(y)
        frontier = nxt
    return seen, key


def quotient_torsion_counts(square_cols, ks):
    """For each k in ks, the number of residue classes killed by k."""
    seen, key = quotient_classes(square_cols)
    zero = key(tuple(0 for _ in square_cols[0]))
    counts = {}
    for k in ks:
        counts[k] = sum(1 for rep in seen.values()
                        if key(tuple(k * x for x in rep)) == zero)
    return len(seen), counts
