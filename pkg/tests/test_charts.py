import random
from itertools import product

from conftest import (
    a1_singularity_fan,
    a2_fan,
    p1_fan,
    p2_fan,
    random_stacky,
    zoo_fans,
)

from toristack.cones import Cone
from toristack.charts import (
    boundary_divisors,
    cycle_ideal_in_chart,
    is_deligne_mumford,
    is_kummer_etale_chart,
    local_chart,
    split_cone,
    stabilizer,
)
from toristack.linalg import IntegerMatrix, smith_normal_form
from toristack.stackyfan import StackyFan, is_tame, stacky_multiplicity, validate_fan


def ray_fan(level=1):
    return StackyFan.build(validate_fan([(1,)], [[0]]), {0: level})


# -- splitting -------------------------------------------------------------------

def test_split_full_dimensional():
    n1, n2 = split_cone(Cone.from_generators([(1, 0), (1, 2)], 2))
    assert n1 == [(1, 0), (0, 1)]
    assert n2 == []


def test_split_plane_cone_in_3d():
    n1, n2 = split_cone(Cone.from_generators([(1, 1, 0), (1, -1, 0)], 3))
    assert n1 == [(1, 0, 0), (0, 1, 0)]
    assert n2 == [(0, 0, 1)]
    stacked = IntegerMatrix.from_rows([list(v) for v in n1 + n2])
    assert abs(stacked.determinant()) == 1


def test_split_zero_cone():
    n1, n2 = split_cone(Cone.from_generators([], 3))
    assert n1 == []
    assert len(n2) == 3
    assert abs(IntegerMatrix.from_rows([list(v) for v in n2]).determinant()) == 1


def test_split_random_direct_sum():
    rng = random.Random(4242)
    for _ in range(40):
        d = rng.randint(1, 4)
        k = rng.randint(1, d)
        vecs = [[rng.randint(-4, 4) for _ in range(d)] for _ in range(k)]
        c = Cone.from_generators(vecs, d)
        if not c.strictly_convex or not c.rays:
            continue
        n1, n2 = split_cone(c)
        stacked = IntegerMatrix.from_rows([list(v) for v in list(n1) + list(n2)])
        assert abs(stacked.determinant()) == 1


# -- local charts ------------------------------------------------------------------

def test_smooth_chart_is_plain_affine_space():
    sf = StackyFan.build(a2_fan(), {})
    chart = local_chart(sf, [0, 1])
    assert chart.r == 2 and chart.torus_rank == 0
    assert chart.group.is_trivial
    assert chart.action_weights == ((), ())
    assert chart.group_label == "trivial"


def test_a1_chart_weights():
    sf = StackyFan.build(a1_singularity_fan(), {})
    chart = local_chart(sf, [0, 1])
    assert chart.r == 2
    assert chart.group.invariant_factors == (2,)
    # both coordinates carry the nontrivial character of Z/2: a zero weight
    # would leave a coordinate invariant, contradicting R[P] = R[F]^G
    assert chart.action_weights == ((1,), (1,))


def test_ray_level_three_chart():
    chart = local_chart(ray_fan(3), [0])
    assert chart.r == 1
    assert chart.group.invariant_factors == (3,)
    assert chart.action_weights == ((1,),)
    assert chart.group_label == "mu_3"


def test_zero_cone_chart_is_torus():
    sf = StackyFan.build(a1_singularity_fan(), {})
    chart = local_chart(sf, [])
    assert chart.r == 0 and chart.torus_rank == 2
    assert chart.group.is_trivial


def test_lower_dimensional_cone_chart():
    fan = validate_fan([(1, 0, 0), (0, 1, 0)], [[0, 1]])
    sf = StackyFan.build(fan, {0: 2})
    chart = local_chart(sf, [0, 1])
    assert chart.r == 2 and chart.torus_rank == 1
    assert chart.group.invariant_factors == (2,)


# -- stabilizers -------------------------------------------------------------------

def test_stabilizer_zero_cone_trivial():
    sf = StackyFan.build(p2_fan(), {})
    assert stabilizer(sf, []).is_trivial


def test_stabilizer_a1():
    sf = StackyFan.build(a1_singularity_fan(), {})
    g = stabilizer(sf, [0, 1])
    assert g.invariant_factors == (2,)
    assert g.order == stacky_multiplicity(sf, [0, 1]) == 2


def test_stabilizer_ray_level():
    g = stabilizer(ray_fan(3), [0])
    assert g.invariant_factors == (3,)


def test_stabilizer_formula_random():
    rng = random.Random(321)
    for fan in zoo_fans():
        sf = random_stacky(rng, fan)
        for c in fan.cones:
            assert stabilizer(sf, c).order == stacky_multiplicity(sf, c)


def test_stabilizer_divides_up_the_face_lattice():
    rng = random.Random(654)
    for fan in zoo_fans():
        sf = random_stacky(rng, fan)
        for c in fan.cones:
            big = stabilizer(sf, c).order
            for tau in fan.cones:
                if set(tau) <= set(c):
                    assert big % stabilizer(sf, tau).order == 0


def test_weights_generate_group():
    rng = random.Random(987)
    for fan in zoo_fans():
        sf = random_stacky(rng, fan)
        for c in fan.maximal_cones:
            chart = local_chart(sf, c)
            factors = chart.group.invariant_factors
            if not factors:
                continue
            # subgroup generated by the weights is everything iff stacking
            # the relations diag(d_k) with the weight columns has cokernel 0
            cols = [[d if i == j else 0 for i, _ in enumerate(factors)]
                    for j, d in enumerate(factors)]
            cols += [list(w) for w in chart.action_weights]
            m = IntegerMatrix.from_columns(cols, rows=len(factors))
            s, _, _ = smith_normal_form(m)
            diag = [s.entry(i, i) for i in range(len(factors))]
            assert all(x == 1 for x in diag), (c, chart.action_weights)


def test_invariant_monomials_are_exactly_p():
    # monomials of F fixed by every character are the images of P elements
    rng = random.Random(135)
    from toristack.monoids import admissible_resolution, monoid_from_cone
    from conftest import random_full_cone_rays
    degree = 6
    for _ in range(10):
        d = rng.randint(1, 2)
        fan_rays = random_full_cone_rays(rng, d, 3)
        try:
            fan = validate_fan(fan_rays, [list(range(d))])
        except Exception:
            continue
        sf = random_stacky(rng, fan, max_level=3)
        chart = local_chart(sf, list(range(d)))
        p = monoid_from_cone(fan.cone_geometry(tuple(range(d))))
        res = admissible_resolution(
            p, dict(zip(p.defining_cone.rays, chart.levels)))
        factors = chart.group.invariant_factors
        image = {tuple(int(x) for x in res.coordinates(h)) for h in p.hilbert_basis}

        def monoid_member(vec):
            # membership in the submonoid generated by the P images
            target = list(vec)
            stack = [(0, tuple(target))]
            seenv = set()
            while stack:
                idx, rest = stack.pop()
                if all(x == 0 for x in rest):
                    return True
                if rest in seenv:
                    continue
                seenv.add(rest)
                for g in image:
                    nxt = tuple(a - b for a, b in zip(rest, g))
                    if all(x >= 0 for x in nxt):
                        stack.append((0, nxt))
            return False

        for monomial in product(range(degree + 1), repeat=chart.r):
            if sum(monomial) > degree:
                continue
            fixed = all(
                sum(w[k] * monomial[i] for i, w in enumerate(chart.action_weights))
                % factors[k] == 0
                for k in range(len(factors)))
            assert fixed == monoid_member(monomial), (fan_rays, monomial)


# -- tameness flags ----------------------------------------------------------------

def test_dm_examples():
    smooth = StackyFan.build(a2_fan(), {})
    assert is_deligne_mumford(smooth, [2, 3, 5])
    sfa1 = StackyFan.build(a1_singularity_fan(), {})
    assert not is_deligne_mumford(sfa1, [2])
    assert is_deligne_mumford(sfa1, [0])


def test_dm_equals_tame_random():
    rng = random.Random(246)
    for fan in zoo_fans():
        for _ in range(3):
            sf = random_stacky(rng, fan)
            chars = rng.sample([0, 2, 3, 5, 7], k=rng.randint(1, 3))
            assert is_deligne_mumford(sf, chars) == is_tame(sf, chars)


def test_kummer_etale_chart():
    trivial = local_chart(StackyFan.build(a2_fan(), {}), [0, 1])
    assert is_kummer_etale_chart(trivial, [2, 3])
    two = local_chart(StackyFan.build(a1_singularity_fan(), {}), [0, 1])
    assert not is_kummer_etale_chart(two, [2])
    assert is_kummer_etale_chart(two, [5])
    six = local_chart(StackyFan.build(p1_fan(), {0: 6}), [0])
    assert is_kummer_etale_chart(six, [5])
    assert not is_kummer_etale_chart(six, [3])


# -- cycle coordinates ---------------------------------------------------------------

def test_cycle_coordinates_single_ray():
    sf = StackyFan.build(a2_fan(), {})
    chart = local_chart(sf, [0, 1])
    coords = cycle_ideal_in_chart(sf, [0], [0, 1])
    assert len(coords) == 1
    assert chart.fan_rays[coords[0]] == 0


def test_cycle_coordinates_full_cone():
    sf = StackyFan.build(a1_singularity_fan(), {})
    assert cycle_ideal_in_chart(sf, [0, 1], [0, 1]) == [0, 1]


def test_cycle_coordinates_zero_cone():
    sf = StackyFan.build(a1_singularity_fan(), {})
    assert cycle_ideal_in_chart(sf, [], [0, 1]) == []


def test_boundary_divisors_p1():
    sf = StackyFan.build(p1_fan(), {})
    table = boundary_divisors(sf)
    assert len(table) == 2
    for entry in table:
        assert len(entry["chart_coordinates"]) == 1
        assert set(entry["chart_coordinates"].values()) == {0}


def test_boundary_divisors_p2():
    sf = StackyFan.build(p2_fan(), {})
    table = boundary_divisors(sf)
    assert len(table) == 3
    for entry in table:
        # each ray lies in exactly two of the three maximal cones
        assert len(entry["chart_coordinates"]) == 2
    per_chart = {}
    for entry in table:
        for cone_key, coord in entry["chart_coordinates"].items():
            per_chart.setdefault(cone_key, []).append(coord)
    assert all(sorted(v) == [0, 1] for v in per_chart.values())


def test_boundary_divisors_p1_levels():
    sf = StackyFan.build(p1_fan(), {0: 2, 1: 3})
    table = boundary_divisors(sf)
    assert [e["level"] for e in table] == [2, 3]
    assert stabilizer(sf, [0]).invariant_factors == (2,)
    assert stabilizer(sf, [1]).invariant_factors == (3,)


def test_correspondence_cardinalities_every_chart():
    rng = random.Random(777)
    for fan in zoo_fans():
        sf = random_stacky(rng, fan)
        for c in fan.maximal_cones:
            chart = local_chart(sf, c)
            assert len(chart.fan_rays) == chart.r == len(c)
            assert sorted(chart.fan_rays) == list(c)
            assert len(chart.action_weights) == chart.r
