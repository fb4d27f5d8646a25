"""End-to-end acceptance suite.

Each test covers one acceptance criterion, enforces its runtime budget,
and prints a single PASS/FAIL line (run with -s to see them live).
"""

import itertools
import json
import random
import time

from maxord.algebras import (
    Algebra,
    matrix_algebra,
    poly_quotient_algebra,
    quaternion_algebra,
)
from maxord.cli import main
from maxord.exactlin import Lattice, Matrix, lattice_index
from maxord.errors import NotIntegral
from maxord.orders import (
    Order,
    discriminant,
    is_maximal_at_p,
    lattice_product,
    maximal_order,
    p_maximal_order,
    radical_mod_p,
    two_sided_ideals_over_p,
)
from maxord.rings import ZZ, Frac, poly_ring
from maxord.serre import (
    IsogenyFactor,
    IsogenyType,
    ModulePresentation,
    PeriodLattice,
    check_naturality,
    minimal_isogeny,
    tensor_dimension,
    tensor_isogeny_class,
    tensor_lattice,
)

HALF = Frac(ZZ, 1, 2)
RATIONAL = Algebra(ZZ, [[[1]]], [1], trusted_semisimple=True)


def report(num, label, ok, budget, elapsed):
    line = "%s criterion %d: %s (%.2fs / budget %.0fs)" % (
        "PASS" if ok else "FAIL", num, label, elapsed, budget)
    print(line)
    assert ok, line
    assert elapsed < budget, line


def upper_triangular_order():
    table = [
        [[1, 0, 0], [0, 1, 0], [0, 0, 0]],
        [[0, 0, 0], [0, 0, 0], [0, 1, 0]],
        [[0, 0, 0], [0, 0, 0], [0, 0, 1]],
    ]
    alg = Algebra(ZZ, table, [1, 0, 1], basis_names=["e11", "e12", "e22"])
    return Order(alg, Lattice.standard(ZZ, 3))


def quadratic_order(d):
    alg = poly_quotient_algebra(
        ZZ, [Frac.of(ZZ, -d), Frac.of(ZZ, 0), Frac.of(ZZ, 1)],
        trusted_semisimple=True)
    return Order(alg, Lattice.standard(ZZ, 2))


def regular_period_lattice(order, prime="generic"):
    alg = order.algebra
    action = [alg.left_mul_matrix(alg.element(order.bmat.rows[i]))
              for i in range(order.dim)]
    return PeriodLattice(order, order.lattice, action, prime=prime)


def squarefree(d):
    if d in (0, 1):
        return False
    k = 2
    while k * k <= abs(d):
        if abs(d) % (k * k) == 0:
            return False
        k += 1
    return True


def brute_force_maximal_order(order, primes):
    """Independent oracle: enumerate all index-p superlattices, keep the
    unital ring-closed ones, repeat until stable."""
    alg = order.algebra
    n = order.dim
    cur = order
    changed = True
    while changed:
        changed = False
        for p in primes:
            for vec_mod in itertools.product(range(p), repeat=n):
                if all(v == 0 for v in vec_mod):
                    continue
                extra = [Frac(ZZ, v, p) for v in vec_mod]
                amb = (Matrix(ZZ, [extra], n) * cur.bmat).rows[0]
                lat = Lattice.from_rows(ZZ, list(cur.bmat.rows) + [amb], n)
                if lat == cur.lattice:
                    continue
                cand = Order(alg, lat, validate=False)
                try:
                    cand.structure_constants()
                except NotIntegral:
                    continue
                if cand.order_coords(alg.one().coords) is None:
                    continue
                cur = cand
                changed = True
                break
            if changed:
                break
    return cur


def test_criterion_1_golden_vectors():
    start = time.monotonic()
    o = upper_triangular_order()
    alg = o.algebra
    itype = IsogenyType([IsogenyFactor("E", 1, RATIONAL, 2)])
    emb = Matrix(ZZ, [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1]], 4)
    e11, e12, e22 = (alg.basis_element(i) for i in range(3))
    got = []
    for alpha in ([[e11]], [[e22]], [[e12], [e22]]):
        res = tensor_isogeny_class(ModulePresentation(o, alpha), itype, emb)
        got.append((res.factors[0].mult, tensor_dimension(res)))
    ok = got == [(1, 1), (1, 1), (0, 0)]
    report(1, "golden multiplicity/dimension vectors", ok,
           1.0, time.monotonic() - start)


def test_criterion_2_quadratic_oracle_sweep():
    start = time.monotonic()
    ok = True
    for d in range(-50, 51):
        if not squarefree(d):
            continue
        order = quadratic_order(d)
        mine = maximal_order(order)
        primes = sorted({p for p, _ in ZZ.factor(discriminant(order))})
        oracle = brute_force_maximal_order(order, primes)
        if mine.lattice != oracle.lattice:
            ok = False
            break
    report(2, "quadratic sweep vs. superlattice oracle", ok,
           30.0, time.monotonic() - start)


def test_criterion_3_quaternion_fixture():
    start = time.monotonic()
    alg = quaternion_algebra(ZZ, -1, -1)
    lip = Order(alg, Lattice.standard(ZZ, 4))
    out = maximal_order(lip)
    index = lattice_index(lip.lattice, out.lattice)
    ok = (
        index == 2
        and out.lattice.contains_vector([HALF, HALF, HALF, HALF])
        and is_maximal_at_p(out, 2)["verdict"]
        and discriminant(lip) == discriminant(out) * index * index
    )
    report(3, "Lipschitz-to-Hurwitz saturation", ok,
           5.0, time.monotonic() - start)


def test_criterion_4_inseparable_fixture():
    start = time.monotonic()
    ring = poly_ring(2)
    t = ring.canonical((0, 1))
    field = poly_quotient_algebra(ring, [t, ring.zero, ring.one],
                                  trusted_semisimple=True)
    sub = Order(field, Lattice.from_rows(
        ring, [[Frac.of(ring, ring.one), Frac.of(ring, ring.zero)],
               [Frac.of(ring, ring.zero), Frac.of(ring, t)]], 2))
    out = p_maximal_order(sub, t)
    ok = (out.lattice == Lattice.standard(ring, 2)
          and is_maximal_at_p(out, t)["verdict"])
    report(4, "inseparable F2[t] saturation at t", ok,
           1.0, time.monotonic() - start)


def test_criterion_5_ideal_power_law():
    start = time.monotonic()

    def is_power_law(order, p):
        if not is_maximal_at_p(order, p)["verdict"]:
            return False
        alg = order.algebra
        rad = radical_mod_p(order, p)
        p_lat = order.lattice.scaled(Frac.of(alg.ring, p))
        powers = [order.lattice]
        cur = order.lattice
        for _ in range(order.dim + 1):
            cur = lattice_product(alg, cur, rad.lattice).add(
                Lattice.from_rows(alg.ring, p_lat.basis.rows,
                                  order.dim))
            if cur == powers[-1]:
                break
            powers.append(cur)
        ideals = {i.lattice for i in two_sided_ideals_over_p(order, p)}
        return ideals == set(powers)

    m2 = Order(matrix_algebra(ZZ, 2), Lattice.standard(ZZ, 4))
    zi = quadratic_order(-1)
    hur = p_maximal_order(Order(quaternion_algebra(ZZ, -1, -1),
                                Lattice.standard(ZZ, 4)), 2)
    ring2 = poly_ring(2)
    t = ring2.canonical((0, 1))
    f2t = Order(
        poly_quotient_algebra(ring2, [t, ring2.zero, ring2.one],
                              trusted_semisimple=True),
        Lattice.standard(ring2, 2))
    ring_of_int_cases = [
        (maximal_order(quadratic_order(-3)), 3),
        (maximal_order(quadratic_order(5)), 5),
        (maximal_order(quadratic_order(-2)), 2),
    ]
    fixtures = (
        [(m2, 2), (m2, 3), (m2, 5), (zi, 2), (zi, 3), (hur, 2), (f2t, t)]
        + ring_of_int_cases
    )
    assert len(fixtures) == 10
    ok = all(is_power_law(o, p) for o, p in fixtures)
    report(5, "two-sided ideals are radical powers (10 fixtures)", ok,
           10.0, time.monotonic() - start)


def _functor_fixture_z():
    """Z acting on the rank-2 period lattice of a generic elliptic curve."""
    o = Order(matrix_algebra(ZZ, 1), Lattice.standard(ZZ, 1))
    t = PeriodLattice(o, Lattice.standard(ZZ, 2), [Matrix.identity(ZZ, 2)])
    itype = IsogenyType([IsogenyFactor("E", 1, RATIONAL, 1)])
    emb = Matrix(ZZ, [[1]], 1)
    return o, t, itype, emb


def _functor_fixture_gaussian():
    """Z[i] acting on itself: a CM elliptic curve."""
    o = quadratic_order(-1)
    t = regular_period_lattice(o)
    itype = IsogenyType([IsogenyFactor("E", 1, o.algebra, 1)])
    emb = Matrix.identity(ZZ, 2)
    return o, t, itype, emb


def _functor_fixture_upper_triangular():
    """The upper-triangular order acting block-wise on the rank-4 period
    lattice of E x E (no CM)."""
    o = upper_triangular_order()
    mats = {
        0: [[1, 0], [0, 0]],  # e11
        1: [[0, 1], [0, 0]],  # e12
        2: [[0, 0], [0, 1]],  # e22
    }
    action = []
    for b in range(3):
        m = mats[b]
        rows = [[0] * 4 for _ in range(4)]
        # column action on (x_0, x_1), x_w in Z^2:
        # coords(b·v)[2u+i] = sum_w m[u][w]·coords(v)[2w+i]
        for u in range(2):
            for w in range(2):
                for i in range(2):
                    rows[2 * w + i][2 * u + i] = m[u][w]
        action.append(Matrix(ZZ, rows, 4))
    t = PeriodLattice(o, Lattice.standard(ZZ, 4), action)
    itype = IsogenyType([IsogenyFactor("E", 1, RATIONAL, 2)])
    emb = Matrix(ZZ, [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1]], 4)
    return o, t, itype, emb


def test_criterion_6_functor_property_suite():
    start = time.monotonic()
    rng = random.Random(20240826)
    fixtures = [
        _functor_fixture_z(),
        _functor_fixture_gaussian(),
        _functor_fixture_upper_triangular(),
    ]
    count = 0
    ok = True

    def random_presentation(o, r, s):
        alg = o.algebra
        alpha = [
            [alg.element([Frac.of(ZZ, rng.randint(-3, 3))
                          for _ in range(alg.dim)]) for _ in range(s)]
            for _ in range(r)
        ]
        return ModulePresentation(o, alpha, s=s)

    for o, t, itype, emb in fixtures:
        rho = t.lattice.rank
        binv = t.lattice.basis.inverse()
        for _ in range(34):
            count += 1
            r, s = rng.randint(0, 2), rng.randint(1, 2)
            pres = random_presentation(o, r, s)
            out, divisors = tensor_lattice(pres, t)
            # (e) lattice rank doubles the class dimension
            res = tensor_isogeny_class(pres, itype, emb)
            if out.lattice.rank != 2 * tensor_dimension(res):
                ok = False
            # (b) right-exactness: the tensored relations die in the
            # quotient, and the projection hits all of it
            rel_rows = []
            for ti in range(pres.r):
                for a in range(rho):
                    tau = Matrix(ZZ, [t.lattice.basis.rows[a]], rho)
                    row = []
                    for u in range(pres.s):
                        row.extend((tau * t.act(pres.alpha[ti][u])
                                    * binv).rows[0])
                    rel_rows.append(row)
            if rel_rows:
                pushed = Matrix(ZZ, rel_rows, pres.s * rho) * out.projection
                if any(any(x for x in row) for row in pushed.rows):
                    ok = False
            if out.projection.rank() != out.lattice.rank:
                ok = False
            # (a) torsion modules give rank zero
            rel = pres.relation_matrix()
            if rel.nrows and rel.rank() == pres.s * o.dim:
                if out.lattice.rank != 0:
                    ok = False
            # (d) rationally invertible maps give finite cokernels whose
            # size matches an independent HNF index computation
            if out.lattice.rank == 0 and rel_rows:
                image = Lattice.from_rows(ZZ, rel_rows, pres.s * rho)
                prod = 1
                for dv in divisors:
                    prod *= abs(dv)
                if (image.rank != pres.s * rho
                        or prod != lattice_index(
                            image, Lattice.standard(ZZ, pres.s * rho))):
                    ok = False
            # (c) naturality against a scalar multiplication map
            c = rng.randint(1, 4)
            scal = o.algebra.one().scaled(Frac.of(ZZ, c))
            phi = [[scal if i == j else o.algebra.zero()
                    for j in range(pres.s)] for i in range(pres.s)]
            if not check_naturality(pres, pres, phi, t):
                ok = False
    assert count >= 100
    report(6, "functor property suite (%d presentations)" % count, ok,
           60.0, time.monotonic() - start)


def test_criterion_7_minimal_isogeny_chains():
    start = time.monotonic()
    itype = IsogenyType([IsogenyFactor("E", 1, RATIONAL, 1)])
    ok = True

    def chain_check(o, o_mid, o_top):
        nonlocal ok
        if not (o_top.lattice.contains_lattice(o_mid.lattice)
                and o_mid.lattice.contains_lattice(o.lattice)):
            ok = False
            return
        t = regular_period_lattice(o)
        full = minimal_isogeny(o, o_top, itype, [t])
        first = minimal_isogeny(o, o_mid, itype, [t])
        # continue from the saturated middle lattice
        alg = o.algebra
        cur = t.lattice
        while True:
            rows = list(cur.basis.rows)
            for b in o_mid.basis_elements():
                rows.extend((cur.basis * t.act(b)).rows)
            nxt = Lattice.from_rows(ZZ, rows, cur.ambient_dim)
            if nxt == cur:
                break
            cur = nxt
        action = [alg.left_mul_matrix(alg.element(o_mid.bmat.rows[i]))
                  for i in range(o_mid.dim)]
        t_mid = PeriodLattice(o_mid, cur, action)
        second = minimal_isogeny(o_mid, o_top, itype, [t_mid])
        if full.degree != first.degree * second.degree:
            ok = False

    # quadratic conductor chains
    for d in (-1, -3, 5):
        top = maximal_order(quadratic_order(d))
        alg = top.algebra
        for f in (2, 3):
            mid_rows = [[1, 0]] + [
                [x * f for x in top.lattice.basis.rows[1]]]
            bot_rows = [[1, 0]] + [
                [x * f * f for x in top.lattice.basis.rows[1]]]
            o_mid = Order(alg, Lattice.from_rows(ZZ, mid_rows, 2))
            o_bot = Order(alg, Lattice.from_rows(ZZ, bot_rows, 2))
            chain_check(o_bot, o_mid, top)

    # matrix-algebra conductor chain Z + 4M ⊆ Z + 2M ⊆ M = Mat2(Z)
    m2 = matrix_algebra(ZZ, 2)
    top = Order(m2, Lattice.standard(ZZ, 4))

    def conductor_order(f):
        rows = [[1, 0, 0, 1]]
        for i in range(4):
            rows.append([f if j == i else 0 for j in range(4)])
        return Order(m2, Lattice.from_rows(ZZ, rows, 4))

    chain_check(conductor_order(4), conductor_order(2), top)
    report(7, "minimal-isogeny degree multiplicativity", ok,
           10.0, time.monotonic() - start)


def test_criterion_8_negative_controls(tmp_path, capsys):
    start = time.monotonic()
    docs = [
        {
            "algebra": {"poly_quotient": {"modulus": "x^2+3"}},
            "basis": [["1", "0"], ["0", "1"]],
        },
        {
            "algebra": {"matrix": {"n": 2}},
            "basis": [["1", "0", "0", "1"], ["5", "0", "0", "0"],
                      ["0", "5", "0", "0"], ["0", "0", "5", "0"]],
        },
    ]
    codes = []
    failing = []
    for i, doc in enumerate(docs):
        path = tmp_path / ("neg%d.json" % i)
        path.write_text(json.dumps(doc))
        codes.append(main(["certify", str(path)]))
        failing.append(json.loads(capsys.readouterr().out)["failing_prime"])
    # rad^2 = 2·rad in the non-maximal order Z[sqrt(-3)]
    o = quadratic_order(-3)
    rad = radical_mod_p(o, 2)
    rad_sq = lattice_product(o.algebra, rad.lattice, rad.lattice)
    ok = (codes == [2, 2] and failing == ["2", "5"]
          and rad_sq == rad.lattice.scaled(Frac.of(ZZ, 2)))
    with capsys.disabled():
        report(8, "negative controls (exit 2, rad^2 = 2·rad)", ok,
               10.0, time.monotonic() - start)
