import itertools

from hypothesis import given, settings, strategies as st

from maxord.exactlin import (
    Lattice,
    Matrix,
    hnf,
    lattice_index,
    saturate,
    snf,
    snf_divisors,
)
from maxord.errors import NotSublattice, RankDeficient
from maxord.rings import ZZ, Frac, poly_ring

F2T = poly_ring(2)

small_int = st.integers(min_value=-9, max_value=9)


def int_matrix(nr, nc):
    return st.lists(
        st.lists(small_int, min_size=nc, max_size=nc),
        min_size=nr, max_size=nr,
    ).map(lambda rows: Matrix(ZZ, rows, nc))


dims = st.tuples(st.integers(1, 4), st.integers(1, 4))


def random_unimodular(rng_rows, n):
    """Build a unimodular matrix from shear generators encoded by rows."""
    m = Matrix.identity(ZZ, n)
    for (i, j, c) in rng_rows:
        i, j = i % n, j % n
        if i == j:
            continue
        shear = Matrix.identity(ZZ, n).to_ring_rows()
        shear[i][j] = c
        m = m * Matrix(ZZ, shear, n)
    return m


class TestHnf:
    def test_identity(self):
        m = Matrix.identity(ZZ, 2)
        h, u = hnf(m)
        assert h == m and u == m

    def test_hand_example(self):
        h, _ = hnf(Matrix(ZZ, [[2, 4], [6, 8]], 2))
        assert h == Matrix(ZZ, [[2, 0], [0, 4]], 2)

    def test_poly_diagonal(self):
        t = Frac.of(F2T, (0, 1))
        m = Matrix(F2T, [[t, 0], [0, t]], 2)
        h, _ = hnf(m)
        assert h == m

    @settings(max_examples=60, deadline=None)
    @given(dims.flatmap(lambda d: int_matrix(*d)),
           st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3),
                              st.integers(-3, 3)), max_size=6))
    def test_canonicity_under_unimodular(self, m, shears):
        u = random_unimodular(shears, m.nrows) if m.nrows else None
        h1, u1 = hnf(m)
        assert u1 * m == h1
        if u is not None:
            h2, _ = hnf(u * m)
            assert h1 == h2

    @settings(max_examples=40, deadline=None)
    @given(dims.flatmap(lambda d: int_matrix(*d)))
    def test_transform_unimodular(self, m):
        _, u = hnf(m)
        det = u.det()
        assert det.integral_value() in (1, -1)


class TestSnf:
    def test_gcd_lcm(self):
        s, _, _ = snf(Matrix(ZZ, [[2, 0], [0, 3]], 2))
        assert s == Matrix(ZZ, [[1, 0], [0, 6]], 2)

    def test_zero(self):
        m = Matrix(ZZ, [[0, 0], [0, 0]], 2)
        s, _, _ = snf(m)
        assert s == m

    def test_unimodular_input(self):
        s, _, _ = snf(Matrix.identity(ZZ, 2))
        assert s == Matrix.identity(ZZ, 2)

    @settings(max_examples=80, deadline=None)
    @given(dims.flatmap(lambda d: int_matrix(*d)))
    def test_reconstruction_and_chain(self, m):
        s, u, v = snf(m)
        assert u * m * v == s
        assert u.det().integral_value() in (1, -1)
        assert v.det().integral_value() in (1, -1)
        diag = [s.rows[i][i] for i in range(min(m.nrows, m.ncols))]
        for a, b in zip(diag, diag[1:]):
            if a.is_zero():
                assert b.is_zero()
            elif not b.is_zero():
                assert b.integral_value() % a.integral_value() == 0
        for i in range(m.nrows):
            for j in range(m.ncols):
                if i != j:
                    assert s.rows[i][j].is_zero()

    def test_regression_gcd_step_terminates(self):
        # formerly looped forever: the gcd step could swap pivot and entry
        # without progress when one already divided the other
        m = Matrix(ZZ, [[-1, -1, 2, 0], [3, -1, 0, 2],
                        [1, -1, 1, 1], [3, 1, -3, 1]], 4)
        s, u, v = snf(m)
        assert u * m * v == s
        diag = [s.rows[i][i].integral_value() for i in range(4)]
        for a, b in zip(diag, diag[1:]):
            if a:
                assert b % a == 0

    def test_divisors_poly(self):
        t = Frac.of(F2T, (0, 1))
        m = Matrix(F2T, [[t, 0], [0, t * t]], 2)
        assert snf_divisors(m) == [(0, 1), (0, 0, 1)]


class TestLattice:
    def test_canonical_equality(self):
        a = Lattice.from_rows(ZZ, [[2, 0], [1, 1]], 2)
        b = Lattice.from_rows(ZZ, [[1, 1], [0, 2]], 2)
        assert a == b

    def test_denominators(self):
        half = Frac(ZZ, 1, 2)
        lat = Lattice.from_rows(ZZ, [[half, half], [0, 1]], 2)
        assert lat.contains_vector([half, half])
        assert not lat.contains_vector([half, 0])

    def test_saturate_examples(self):
        amb = Lattice.standard(ZZ, 2)
        assert saturate(Lattice.from_rows(ZZ, [[2, 0], [0, 2]], 2), amb) == amb
        assert saturate(Lattice.from_rows(ZZ, [[2, 0], [1, 1]], 2), amb) == amb
        assert saturate(amb, amb) == amb

    def test_saturate_idempotent(self):
        amb = Lattice.standard(ZZ, 3)
        lat = Lattice.from_rows(ZZ, [[2, 4, 6], [0, 10, 5], [0, 0, 7]], 3)
        once = saturate(lat, amb)
        assert saturate(once, amb) == once

    def test_saturate_rank_deficient(self):
        amb = Lattice.standard(ZZ, 2)
        try:
            saturate(Lattice.from_rows(ZZ, [[1, 1]], 2), amb)
        except RankDeficient:
            pass
        else:
            raise AssertionError("expected RankDeficient")

    def test_index_examples(self):
        sup = Lattice.standard(ZZ, 2)
        assert lattice_index(Lattice.from_rows(ZZ, [[2, 0], [0, 2]], 2), sup) == 4
        assert lattice_index(sup, sup) == 1
        assert lattice_index(Lattice.from_rows(ZZ, [[1, 0], [0, 3]], 2), sup) == 3

    def test_index_non_sublattice(self):
        sup = Lattice.from_rows(ZZ, [[2, 0], [0, 2]], 2)
        try:
            lattice_index(Lattice.standard(ZZ, 2), sup)
        except NotSublattice:
            pass
        else:
            raise AssertionError("expected NotSublattice")

    @settings(max_examples=25, deadline=None)
    @given(st.lists(st.lists(st.integers(-4, 4), min_size=2, max_size=2),
                    min_size=2, max_size=2))
    def test_index_matches_quotient_count(self, rows):
        m = Matrix(ZZ, rows, 2)
        if m.det().is_zero():
            return
        sub = Lattice.from_rows(ZZ, rows, 2)
        idx = lattice_index(sub, Lattice.standard(ZZ, 2))
        if idx > 24:
            return
        # brute-force coset count: scan a box large enough to meet every coset
        seen = []
        for x, y in itertools.product(range(idx), repeat=2):
            if all(not sub.contains_vector([x - px, y - py]) for px, py in seen):
                seen.append((x, y))
        assert len(seen) == idx

    def test_dual_inverse_transpose(self):
        lat = Lattice.from_rows(ZZ, [[2, 1], [0, 3]], 2)
        dual = lat.dual()
        for x in lat.basis.rows:
            for y in dual.basis.rows:
                dot = sum(a * b for a, b in zip(x, y))
                assert dot.is_integral()


class TestCharpoly:
    def test_companion(self):
        m = Matrix(ZZ, [[0, 1], [1, 0]], 2)
        cp = m.charpoly()
        assert [str(c) for c in cp] == ["-1", "0", "1"]

    @settings(max_examples=40, deadline=None)
    @given(st.lists(st.lists(small_int, min_size=3, max_size=3),
                    min_size=3, max_size=3))
    def test_det_and_trace_coefficients(self, rows):
        m = Matrix(ZZ, rows, 3)
        cp = m.charpoly()
        # constant term = (-1)^n det; next-to-top coefficient = -trace
        assert cp[0] == -m.det()
        assert cp[2] == -m.trace()
        assert str(cp[3]) == "1"
