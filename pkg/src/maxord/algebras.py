"""Finite-dimensional algebras over the fraction field, presented by
structure constants.

Coordinates are row vectors; for an element a, ``coords(a*x) =
coords(x) * Lmat(a)``.  The exported regular representation is the
transpose of Lmat, which makes it a homomorphism.
"""

import random

import sympy

from .errors import (
    AlgebraMismatch,
    BadIdempotents,
    InternalError,
    NeedsSuppliedIdempotents,
    NotSemisimple,
)
from .exactlin import Matrix
from .rings import Frac, frac0, frac1


def solve_left(B, vec):
    """Solve x * B = vec for a full-row-rank B; returns list of Frac or None."""
    ring = B.ring
    vec = [Frac.of(ring, v) for v in vec]
    bt = B.transpose()
    aug = bt.hstack(Matrix(ring, [[v] for v in vec], 1))
    red, pivots = aug.rref()
    if B.nrows in pivots:
        return None
    if pivots != list(range(B.nrows)):
        # rank-deficient B: a solution may still exist but is not unique;
        # callers always pass independent rows
        return None
    return [red.rows[i][B.nrows] for i in range(B.nrows)]


class Algebra:
    """A finite-dimensional unital associative algebra over Frac(R)."""

    def __init__(self, ring, mul_table, one_coords, basis_names=None,
                 trusted_semisimple=False, validate=True):
        self.ring = ring
        self.dim = len(mul_table)
        self.table = [
            [[Frac.of(ring, c) for c in mul_table[i][j]] for j in range(self.dim)]
            for i in range(self.dim)
        ]
        self.one_coords = [Frac.of(ring, c) for c in one_coords]
        self.basis_names = basis_names or ["b%d" % i for i in range(self.dim)]
        self.trusted_semisimple = trusted_semisimple
        self._lb = None
        self._rb = None
        if self.dim < 1:
            raise ValueError("algebra must have dim >= 1")
        if validate:
            self._validate()

    # -- internals ------------------------------------------------------------

    def _basis_mats(self):
        if self._lb is None:
            n = self.dim
            # Lb[j][i][k]: coefficient of b_k in b_j * b_i
            self._lb = [
                Matrix(self.ring, [self.table[j][i] for i in range(n)], n)
                for j in range(n)
            ]
            self._rb = [
                Matrix(self.ring, [self.table[i][j] for i in range(n)], n)
                for j in range(n)
            ]
        return self._lb, self._rb

    def _validate(self):
        n = self.dim
        one = self.element(self.one_coords)
        for i in range(n):
            b = self.basis_element(i)
            if (one * b).coords != b.coords or (b * one).coords != b.coords:
                raise ValueError("declared unit is not a two-sided identity")
        for i in range(n):
            for j in range(n):
                ij = self.mul_coords(self.basis_element(i).coords,
                                     self.basis_element(j).coords)
                for k in range(n):
                    left = self.mul_coords(ij, self.basis_element(k).coords)
                    jk = self.mul_coords(self.basis_element(j).coords,
                                         self.basis_element(k).coords)
                    right = self.mul_coords(self.basis_element(i).coords, jk)
                    if left != right:
                        raise ValueError(
                            "structure constants are not associative at "
                            "(%d, %d, %d)" % (i, j, k)
                        )

    # -- elements -------------------------------------------------------------

    def element(self, coords):
        return AlgebraElement(self, coords)

    def zero(self):
        return self.element([frac0(self.ring)] * self.dim)

    def one(self):
        return self.element(self.one_coords)

    def basis_element(self, i):
        coords = [frac0(self.ring)] * self.dim
        coords[i] = frac1(self.ring)
        return self.element(coords)

    def basis(self):
        return [self.basis_element(i) for i in range(self.dim)]

    def mul_coords(self, x, y):
        n = self.dim
        zero = frac0(self.ring)
        out = [zero] * n
        for i in range(n):
            xi = x[i]
            if not xi:
                continue
            ti = self.table[i]
            for j in range(n):
                yj = y[j]
                if not yj:
                    continue
                f = xi * yj
                row = ti[j]
                for k in range(n):
                    if row[k]:
                        out[k] = out[k] + f * row[k]
        return out

    # -- representations ------------------------------------------------------

    def left_mul_matrix(self, a):
        """Matrix M with coords(a*x) = coords(x) * M."""
        rows = [self.mul_coords(a.coords, self.basis_element(i).coords)
                for i in range(self.dim)]
        return Matrix(self.ring, rows, self.dim)

    def right_mul_matrix(self, a):
        rows = [self.mul_coords(self.basis_element(i).coords, a.coords)
                for i in range(self.dim)]
        return Matrix(self.ring, rows, self.dim)

    def regular_representation(self, a):
        """Left-multiplication operator as a homomorphism A -> Mat_dim(K)."""
        return self.left_mul_matrix(a).transpose()

    def trace(self, a):
        return self.left_mul_matrix(a).trace()

    def charpoly(self, a):
        return self.left_mul_matrix(a).charpoly()

    def min_poly(self, a):
        """Monic minimal polynomial coefficients, lowest degree first."""
        rows = [self.one().coords]
        power = self.one()
        while True:
            power = power * a
            mat = Matrix(self.ring, rows, self.dim)
            sol = solve_left(mat, power.coords)
            if sol is not None:
                return [-c for c in sol] + [frac1(self.ring)]
            rows.append(power.coords)

    def eval_poly(self, coeffs, a):
        """Evaluate a polynomial (lowest degree first) at element a."""
        acc = self.zero()
        power = self.one()
        for c in coeffs:
            c = Frac.of(self.ring, c)
            if c:
                acc = acc + power.scaled(c)
            power = power * a
        return acc

    # -- structure ------------------------------------------------------------

    def center(self):
        """Basis of the center, as a list of elements (rref-canonical)."""
        lb, rb = self._basis_mats()
        blocks = None
        for j in range(self.dim):
            d = Matrix(self.ring,
                       [[rb[j].rows[i][k] - lb[j].rows[i][k]
                         for k in range(self.dim)] for i in range(self.dim)],
                       self.dim)
            blocks = d if blocks is None else blocks.hstack(d)
        ker = blocks.row_kernel()
        red, _ = ker.rref()
        return [self.element(row) for row in red.rows if any(row)]

    def is_commutative(self):
        return len(self.center()) == self.dim

    def trace_gram(self):
        n = self.dim
        rows = []
        for i in range(n):
            bi = self.basis_element(i)
            row = []
            for j in range(n):
                row.append(self.trace(bi * self.basis_element(j)))
            rows.append(row)
        return Matrix(self.ring, rows, n)

    def is_separable_semisimple(self):
        """Nondegeneracy of the regular trace form; certifies the
        separable-semisimple property exactly."""
        return not self.trace_gram().det().is_zero()

    def check_idempotent_system(self, idems):
        one = self.one()
        acc = self.zero()
        for i, e in enumerate(idems):
            if e.algebra is not self:
                raise AlgebraMismatch("idempotent from a different algebra")
            for b in self.basis():
                if (e * b).coords != (b * e).coords:
                    raise BadIdempotents("idempotent %d is not central" % i)
            for j, f in enumerate(idems):
                prod = e * f
                want = e if i == j else self.zero()
                if prod.coords != want.coords:
                    raise BadIdempotents(
                        "idempotents %d, %d are not orthogonal idempotents" % (i, j)
                    )
            acc = acc + e
        if acc.coords != one.coords:
            raise BadIdempotents("idempotents do not sum to 1")

    def central_idempotents(self, seed=0):
        """Complete set of primitive central idempotents (characteristic 0)."""
        if self.ring.characteristic != 0:
            raise NeedsSuppliedIdempotents(
                "central idempotents must be supplied in characteristic p"
            )
        zbasis = self.center()
        dim_z = len(zbasis)
        if dim_z == 1:
            return [self.one()]
        rng = random.Random(seed)
        x = sympy.Symbol("x")
        for _ in range(64):
            z = self.zero()
            for zb in zbasis:
                z = z + zb.scaled(Frac.of(self.ring, rng.randint(-2, 2)))
            mp = self.min_poly(z)
            if len(mp) - 1 < dim_z:
                continue
            poly = sympy.Poly(
                [sympy.Rational(c.num, c.den) for c in reversed(mp)], x
            )
            _, factors = poly.factor_list()
            if any(e > 1 for _, e in factors):
                raise NotSemisimple(
                    "center has a non-squarefree minimal polynomial"
                )
            idems = []
            for f_i, _ in factors:
                g_i = sympy.exquo(poly, f_i)
                u, _, g = sympy.gcdex(g_i, f_i)
                if not g.is_one:
                    raise InternalError("min poly factors are not coprime")
                e_poly = (u * g_i).rem(poly)
                coeffs = list(reversed(e_poly.all_coeffs()))
                fr = [Frac(self.ring, int(sympy.numer(c)), int(sympy.denom(c)))
                      for c in coeffs]
                idems.append(self.eval_poly(fr, z))
            self.check_idempotent_system(idems)
            idems.sort(key=lambda e: [str(c) for c in e.coords])
            return idems
        raise InternalError("failed to find a primitive center element")


class AlgebraElement:
    __slots__ = ("algebra", "coords")

    def __init__(self, algebra, coords):
        self.algebra = algebra
        self.coords = [Frac.of(algebra.ring, c) for c in coords]
        if len(self.coords) != algebra.dim:
            raise ValueError("coordinate length mismatch")

    def _check(self, other):
        if not isinstance(other, AlgebraElement):
            raise TypeError("expected an algebra element")
        if other.algebra is not self.algebra:
            raise AlgebraMismatch("elements live in different algebras")

    def __add__(self, other):
        self._check(other)
        return AlgebraElement(
            self.algebra, [a + b for a, b in zip(self.coords, other.coords)]
        )

    def __sub__(self, other):
        self._check(other)
        return AlgebraElement(
            self.algebra, [a - b for a, b in zip(self.coords, other.coords)]
        )

    def __neg__(self):
        return AlgebraElement(self.algebra, [-a for a in self.coords])

    def scaled(self, c):
        c = Frac.of(self.algebra.ring, c)
        return AlgebraElement(self.algebra, [a * c for a in self.coords])

    def __mul__(self, other):
        self._check(other)
        return AlgebraElement(
            self.algebra, self.algebra.mul_coords(self.coords, other.coords)
        )

    def __pow__(self, n):
        acc = self.algebra.one()
        base = self
        while n:
            if n & 1:
                acc = acc * base
            base = base * base
            n >>= 1
        return acc

    def __eq__(self, other):
        return (
            isinstance(other, AlgebraElement)
            and other.algebra is self.algebra
            and other.coords == self.coords
        )

    def __hash__(self):
        return hash(tuple(self.coords))

    def is_zero(self):
        return all(not c for c in self.coords)

    def __repr__(self):
        terms = [
            "(%s)%s" % (c, n)
            for c, n in zip(self.coords, self.algebra.basis_names)
            if c
        ]
        return " + ".join(terms) if terms else "0"


class Decomposition:
    """A = prod A_i realized by central orthogonal idempotents."""

    def __init__(self, parent, idempotents, factors, embeddings):
        self.parent = parent
        self.idempotents = idempotents
        self.factors = factors
        self.embeddings = embeddings  # per factor: d_i x dim matrix of coords

    def embed(self, factor_index, element):
        row = Matrix(self.parent.ring, [element.coords], element.algebra.dim)
        return self.parent.element((row * self.embeddings[factor_index]).rows[0])


def decompose(alg, idems):
    """Split the algebra along a central orthogonal idempotent system."""
    alg.check_idempotent_system(idems)
    ring = alg.ring
    factors = []
    embeddings = []
    total = 0
    for e in idems:
        span_rows = [(e * b * e).coords for b in alg.basis()]
        red, _ = Matrix(ring, span_rows, alg.dim).rref()
        basis_rows = [row for row in red.rows if any(row)]
        d = len(basis_rows)
        total += d
        bmat = Matrix(ring, basis_rows, alg.dim)
        table = []
        for i in range(d):
            row_i = []
            for j in range(d):
                prod = alg.mul_coords(basis_rows[i], basis_rows[j])
                sol = solve_left(bmat, prod)
                if sol is None:
                    raise BadIdempotents("idempotent block is not closed")
                row_i.append(sol)
            table.append(row_i)
        one_sol = solve_left(bmat, e.coords)
        if one_sol is None:
            raise BadIdempotents("idempotent not inside its own block")
        factors.append(Algebra(ring, table, one_sol,
                               trusted_semisimple=alg.trusted_semisimple,
                               validate=False))
        embeddings.append(bmat)
    if total != alg.dim:
        raise BadIdempotents("blocks do not fill the algebra")
    return Decomposition(alg, list(idems), factors, embeddings)


# ---------------------------------------------------------------------------
# constructors


def matrix_algebra(ring, n, trusted_semisimple=True):
    """Mat_n(K) with basis e_11, e_12, ..., e_nn (row-major)."""
    dim = n * n
    zero, one = frac0(ring), frac1(ring)

    def idx(a, b):
        return a * n + b

    table = [[[zero] * dim for _ in range(dim)] for _ in range(dim)]
    for a in range(n):
        for b in range(n):
            for c in range(n):
                for d in range(n):
                    if b == c:
                        row = [zero] * dim
                        row[idx(a, d)] = one
                        table[idx(a, b)][idx(c, d)] = row
    one_coords = [zero] * dim
    for a in range(n):
        one_coords[idx(a, a)] = one
    names = ["e%d%d" % (a + 1, b + 1) for a in range(n) for b in range(n)]
    return Algebra(ring, table, one_coords, basis_names=names,
                   trusted_semisimple=trusted_semisimple, validate=False)


def poly_quotient_algebra(ring, modulus, var="x", trusted_semisimple=False):
    """K[x]/(modulus); modulus is a monic coefficient list, lowest first."""
    modulus = [Frac.of(ring, c) for c in modulus]
    n = len(modulus) - 1
    if n < 1 or modulus[-1] != frac1(ring):
        raise ValueError("modulus must be monic of degree >= 1")
    zero, one = frac0(ring), frac1(ring)
    red = [[-c for c in modulus[:n]]]  # x^n coords
    for _ in range(n - 1):
        prev = red[-1]
        shifted = [zero] + prev[:-1]
        top = prev[-1]
        if top:
            shifted = [s - top * m for s, m in zip(shifted, modulus[:n])]
        red.append(shifted)

    def xpow(k):
        if k < n:
            row = [zero] * n
            row[k] = one
            return row
        return red[k - n]

    table = [[xpow(i + j) for j in range(n)] for i in range(n)]
    one_coords = [one] + [zero] * (n - 1)
    names = ["1"] + [var if k == 1 else "%s^%d" % (var, k) for k in range(1, n)]
    return Algebra(ring, table, one_coords, basis_names=names,
                   trusted_semisimple=trusted_semisimple, validate=True)


def quaternion_algebra(ring, a, b, trusted_semisimple=True):
    """The quaternion algebra (a, b | K): i^2 = a, j^2 = b, ij = -ji = k."""
    a = Frac.of(ring, a)
    b = Frac.of(ring, b)
    zero, one = frac0(ring), frac1(ring)

    def vec(c0=None, c1=None, c2=None, c3=None):
        return [c0 or zero, c1 or zero, c2 or zero, c3 or zero]

    e, i, j, k = vec(one), vec(None, one), vec(None, None, one), vec(None, None, None, one)
    table = [
        [e, i, j, k],
        [i, vec(a), k, [zero, zero, a, zero]],
        [j, [zero, zero, zero, -one], vec(b), [zero, -b, zero, zero]],
        [k, [zero, zero, -a, zero], [zero, b, zero, zero], vec(-a * b)],
    ]
    return Algebra(ring, table, e, basis_names=["1", "i", "j", "k"],
                   trusted_semisimple=trusted_semisimple, validate=True)


def matrix_over_algebra(inner, n, trusted_semisimple=None):
    """Mat_n(D) for an algebra D, basis E_ab (x) d_c, row-major blocks."""
    ring = inner.ring
    m = inner.dim
    dim = n * n * m
    zero = frac0(ring)

    def idx(a, b, c):
        return (a * n + b) * m + c

    table = [[[zero] * dim for _ in range(dim)] for _ in range(dim)]
    for a in range(n):
        for b in range(n):
            for c in range(m):
                for e in range(n):
                    for f in range(n):
                        if b != e:
                            continue
                        for g in range(m):
                            prod = inner.table[c][g]
                            row = [zero] * dim
                            for h in range(m):
                                if prod[h]:
                                    row[idx(a, f, h)] = prod[h]
                            table[idx(a, b, c)][idx(e, f, g)] = row
    one_coords = [zero] * dim
    for a in range(n):
        for c in range(m):
            if inner.one_coords[c]:
                one_coords[idx(a, a, c)] = inner.one_coords[c]
    names = [
        "E%d%d.%s" % (a + 1, b + 1, inner.basis_names[c])
        for a in range(n) for b in range(n) for c in range(m)
    ]
    if trusted_semisimple is None:
        trusted_semisimple = inner.trusted_semisimple
    return Algebra(ring, table, one_coords, basis_names=names,
                   trusted_semisimple=trusted_semisimple, validate=False)


def product_algebra(algebras, trusted_semisimple=None):
    """Direct product of algebras over a common ground ring."""
    ring = algebras[0].ring
    dim = sum(a.dim for a in algebras)
    zero = frac0(ring)
    offsets = []
    off = 0
    for a in algebras:
        offsets.append(off)
        off += a.dim
    table = [[[zero] * dim for _ in range(dim)] for _ in range(dim)]
    one_coords = [zero] * dim
    names = []
    for t, alg in enumerate(algebras):
        o = offsets[t]
        for i in range(alg.dim):
            one_coords[o + i] = alg.one_coords[i]
            names.append("f%d.%s" % (t + 1, alg.basis_names[i]))
            for j in range(alg.dim):
                row = [zero] * dim
                for k in range(alg.dim):
                    row[o + k] = alg.table[i][j][k]
                table[o + i][o + j] = row
    if trusted_semisimple is None:
        trusted_semisimple = all(a.trusted_semisimple for a in algebras)
    return Algebra(ring, table, one_coords, basis_names=names,
                   trusted_semisimple=trusted_semisimple, validate=False)
