"""R-orders in finite-dimensional algebras: closure, radicals, idealizers,
p-maximalization, maximality certificates, ideal enumeration, and
endomorphism orders."""

from fractions import Fraction

from .errors import (
    InternalError,
    NeedsSuppliedPrimes,
    NotCommutative,
    NotFullRank,
    NotIntegral,
    NotPrime,
    NotSemisimple,
    RankDeficient,
    ZeroElement,
)
from .exactlin import Lattice, Matrix, lattice_index
from .finitealg import FiniteAlgebra
from .algebras import decompose, matrix_over_algebra, solve_left
from .rings import Frac


class Order:
    """An R-order: a full-rank multiplicatively closed lattice containing 1."""

    def __init__(self, algebra, lattice, validate=True):
        self.algebra = algebra
        if not isinstance(lattice, Lattice):
            lattice = Lattice.from_rows(algebra.ring, lattice, algebra.dim)
        self.lattice = lattice
        self.dim = algebra.dim
        if lattice.ambient_dim != self.dim or lattice.rank != self.dim:
            raise NotFullRank("order basis must be square of full rank")
        self.bmat = lattice.basis
        self.binv = self.bmat.inverse()
        self._struct = None
        if validate:
            self.structure_constants()
            one = self.order_coords(algebra.one_coords)
            if one is None:
                raise NotIntegral("order does not contain 1")

    def order_coords(self, ambient_coords):
        """Integral order-basis coordinates (ring elements), or None."""
        row = Matrix(self.algebra.ring, [ambient_coords], self.dim)
        t = (row * self.binv).rows[0]
        if not all(x.is_integral() for x in t):
            return None
        return [x.integral_value() for x in t]

    def ambient_coords(self, order_coords):
        ring = self.algebra.ring
        row = Matrix(ring, [[Frac.of(ring, c) for c in order_coords]], self.dim)
        return (row * self.bmat).rows[0]

    def basis_elements(self):
        return [self.algebra.element(row) for row in self.bmat.rows]

    def structure_constants(self):
        """c[i][j] = order coords of b_i * b_j, as ring elements."""
        if self._struct is None:
            alg = self.algebra
            struct = []
            for i in range(self.dim):
                row = []
                for j in range(self.dim):
                    prod = alg.mul_coords(self.bmat.rows[i], self.bmat.rows[j])
                    c = self.order_coords(prod)
                    if c is None:
                        raise NotIntegral(
                            "order basis is not multiplicatively closed "
                            "(b_%d * b_%d escapes)" % (i, j)
                        )
                    row.append(c)
                struct.append(row)
            self._struct = struct
        return self._struct

    def contains(self, other):
        return self.lattice.contains_lattice(other.lattice)

    def __eq__(self, other):
        return isinstance(other, Order) and self.lattice == other.lattice

    def __hash__(self):
        return hash(self.lattice)

    def __repr__(self):
        return "Order(%r)" % self.lattice


class LatticeIdeal:
    __slots__ = ("order", "lattice", "sidedness")

    def __init__(self, order, lattice, sidedness="two-sided"):
        self.order = order
        self.lattice = lattice
        self.sidedness = sidedness

    def __eq__(self, other):
        return isinstance(other, LatticeIdeal) and self.lattice == other.lattice

    def __hash__(self):
        return hash(self.lattice)

    def __repr__(self):
        return "LatticeIdeal(%s, %r)" % (self.sidedness, self.lattice)


# ---------------------------------------------------------------------------
# closure


def lattice_product(alg, a, b):
    """HNF lattice generated by pairwise products of basis rows."""
    rows = [
        alg.mul_coords(ra, rb) for ra in a.basis.rows for rb in b.basis.rows
    ]
    return Lattice.from_rows(alg.ring, rows, alg.dim)


def order_closure(alg, gens, max_steps=64):
    """Smallest order containing the generators (and 1)."""
    ring = alg.ring
    for g in gens:
        cp = alg.charpoly(g)
        for c in cp:
            if not c.is_integral():
                raise NotIntegral(
                    "generator %r is not integral (coefficient %s)" % (g, c)
                )
    rows = [alg.one_coords] + [g.coords for g in gens]
    lat = Lattice.from_rows(ring, rows, alg.dim)
    for _ in range(max_steps):
        nxt = lat.add(lattice_product(alg, lat, lat))
        if nxt == lat:
            if lat.rank != alg.dim:
                raise NotFullRank(
                    "generators span a proper subalgebra (rank %d of %d)"
                    % (lat.rank, alg.dim)
                )
            return Order(alg, lat)
        lat = nxt
    raise NotIntegral(
        "multiplicative closure did not stabilize; the generated ring is "
        "not a finitely generated module"
    )


# ---------------------------------------------------------------------------
# residue algebras


def residue_algebra(order, p):
    """(Λ/pΛ as an F_p-algebra, reduce, lift) for a prime p of R.

    For a polynomial ground ring and a prime of degree d the residue field
    F_{p^d} is restricted to F_p, so the output dimension is dim(Λ)·d and
    basis slot (i, e) stands for b_i·t^e.
    """
    ring = order.algebra.ring
    if not ring.is_prime(p):
        raise NotPrime("%s is not prime in the ground ring" % ring.to_str(p))
    struct = order.structure_constants()
    n = order.dim
    if ring.kind == "Z":
        q = p if p > 0 else -p
        table = [
            [[c % q for c in struct[i][j]] for j in range(n)]
            for i in range(n)
        ]
        one = [c % q for c in order.order_coords(order.algebra.one_coords)]

        def reduce_coords(order_coords):
            return [c % q for c in order_coords]

        def lift_coords(res_coords):
            return [int(c) for c in res_coords]

        return FiniteAlgebra(q, table, one), reduce_coords, lift_coords

    # polynomial ground ring: restrict scalars along F_p[t]/(pi) over F_p
    q = ring.p
    d = len(p) - 1  # degree of the prime polynomial

    def poly_mod(c):
        _, r = ring.divmod(c, p)
        return list(r) + [0] * (d - len(r))

    def expand(order_coords):
        # order coords (polynomials) -> F_p coords in slots (i, e)
        out = []
        for c in order_coords:
            out.extend(poly_mod(c))
        return out

    # t * (residue basis vector) in residue coordinates, used to shift powers
    tshift_rows = []
    for e in range(d):
        tpow = ring.canonical(tuple([0] * (e + 1) + [1]))
        tshift_rows.append(poly_mod(tpow))

    def shift(coeffs, f):
        """Multiply the length-d coefficient vector by t^f mod pi."""
        out = list(coeffs)
        for _ in range(f):
            nxt = [0] * d
            for e, c in enumerate(out):
                if c:
                    row = tshift_rows[e] if e == d - 1 else None
                    if e + 1 < d:
                        nxt[e + 1] = (nxt[e + 1] + c) % q
                    else:
                        for m in range(d):
                            nxt[m] = (nxt[m] + c * row[m]) % q
            out = nxt
        return out

    dim = n * d
    table = [[None] * dim for _ in range(dim)]
    for i in range(n):
        for e in range(d):
            for j in range(n):
                for f in range(d):
                    row = [0] * dim
                    for k in range(n):
                        coeffs = shift(poly_mod(struct[i][j][k]), e + f)
                        for m in range(d):
                            row[k * d + m] = coeffs[m]
                    table[i * d + e][j * d + f] = row
    one = expand(order.order_coords(order.algebra.one_coords))

    def reduce_coords(order_coords):
        return expand(order_coords)

    def lift_coords(res_coords):
        out = []
        for k in range(n):
            out.append(ring.canonical(tuple(res_coords[k * d:(k + 1) * d])))
        return out

    return FiniteAlgebra(q, table, one), reduce_coords, lift_coords


# ---------------------------------------------------------------------------
# radicals, idealizers, certificates


def radical_mod_p(order, p):
    """Two-sided ideal J with J/pΛ = Jacobson radical of Λ/pΛ."""
    res, _, lift = residue_algebra(order, p)
    rad = res.radical_basis()
    ring = order.algebra.ring
    rows = list(order.lattice.scaled(Frac.of(ring, p)).basis.rows)
    for r in rad:
        rows.append(order.ambient_coords(lift(r)))
    lat = Lattice.from_rows(ring, rows, order.dim)
    return LatticeIdeal(order, lat, "two-sided")


def idealizer(order, ideal, side="left"):
    """O_l(I) = {x : xI ⊆ I} (or O_r); an order containing the input."""
    alg = order.algebra
    lat = ideal.lattice if isinstance(ideal, LatticeIdeal) else ideal
    if lat.rank != alg.dim:
        raise RankDeficient("idealizer needs a full-rank ideal")
    binv = lat.basis.inverse()
    cond_rows = []
    for w in lat.basis.rows:
        elt = alg.element(w)
        m = alg.right_mul_matrix(elt) if side == "left" else alg.left_mul_matrix(elt)
        cond = m * binv
        cond_rows.extend(cond.transpose().rows)
    col_lat = Lattice.from_rows(alg.ring, cond_rows, alg.dim)
    if col_lat.rank != alg.dim:
        raise InternalError("idealizer condition system is rank-deficient")
    return Order(alg, col_lat.dual())


def discriminant(order):
    """Gram determinant of the trace form on an order basis (ring element)."""
    alg = order.algebra
    n = order.dim
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            prod = alg.mul_coords(order.bmat.rows[i], order.bmat.rows[j])
            m = Matrix(alg.ring,
                       [alg.mul_coords(prod, alg.basis_element(t).coords)
                        for t in range(n)], n)
            row.append(m.trace())
        rows.append(row)
    det = Matrix(alg.ring, rows, n).det()
    return det.integral_value()


def is_maximal_at_p(order, p):
    """Per-prime maximality certificate."""
    j = radical_mod_p(order, p)
    left = idealizer(order, j, "left")
    right = idealizer(order, j, "right")
    fixed = left.lattice == order.lattice and right.lattice == order.lattice
    res, _, _ = residue_algebra(order, p)
    simple = res.count_simple_factors() == 1
    return {
        "prime": p,
        "idealizerFixed": fixed,
        "residueSimple": simple,
        "verdict": fixed and simple,
    }


def _maximal_ideals_over_p(order, p):
    """The maximal two-sided ideals of Λ containing pΛ."""
    ring = order.algebra.ring
    res, _, lift = residue_algebra(order, p)
    rad = res.radical_basis()
    quot, _, lift_q = res.quotient(rad)
    idems = quot.primitive_central_idempotents()
    out = []
    q = res.p
    for e in idems:
        one_minus = [(a - b) % q for a, b in zip(quot.one_coords, e)]
        rows = [order.ambient_coords(lift(r)) for r in rad]
        for b in quot.basis():
            v = lift_q(quot.mul(b, one_minus))
            rows.append(order.ambient_coords(lift(v)))
        rows.extend(order.lattice.scaled(Frac.of(ring, p)).basis.rows)
        lat = Lattice.from_rows(ring, rows, order.dim)
        out.append(LatticeIdeal(order, lat, "two-sided"))
    return out


def p_maximal_order(order, p):
    """Grow the order until its localization at p is maximal."""
    ring = order.algebra.ring
    disc = discriminant(order)
    if disc != ring.zero:
        bound = order.dim * order.dim * ring.valuation(disc, p) + order.dim + 4
    else:
        bound = 64 * order.dim
    cur = order
    for _ in range(bound):
        j = radical_mod_p(cur, p)
        nxt = idealizer(cur, j, "left")
        if nxt.lattice != cur.lattice:
            cur = nxt
            continue
        grew = False
        for ideal in _maximal_ideals_over_p(cur, p):
            cand = idealizer(cur, ideal, "left")
            if cand.lattice != cur.lattice:
                cur = cand
                grew = True
                break
        if not grew:
            return cur
    raise InternalError("p-maximalization did not terminate within its bound")


# ---------------------------------------------------------------------------
# global maximal orders


def maximal_order(start, idems=None, extra_primes=None, seed=0):
    """Maximal order containing the input, by center decomposition and
    per-prime saturation at the discriminant primes."""
    alg = start.algebra
    ring = alg.ring
    if not alg.trusted_semisimple and not alg.is_separable_semisimple():
        raise NotSemisimple(
            "trace form is degenerate; pass a trusted-semisimple algebra"
        )
    if idems is None:
        if ring.characteristic == 0:
            idems = alg.central_idempotents(seed)
        else:
            idems = [alg.one()]
    if len(idems) == 1:
        return _maximalize_factor(start, extra_primes)
    dec = decompose(alg, idems)
    pieces = []
    for t, factor in enumerate(dec.factors):
        emb = dec.embeddings[t]
        gens = []
        e = idems[t]
        for b in start.basis_elements():
            proj = (e * b).coords
            sol = solve_left(emb, proj)
            if sol is None:
                raise InternalError("projection left the idempotent block")
            gens.append(factor.element(sol))
        sub = order_closure(factor, gens)
        sub = _maximalize_factor(sub, extra_primes)
        pieces.append((sub, emb))
    rows = []
    for sub, emb in pieces:
        for row in sub.lattice.basis.rows:
            rows.append((Matrix(ring, [row], sub.dim) * emb).rows[0])
    return Order(alg, Lattice.from_rows(ring, rows, alg.dim))


def _maximalize_factor(order, extra_primes):
    ring = order.algebra.ring
    disc = discriminant(order)
    primes = []
    if disc != ring.zero:
        primes = [q for q, _ in ring.factor(disc)]
    elif not extra_primes:
        raise NeedsSuppliedPrimes(
            "discriminant vanishes; supply candidate primes"
        )
    for q in extra_primes or []:
        q = ring.canonical(q)
        if q not in primes:
            primes.append(q)
    cur = order
    for q in primes:
        cur = p_maximal_order(cur, q)
    return cur


def integral_closure_commutative(order, extra_primes=None, seed=0):
    """Ring of integers of a commutative (étale) algebra."""
    if not order.algebra.is_commutative():
        raise NotCommutative("integral closure requires a commutative algebra")
    return maximal_order(order, extra_primes=extra_primes, seed=seed)


# ---------------------------------------------------------------------------
# endomorphism orders


def endomorphism_order(delta, m, r=None):
    """End_Δ(M) = {x ∈ Mat_r(D) : xM ⊆ M} in the matrix model algebra.

    M lives in D^r with block coordinates (r blocks of dim D each); the
    matrix model acts by column-vector convention (x·v)_a = Σ_b x_ab v_b.
    """
    dalg = delta.algebra
    ring = dalg.ring
    d = dalg.dim
    if m.ambient_dim % d != 0:
        raise RankDeficient("ambient dimension is not a multiple of dim D")
    if r is None:
        r = m.ambient_dim // d
    if m.rank != r * d:
        raise RankDeficient("lattice must be full rank in D^r")
    model = matrix_over_algebra(dalg, r)
    binv = m.basis.inverse()
    lmats = [dalg.left_mul_matrix(dalg.basis_element(c)) for c in range(d)]
    cond_rows = []
    for w in m.basis.rows:
        blocks = [w[b * d:(b + 1) * d] for b in range(r)]
        rows = []
        for a in range(r):
            for b in range(r):
                for c in range(d):
                    # E_ab (x) d_c applied to w: block a receives d_c * w_b
                    img = [Frac.of(ring, 0)] * (r * d)
                    wb = Matrix(ring, [blocks[b]], d)
                    prod = (wb * lmats[c]).rows[0]
                    img[a * d:(a + 1) * d] = prod
                    rows.append(img)
        phi = Matrix(ring, rows, r * d) * binv
        cond_rows.extend(phi.transpose().rows)
    col_lat = Lattice.from_rows(ring, cond_rows, model.dim)
    if col_lat.rank != model.dim:
        raise RankDeficient("endomorphism condition system is rank-deficient")
    return Order(model, col_lat.dual())


# ---------------------------------------------------------------------------
# ideal enumeration and valuations


def two_sided_ideals_over_p(order, p, max_elements=200000):
    """All two-sided ideals I with pΛ ⊆ I ⊆ Λ."""
    ring = order.algebra.ring
    res, _, lift = residue_algebra(order, p)
    ideals = res.all_two_sided_ideals(max_elements=max_elements)
    out = []
    plat = order.lattice.scaled(Frac.of(ring, p))
    for rows in ideals:
        amb = list(plat.basis.rows)
        for rrow in rows:
            amb.append(order.ambient_coords(lift(list(rrow))))
        lat = Lattice.from_rows(ring, amb, order.dim)
        out.append(LatticeIdeal(order, lat, "two-sided"))
    out.sort(key=lambda i: str(lattice_index(i.lattice, order.lattice)))
    return out


def valuation_w(alg, a, p, degree):
    """w(a) = (1/degree)·v_p(Nrd(a)) for a central simple algebra of the
    given degree (dim = degree²); returns a stdlib Fraction."""
    if a.is_zero():
        raise ZeroElement("valuation of zero is undefined")
    ring = alg.ring
    det = alg.left_mul_matrix(a).det()
    v = ring.valuation(det.num, p) - ring.valuation(det.den, p)
    return Fraction(v, degree * degree)
