"""Tensoring abelian-variety data by a finitely presented module over an
endomorphism order: isogeny-class multiplicities, period-lattice images,
minimal isogenies to a bigger order, and naturality checks.

Abelian varieties are modeled formally: an isogeny type (simple factors
with endomorphism algebras and multiplicities) plus optional period
lattices carrying an explicit order action.
"""

from .errors import (
    ActionMismatch,
    DimensionTooLarge,
    EmbeddingNotAlgebraMap,
    NotAModuleMap,
    NotContained,
    NotIntegral,
)
from .exactlin import Lattice, Matrix, lattice_index, snf
from .algebras import matrix_over_algebra, product_algebra
from .rings import Frac, frac0, frac1


class IsogenyFactor:
    __slots__ = ("label", "dimB", "endo", "mult")

    def __init__(self, label, dimB, endo, mult):
        self.label = label
        self.dimB = dimB
        self.endo = endo  # Algebra over Q (the division algebra D_i)
        self.mult = mult

    def __repr__(self):
        return "%s^%d" % (self.label, self.mult)


class IsogenyType:
    def __init__(self, factors):
        self.factors = list(factors)
        labels = [f.label for f in self.factors]
        if len(set(labels)) != len(labels):
            raise ValueError("factor labels must be distinct")

    def total_dimension(self):
        return sum(f.mult * f.dimB for f in self.factors)

    def with_multiplicities(self, mults):
        return IsogenyType([
            IsogenyFactor(f.label, f.dimB, f.endo, m)
            for f, m in zip(self.factors, mults)
        ])

    def model(self):
        """(E, idempotent coords per factor, block data) for E = ∏ Mat_n(D).

        Factors of multiplicity 0 contribute nothing; their idempotent is
        the zero vector.
        """
        live = [f for f in self.factors if f.mult > 0]
        if not live:
            raise ValueError("cannot build the model of the zero type")
        blocks = [matrix_over_algebra(f.endo, f.mult) for f in live]
        big = product_algebra(blocks) if len(blocks) > 1 else blocks[0]
        ring = big.ring
        eps = []
        offset = 0
        pos = 0
        for f in self.factors:
            coords = [frac0(ring)] * big.dim
            if f.mult > 0:
                blk = blocks[pos]
                for t, c in enumerate(blk.one_coords):
                    coords[offset + t] = c
                offset += blk.dim
                pos += 1
            eps.append(big.element(coords))
        return big, eps

    def __repr__(self):
        return "[" + " x ".join(repr(f) for f in self.factors) + "]"


class ModulePresentation:
    """coker(α: O^r → O^s) as a right O-module.

    Right-module maps are left multiplications: α sends the column vector
    x ∈ O^r to the column vector with entries (α·x)_u = Σ_t α[t][u]·x_t,
    so the image is R-spanned by the vectors (α[t][u]·b_a)_u.
    """

    def __init__(self, order, alpha, s=None):
        self.order = order
        self.alpha = alpha  # r x s nested list of AlgebraElements
        self.r = len(alpha)
        if alpha:
            self.s = len(alpha[0])
        elif s is None:
            raise ValueError("free presentation needs an explicit target rank")
        else:
            self.s = s
        for row in alpha:
            if len(row) != self.s:
                raise ValueError("ragged presentation matrix")
            for a in row:
                if order.order_coords(a.coords) is None:
                    raise NotIntegral("presentation entry outside the order")

    def relation_matrix(self):
        """The (r·n)×(s·n) matrix of α⊗(order basis) over the ground ring:
        row (t, a) is the order-basis expansion of b_a·α[t][·]."""
        o = self.order
        alg = o.algebra
        ring = alg.ring
        n = o.dim
        rows = []
        for t in range(self.r):
            for a in range(n):
                ba = o.bmat.rows[a]
                row = []
                for u in range(self.s):
                    prod = alg.mul_coords(self.alpha[t][u].coords, ba)
                    row.extend(Frac.of(ring, c) for c in o.order_coords(prod))
                rows.append(row)
        return Matrix(ring, rows, self.s * n)


class PeriodLattice:
    """A lattice with a left action of the order, one matrix per order
    basis element: coords(b_i·v) = coords(v)·action[i]."""

    def __init__(self, order, lattice, action, prime="generic", validate=True):
        self.order = order
        self.lattice = lattice
        self.action = action  # list of Matrix, or None (no action recorded)
        self.prime = prime
        if validate and action is not None:
            self._validate()

    def _validate(self):
        o = self.order
        ring = o.algebra.ring
        n = o.dim
        if len(self.action) != n:
            raise ActionMismatch("need one action matrix per order basis element")
        struct = o.structure_constants()
        for i in range(n):
            for j in range(n):
                lhs = self.action[j] * self.action[i]
                rhs = None
                for k in range(n):
                    c = Frac.of(ring, struct[i][j][k])
                    term = self.action[k].scaled(c)
                    rhs = term if rhs is None else rhs + term
                if lhs != rhs:
                    raise ActionMismatch(
                        "action matrices violate b_%d·b_%d" % (i, j)
                    )
        one = o.order_coords(o.algebra.one_coords)
        acc = None
        for c, m in zip(one, self.action):
            term = m.scaled(Frac.of(ring, c))
            acc = term if acc is None else acc + term
        if acc != Matrix.identity(ring, self.lattice.ambient_dim):
            raise ActionMismatch("unit does not act as the identity")
        for i in range(n):
            img = Lattice.from_rows(ring, self.lattice.basis * self.action[i],
                                    self.lattice.ambient_dim)
            if not self.lattice.contains_lattice(img):
                raise ActionMismatch("lattice is not stable under b_%d" % i)

    def act(self, element):
        """Action matrix of an arbitrary algebra element (rational coords
        in the order basis are allowed)."""
        ring = self.order.algebra.ring
        row = Matrix(ring, [element.coords], self.order.dim)
        t = (row * self.order.binv).rows[0]
        acc = None
        for c, m in zip(t, self.action):
            term = m.scaled(c)
            acc = term if acc is None else acc + term
        return acc


class IsogenyDescriptor:
    def __init__(self, source, target, per_lattice_divisors, degree):
        self.source = source
        self.target = target
        self.per_lattice_divisors = per_lattice_divisors
        self.degree = degree


# ---------------------------------------------------------------------------
# isogeny-class computation


def _quotient_space(ring, rel_rows, dim):
    """rref-based quotient of K^dim by the span of rel_rows; returns
    (project, basis_cols) with project mapping ambient coords to quotient
    coords over the non-pivot columns."""
    red, pivots = Matrix(ring, rel_rows, dim).rref() if rel_rows else (
        Matrix(ring, [], dim), [])
    red_rows = [row for row in red.rows if any(row)]
    free_cols = [c for c in range(dim) if c not in pivots]

    def project(vec):
        v = [Frac.of(ring, x) for x in vec]
        for row, c in zip(red_rows, pivots):
            if v[c]:
                f = v[c]
                v = [x - f * y for x, y in zip(v, row)]
        return [v[c] for c in free_cols]

    return project, free_cols


def tensor_isogeny_class(pres, itype, embedding):
    """Isogeny type of M ⊗_O A.

    `embedding` is an (order dim)×(dim E) matrix giving the image of each
    order basis element inside the type's model algebra E.
    """
    o = pres.order
    alg = o.algebra
    ring = alg.ring
    n = o.dim
    E, eps = itype.model()
    if embedding.nrows != n or embedding.ncols != E.dim:
        raise EmbeddingNotAlgebraMap("embedding matrix has the wrong shape")
    emb = [E.element(row) for row in embedding.rows]
    struct = o.structure_constants()
    one = o.order_coords(alg.one_coords)
    acc = E.zero()
    for c, e in zip(one, emb):
        acc = acc + e.scaled(Frac.of(ring, c))
    if acc.coords != E.one_coords:
        raise EmbeddingNotAlgebraMap("unit is not sent to 1")
    for i in range(n):
        for j in range(n):
            lhs = emb[i] * emb[j]
            rhs = E.zero()
            for k in range(n):
                rhs = rhs + emb[k].scaled(Frac.of(ring, struct[i][j][k]))
            if lhs.coords != rhs.coords:
                raise EmbeddingNotAlgebraMap(
                    "multiplicativity fails on basis pair (%d, %d)" % (i, j)
                )

    # V = coker(alpha) ⊗ Q inside K^(s·dimA)
    s, na = pres.s, alg.dim
    rel_rows = []
    for t in range(pres.r):
        for a in range(na):
            row = []
            for u in range(pres.s):
                row.extend(alg.mul_coords(pres.alpha[t][u].coords,
                                          alg.basis_element(a).coords))
            rel_rows.append(row)
    proj_v, free_cols = _quotient_space(ring, rel_rows, s * na)
    dv = len(free_cols)
    de = E.dim
    if dv * de > 4096:
        raise DimensionTooLarge("dim V · dim E = %d exceeds 4096" % (dv * de))
    if dv == 0:
        return itype.with_multiplicities([0] * len(itype.factors))

    def section_v(vq):
        amb = [frac0(ring)] * (s * na)
        for c, x in zip(free_cols, vq):
            amb[c] = x
        return amb

    def v_times_basis(vq, a):
        amb = section_v(vq)
        out = []
        ba = alg.basis_element(a).coords
        for u in range(s):
            block = amb[u * na:(u + 1) * na]
            out.extend(alg.mul_coords(block, ba))
        return proj_v(out)

    # W = V ⊗ E; relations (v·b_a) ⊗ e  -  v ⊗ (emb_a·e)
    def widx(x, y):
        return x * de + y

    wrel = []
    for x in range(dv):
        vq = [frac1(ring) if t == x else frac0(ring) for t in range(dv)]
        for a in range(n):
            va = v_times_basis(vq, a)
            for y in range(de):
                ce = emb[a] * E.basis_element(y)
                row = [frac0(ring)] * (dv * de)
                for t in range(dv):
                    if va[t]:
                        row[widx(t, y)] = row[widx(t, y)] + va[t]
                for t in range(de):
                    if ce.coords[t]:
                        row[widx(x, t)] = row[widx(x, t)] - ce.coords[t]
                wrel.append(row)
    proj_w, _ = _quotient_space(ring, wrel, dv * de)
    mults = []
    for f, ep in zip(itype.factors, eps):
        if f.mult == 0:
            mults.append(0)
            continue
        img_rows = []
        for x in range(dv):
            for y in range(de):
                img = E.basis_element(y) * ep
                row = [frac0(ring)] * (dv * de)
                for t in range(de):
                    if img.coords[t]:
                        row[widx(x, t)] = img.coords[t]
                img_rows.append(proj_w(row))
        qdim = len(img_rows[0]) if img_rows else 0
        dim_img = Matrix(ring, img_rows, qdim).rank() if qdim else 0
        denom = f.mult * f.endo.dim
        if dim_img % denom:
            raise ActionMismatch(
                "block dimension %d is not a multiple of n·dim D = %d"
                % (dim_img, denom)
            )
        mults.append(dim_img // denom)
    return itype.with_multiplicities(mults)


def tensor_dimension(itype):
    return itype.total_dimension()


# ---------------------------------------------------------------------------
# lattice-level computation


def tensor_lattice(pres, t):
    """(period lattice of M ⊗_O A, elementary divisors of the torsion).

    The output lattice lives in the free quotient T^s/⟨image of α⊗id⟩ and
    is expressed in the coordinates cut out by the SNF transition matrix;
    the descended order action is recorded when the order is commutative.
    """
    o = pres.order
    if t.order is not o:
        raise ActionMismatch("period lattice belongs to a different order")
    ring = o.algebra.ring
    rho = t.lattice.rank
    if rho != t.lattice.ambient_dim:
        raise ActionMismatch("period lattice must be full rank")
    binv_t = t.lattice.basis.inverse()
    rows = []
    for ti in range(pres.r):
        for a in range(rho):
            tau = Matrix(ring, [t.lattice.basis.rows[a]], rho)
            row = []
            for u in range(pres.s):
                img = tau * t.act(pres.alpha[ti][u]) * binv_t
                row.extend(img.rows[0])
            rows.append(row)
    phi = Matrix(ring, rows, pres.s * rho)
    if not phi.is_integral():
        raise ActionMismatch("presentation does not preserve the lattice")
    s_mat, _, v_mat = snf(phi)
    rank = sum(
        1 for i in range(min(s_mat.nrows, s_mat.ncols))
        if s_mat.rows[i][i]
    )
    divisors = [
        s_mat.rows[i][i].integral_value() for i in range(rank)
        if not ring.is_unit(s_mat.rows[i][i].integral_value())
    ]
    q = pres.s * rho - rank
    # coordinates on the free quotient: last q coords of x·V
    proj_cols = v_mat.submatrix(range(pres.s * rho),
                                range(rank, pres.s * rho))
    v_inv = v_mat.inverse()
    section = v_inv.submatrix(range(rank, pres.s * rho),
                              range(pres.s * rho))
    out_lat = Lattice.standard(ring, q)
    action = None
    if o.algebra.is_commutative() and q > 0:
        action = []
        for i in range(o.dim):
            # order action in T-basis coordinates, block-diagonal on T^s
            big_t = _block_diag(
                ring, t.lattice.basis * t.action[i] * binv_t, pres.s)
            action.append(section * big_t * proj_cols)
    out = PeriodLattice(o, out_lat, action, prime=t.prime,
                        validate=action is not None)
    out.projection = proj_cols
    out.section = section
    return out, divisors


def _block_diag(ring, m, s):
    n = m.nrows
    rows = []
    for u in range(s):
        for i in range(n):
            row = [frac0(ring)] * (s * m.ncols)
            for j in range(m.ncols):
                row[u * m.ncols + j] = Frac.of(ring, m.rows[i][j])
            rows.append(row)
    return Matrix(ring, rows, s * m.ncols)


# ---------------------------------------------------------------------------
# minimal isogenies


def minimal_isogeny(o, o_prime, itype, lattices):
    """The canonical isogeny A₀ → O'⊗_O A₀: per lattice, the smallest
    O'-stable lattice containing T, with its elementary divisors."""
    if not o_prime.lattice.contains_lattice(o.lattice):
        raise NotContained("the second order does not contain the first")
    ring = o.algebra.ring
    per = []
    degree = ring.one
    for t in lattices:
        cur = t.lattice
        prime_basis = o_prime.basis_elements()
        while True:
            rows = list(cur.basis.rows)
            for b in prime_basis:
                img = cur.basis * t.act(b)
                rows.extend(img.rows)
            nxt = Lattice.from_rows(ring, rows, cur.ambient_dim)
            if nxt == cur:
                break
            cur = nxt
        # elementary divisors of cur/t.lattice
        coords = []
        for row in t.lattice.basis.rows:
            sol = cur.solve_in_basis(row)
            coords.append(sol)
        cmat = Matrix(ring, coords, cur.rank)
        if not cmat.is_integral():
            raise NotContained("saturated lattice does not contain the input")
        s_mat, _, _ = snf(cmat)
        divs = [
            s_mat.rows[i][i].integral_value()
            for i in range(min(s_mat.nrows, s_mat.ncols))
            if s_mat.rows[i][i]
            and not ring.is_unit(s_mat.rows[i][i].integral_value())
        ]
        per.append({"prime": t.prime, "elementaryDivisors": divs})
        degree = ring.canonical(
            ring.mul(degree, lattice_index(t.lattice, cur))
        )
    return IsogenyDescriptor(itype, itype, per, degree)


# ---------------------------------------------------------------------------
# naturality


def check_naturality(pres1, pres2, phi, t):
    """Verify that the square relating φ⊗1 on presentations and the induced
    map on tensored period lattices commutes.

    `phi` is an s1×s2 matrix of order elements mapping O^{s1} → O^{s2} by
    x ↦ x·phi, required to descend to a right-module map coker(α1) →
    coker(α2).
    """
    o = pres1.order
    if pres2.order is not o or t.order is not o:
        raise ActionMismatch("presentations and lattice must share an order")
    alg = o.algebra
    ring = alg.ring
    n = o.dim
    # descent: rows of α1·φ must lie in the O-submodule generated by α2 rows
    gen_rows = []
    for ti in range(pres2.r):
        for a in range(n):
            ba = o.bmat.rows[a]
            row = []
            for u in range(pres2.s):
                row.extend(alg.mul_coords(pres2.alpha[ti][u].coords, ba))
            gen_rows.append(row)
    gen_lat = Lattice.from_rows(ring, gen_rows, pres2.s * alg.dim) \
        if gen_rows else Lattice.zero(ring, pres2.s * alg.dim)
    for ti in range(pres1.r):
        for a in range(n):
            ba = o.bmat.rows[a]
            img = []
            for u2 in range(pres2.s):
                acc = [frac0(ring)] * alg.dim
                for u1 in range(pres1.s):
                    prod = alg.mul_coords(
                        phi[u1][u2].coords,
                        alg.mul_coords(pres1.alpha[ti][u1].coords, ba),
                    )
                    acc = [x + y for x, y in zip(acc, prod)]
                img.extend(acc)
            if not gen_lat.contains_vector(img):
                raise NotAModuleMap(
                    "φ does not send the relations of M₁ into those of M₂"
                )
    # lattice level
    out1, _ = tensor_lattice(pres1, t)
    out2, _ = tensor_lattice(pres2, t)
    rho = t.lattice.rank
    binv_t = t.lattice.basis.inverse()
    blocks = []
    for u1 in range(pres1.s):
        row_blocks = []
        for u2 in range(pres2.s):
            row_blocks.append(t.lattice.basis * t.act(phi[u1][u2]) * binv_t)
        blocks.append(row_blocks)
    big_rows = []
    for u1 in range(pres1.s):
        for i in range(rho):
            row = []
            for u2 in range(pres2.s):
                row.extend(blocks[u1][u2].rows[i])
            big_rows.append(row)
    phi_mat = Matrix(ring, big_rows, pres2.s * rho)
    # the induced map on free quotients, defined via the section of side 1;
    # the square ξ₂∘(φ⊗1) = T(φ)∘ξ₁ commutes iff this agrees with pushing
    # every generator of T^{s1} through φ⊗1 and projecting on side 2 (this
    # also forces φ⊗1 to kill the kernel of ξ₁, i.e. well-definedness)
    induced = out1.section * phi_mat * out2.projection
    dim1 = pres1.s * rho
    for i in range(dim1):
        e = Matrix(ring, [[frac1(ring) if j == i else frac0(ring)
                           for j in range(dim1)]], dim1)
        lhs = (e * phi_mat * out2.projection).rows[0]
        rhs = (e * out1.projection * induced).rows[0]
        if lhs != rhs:
            return False
    return True
