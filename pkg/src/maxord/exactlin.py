"""Exact linear algebra over the ground ring and its fraction field.

Matrices carry fraction entries; Hermite and Smith normal forms operate on
integral matrices and return unimodular transformations.  Lattices are
stored with canonical (HNF) bases so lattice equality is representation
equality.
"""

from .errors import InputNotIntegral, NotSublattice, RankDeficient
from .rings import Frac, frac0, frac1


class Matrix:
    """A dense rectangular matrix with Frac entries."""

    __slots__ = ("ring", "rows", "ncols")

    def __init__(self, ring, rows, ncols=None):
        self.ring = ring
        self.rows = [[Frac.of(ring, x) for x in row] for row in rows]
        if self.rows:
            self.ncols = len(self.rows[0])
            for row in self.rows:
                if len(row) != self.ncols:
                    raise ValueError("ragged matrix")
        else:
            if ncols is None:
                raise ValueError("empty matrix needs explicit ncols")
            self.ncols = ncols

    # -- constructors ---------------------------------------------------------

    @classmethod
    def identity(cls, ring, n):
        one, zero = frac1(ring), frac0(ring)
        return cls(ring, [[one if i == j else zero for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, ring, m, n):
        zero = frac0(ring)
        return cls(ring, [[zero] * n for _ in range(m)], n)

    @property
    def nrows(self):
        return len(self.rows)

    def copy(self):
        return Matrix(self.ring, [row[:] for row in self.rows], self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.ncols, tuple(tuple(r) for r in self.rows)))

    def __repr__(self):
        return "Matrix([%s])" % "; ".join(
            ", ".join(str(x) for x in row) for row in self.rows
        )

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other):
        return Matrix(
            self.ring,
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)],
            self.ncols,
        )

    def __sub__(self, other):
        return Matrix(
            self.ring,
            [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)],
            self.ncols,
        )

    def __neg__(self):
        return Matrix(self.ring, [[-a for a in row] for row in self.rows], self.ncols)

    def scaled(self, c):
        c = Frac.of(self.ring, c)
        return Matrix(self.ring, [[a * c for a in row] for row in self.rows], self.ncols)

    def __mul__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.ncols != other.nrows:
            raise ValueError("matrix shape mismatch")
        cols = list(zip(*other.rows)) if other.rows else []
        zero = frac0(self.ring)
        out = []
        for row in self.rows:
            out_row = []
            for col in cols:
                acc = zero
                for a, b in zip(row, col):
                    if a and b:
                        acc = acc + a * b
                out_row.append(acc)
            out.append(out_row)
        return Matrix(self.ring, out, other.ncols)

    def transpose(self):
        if not self.rows:
            return Matrix(self.ring, [[] for _ in range(self.ncols)], 0)
        return Matrix(self.ring, [list(col) for col in zip(*self.rows)], self.nrows)

    def stack(self, other):
        if self.ncols != other.ncols:
            raise ValueError("stack shape mismatch")
        return Matrix(self.ring, [r[:] for r in self.rows] + [r[:] for r in other.rows], self.ncols)

    def hstack(self, other):
        if self.nrows != other.nrows:
            raise ValueError("hstack shape mismatch")
        return Matrix(
            self.ring,
            [r1 + r2 for r1, r2 in zip(self.rows, other.rows)],
            self.ncols + other.ncols,
        )

    def submatrix(self, row_idx, col_idx):
        return Matrix(
            self.ring,
            [[self.rows[i][j] for j in col_idx] for i in row_idx],
            len(col_idx),
        )

    # -- integrality ----------------------------------------------------------

    def is_integral(self):
        return all(x.is_integral() for row in self.rows for x in row)

    def to_ring_rows(self):
        out = []
        for row in self.rows:
            out.append([x.integral_value() for x in row])
        return out

    def denominator_lcm(self):
        """Canonical lcm of all entry denominators."""
        r = self.ring
        d = r.one
        for row in self.rows:
            for x in row:
                g = r.gcd(d, x.den)
                d = r.canonical(r.exact_div(r.mul(d, x.den), g))
        return d

    # -- Gaussian machinery over the fraction field ---------------------------

    def rref(self):
        """Reduced row echelon form; returns (R, pivot_columns)."""
        m = [row[:] for row in self.rows]
        pivots = []
        r = 0
        for j in range(self.ncols):
            p = next((i for i in range(r, len(m)) if m[i][j]), None)
            if p is None:
                continue
            m[r], m[p] = m[p], m[r]
            inv = m[r][j].inverse()
            m[r] = [x * inv for x in m[r]]
            for i in range(len(m)):
                if i != r and m[i][j]:
                    c = m[i][j]
                    m[i] = [a - c * b for a, b in zip(m[i], m[r])]
            pivots.append(j)
            r += 1
            if r == len(m):
                break
        return Matrix(self.ring, m, self.ncols), pivots

    def rank(self):
        return len(self.rref()[1])

    def det(self):
        if self.nrows != self.ncols:
            raise ValueError("determinant of non-square matrix")
        m = [row[:] for row in self.rows]
        n = self.nrows
        det = frac1(self.ring)
        for j in range(n):
            p = next((i for i in range(j, n) if m[i][j]), None)
            if p is None:
                return frac0(self.ring)
            if p != j:
                m[j], m[p] = m[p], m[j]
                det = -det
            det = det * m[j][j]
            inv = m[j][j].inverse()
            for i in range(j + 1, n):
                if m[i][j]:
                    c = m[i][j] * inv
                    m[i] = [a - c * b for a, b in zip(m[i], m[j])]
        return det

    def inverse(self):
        if self.nrows != self.ncols:
            raise ValueError("inverse of non-square matrix")
        n = self.nrows
        aug = self.hstack(Matrix.identity(self.ring, n))
        red, pivots = aug.rref()
        if pivots[: n] != list(range(n)):
            raise ValueError("matrix is singular")
        return Matrix(self.ring, [row[n:] for row in red.rows], n)

    def row_kernel(self):
        """Basis of {v : v * self = 0}, as a Matrix (possibly 0 rows)."""
        # v*M = 0  <=>  M^T v^T = 0 : read the kernel off the rref of M^T.
        mt = Matrix(self.ring, [list(col) for col in zip(*self.rows)], self.nrows) \
            if self.rows else Matrix(self.ring, [], self.nrows)
        red, pivots = mt.rref()
        free = [j for j in range(self.nrows) if j not in pivots]
        zero, one = frac0(self.ring), frac1(self.ring)
        rows = []
        for f in free:
            v = [zero] * self.nrows
            v[f] = one
            for r_i, p in enumerate(pivots):
                v[p] = -red.rows[r_i][f]
            rows.append(v)
        return Matrix(self.ring, rows, self.nrows)

    def trace(self):
        acc = frac0(self.ring)
        for i in range(min(self.nrows, self.ncols)):
            acc = acc + self.rows[i][i]
        return acc

    def charpoly(self):
        """Coefficients of det(xI - self), lowest degree first, monic."""
        if self.nrows != self.ncols:
            raise ValueError("charpoly of non-square matrix")
        n = self.nrows
        zero, one = frac0(self.ring), frac1(self.ring)
        if n == 0:
            return [one]
        h = [row[:] for row in self.rows]
        # similarity reduction to upper Hessenberg form
        for j in range(n - 2):
            p = next((i for i in range(j + 1, n) if h[i][j]), None)
            if p is None:
                continue
            if p != j + 1:
                h[j + 1], h[p] = h[p], h[j + 1]
                for row in h:
                    row[j + 1], row[p] = row[p], row[j + 1]
            inv = h[j + 1][j].inverse()
            for i in range(j + 2, n):
                if h[i][j]:
                    t = h[i][j] * inv
                    h[i] = [a - t * b for a, b in zip(h[i], h[j + 1])]
                    for row in h:
                        row[j + 1] = row[j + 1] + t * row[i]
        # recurrence on leading principal char polys
        polys = [[one]]
        for m in range(1, n + 1):
            d = h[m - 1][m - 1]
            prev = polys[m - 1]
            cur = [zero] * (m + 1)  # cur = (x - d) * prev, then corrections
            for i, c in enumerate(prev):
                cur[i + 1] = cur[i + 1] + c
                cur[i] = cur[i] - d * c
            run = one
            for i in range(m - 1, 0, -1):
                run = run * h[i][i - 1]
                if run.is_zero():
                    break
                coef = h[i - 1][m - 1] * run
                if coef:
                    for k, c in enumerate(polys[i - 1]):
                        cur[k] = cur[k] - coef * c
            polys.append(cur)
        return polys[n]


# ---------------------------------------------------------------------------
# Hermite and Smith normal forms (row style, over the ground ring)


def _require_integral(m):
    if not m.is_integral():
        raise InputNotIntegral("matrix has a non-integral entry")


def hnf(m):
    """Row Hermite normal form: returns (h, u) with u unimodular, h = u*m.

    Pivots are unit-normalized (positive / monic) and the entries above
    each pivot are reduced, so the output is canonical for the row space.
    """
    _require_integral(m)
    ring = m.ring
    a = [row[:] for row in m.to_ring_rows()]
    nr, nc = len(a), m.ncols
    u = [[ring.one if i == j else ring.zero for j in range(nr)] for i in range(nr)]

    def rowop(i, k, x, y, z, w):
        # (row_i, row_k) <- (x*row_i + y*row_k, z*row_i + w*row_k)
        for mat in (a, u):
            ri, rk = mat[i], mat[k]
            for c in range(len(ri)):
                ri[c], rk[c] = (
                    ring.add(ring.mul(x, ri[c]), ring.mul(y, rk[c])),
                    ring.add(ring.mul(z, ri[c]), ring.mul(w, rk[c])),
                )

    r = 0
    for j in range(nc):
        pivot = next((i for i in range(r, nr) if not ring.is_zero(a[i][j])), None)
        if pivot is None:
            continue
        if pivot != r:
            a[r], a[pivot] = a[pivot], a[r]
            u[r], u[pivot] = u[pivot], u[r]
        for i in range(r + 1, nr):
            if ring.is_zero(a[i][j]):
                continue
            g, x, y = ring.xgcd(a[r][j], a[i][j])
            rowop(r, i, x, y,
                  ring.neg(ring.exact_div(a[i][j], g)),
                  ring.exact_div(a[r][j], g))
        unit, _ = ring.unit_normalize(a[r][j])
        if not ring.is_unit_value(unit, check_one=True):
            inv = ring.unit_inverse(unit)
            a[r] = [ring.mul(inv, c) for c in a[r]]
            u[r] = [ring.mul(inv, c) for c in u[r]]
        for i in range(r):
            if not ring.is_zero(a[i][j]):
                q, _ = ring.divmod(a[i][j], a[r][j])
                if not ring.is_zero(q):
                    nq = ring.neg(q)
                    a[i] = [ring.add(c, ring.mul(nq, d)) for c, d in zip(a[i], a[r])]
                    u[i] = [ring.add(c, ring.mul(nq, d)) for c, d in zip(u[i], u[r])]
        r += 1
        if r == nr:
            break
    h_m = Matrix(ring, [[Frac.of(ring, x) for x in row] for row in a], nc)
    u_m = Matrix(ring, [[Frac.of(ring, x) for x in row] for row in u], nr)
    return h_m, u_m


def snf(m):
    """Smith normal form: returns (s, u, v) with s = u*m*v diagonal,
    divisibility chain d_i | d_{i+1}, diagonal entries unit-normalized."""
    _require_integral(m)
    ring = m.ring
    a = [row[:] for row in m.to_ring_rows()]
    nr, nc = len(a), m.ncols
    u = [[ring.one if i == j else ring.zero for j in range(nr)] for i in range(nr)]
    v = [[ring.one if i == j else ring.zero for j in range(nc)] for i in range(nc)]

    def row_combine(i, k, x, y, z, w):
        for mat in (a, u):
            ri, rk = mat[i], mat[k]
            for c in range(len(ri)):
                ri[c], rk[c] = (
                    ring.add(ring.mul(x, ri[c]), ring.mul(y, rk[c])),
                    ring.add(ring.mul(z, ri[c]), ring.mul(w, rk[c])),
                )

    def col_combine(j, k, x, y, z, w):
        # (col_j, col_k) <- (x*col_j + y*col_k, z*col_j + w*col_k)
        for i in range(nr):
            a[i][j], a[i][k] = (
                ring.add(ring.mul(x, a[i][j]), ring.mul(y, a[i][k])),
                ring.add(ring.mul(z, a[i][j]), ring.mul(w, a[i][k])),
            )
        for i in range(nc):
            v[i][j], v[i][k] = (
                ring.add(ring.mul(x, v[i][j]), ring.mul(y, v[i][k])),
                ring.add(ring.mul(z, v[i][j]), ring.mul(w, v[i][k])),
            )

    n = min(nr, nc)
    for k in range(n):
        # find a nonzero pivot in the trailing submatrix
        pivot = None
        best = None
        for i in range(k, nr):
            for j in range(k, nc):
                if not ring.is_zero(a[i][j]):
                    sz = ring.size(a[i][j])
                    if best is None or sz < best:
                        best, pivot = sz, (i, j)
        if pivot is None:
            break
        pi, pj = pivot
        if pi != k:
            a[k], a[pi] = a[pi], a[k]
            u[k], u[pi] = u[pi], u[k]
        if pj != k:
            for row in a:
                row[k], row[pj] = row[pj], row[k]
            for row in v:
                row[k], row[pj] = row[pj], row[k]
        while True:
            for i in range(k + 1, nr):
                if ring.is_zero(a[i][k]):
                    continue
                # plain reduction when the pivot divides, so that the pivot
                # row is untouched (xgcd may return x = 0 in that case and
                # replace the pivot row, which would cycle forever)
                if ring.divides(a[k][k], a[i][k]):
                    q = ring.exact_div(a[i][k], a[k][k])
                    row_combine(k, i, ring.one, ring.zero,
                                ring.neg(q), ring.one)
                else:
                    g, x, y = ring.xgcd(a[k][k], a[i][k])
                    row_combine(k, i, x, y,
                                ring.neg(ring.exact_div(a[i][k], g)),
                                ring.exact_div(a[k][k], g))
            for j in range(k + 1, nc):
                if ring.is_zero(a[k][j]):
                    continue
                if ring.divides(a[k][k], a[k][j]):
                    q = ring.exact_div(a[k][j], a[k][k])
                    col_combine(k, j, ring.one, ring.zero,
                                ring.neg(q), ring.one)
                else:
                    g, x, y = ring.xgcd(a[k][k], a[k][j])
                    col_combine(k, j, x, y,
                                ring.neg(ring.exact_div(a[k][j], g)),
                                ring.exact_div(a[k][k], g))
            if all(ring.is_zero(a[i][k]) for i in range(k + 1, nr)) and all(
                ring.is_zero(a[k][j]) for j in range(k + 1, nc)
            ):
                # enforce divisibility of the rest by the pivot
                bad = None
                for i in range(k + 1, nr):
                    for j in range(k + 1, nc):
                        if not ring.divides(a[k][k], a[i][j]):
                            bad = (i, j)
                            break
                    if bad:
                        break
                if bad is None:
                    break
                bi, _ = bad
                for c in range(nc):
                    a[k][c] = ring.add(a[k][c], a[bi][c])
                for c in range(nr):
                    u[k][c] = ring.add(u[k][c], u[bi][c])
    for k in range(n):
        unit, _ = ring.unit_normalize(a[k][k])
        if not ring.is_zero(a[k][k]) and not ring.is_unit_value(unit, check_one=True):
            inv = ring.unit_inverse(unit)
            a[k] = [ring.mul(inv, c) for c in a[k]]
            u[k] = [ring.mul(inv, c) for c in u[k]]
    s_m = Matrix(ring, [[Frac.of(ring, x) for x in row] for row in a], nc)
    u_m = Matrix(ring, [[Frac.of(ring, x) for x in row] for row in u], nr)
    v_m = Matrix(ring, [[Frac.of(ring, x) for x in row] for row in v], nc)
    return s_m, u_m, v_m


def snf_divisors(m):
    """Nonzero diagonal entries of the Smith form, unit-normalized."""
    s = snf(m)[0]
    ring = m.ring
    out = []
    for k in range(min(s.nrows, s.ncols)):
        d = s.rows[k][k]
        if not d.is_zero():
            out.append(ring.canonical(d.integral_value()))
    return out


# ---------------------------------------------------------------------------
# lattices


class Lattice:
    """A finitely generated R-lattice in K^n with a canonical HNF basis.

    The basis has full row rank r <= n; rank 0 (the zero lattice) is
    allowed.  Equal lattices have identical basis matrices.
    """

    __slots__ = ("ring", "ambient_dim", "basis")

    def __init__(self, ring, ambient_dim, basis, _canonical=False):
        self.ring = ring
        self.ambient_dim = ambient_dim
        if not _canonical:
            raise ValueError("use Lattice.from_rows")
        self.basis = basis

    @classmethod
    def from_rows(cls, ring, rows, ambient_dim=None):
        if isinstance(rows, Matrix):
            mat = rows
            ambient_dim = mat.ncols
        else:
            rows = [[Frac.of(ring, x) for x in row] for row in rows]
            if ambient_dim is None:
                if not rows:
                    raise ValueError("ambient_dim needed for empty row list")
                ambient_dim = len(rows[0])
            mat = Matrix(ring, rows, ambient_dim)
        d = mat.denominator_lcm()
        scaled = mat.scaled(Frac.of(ring, d)) if d != ring.one else mat
        h, _ = hnf(scaled)
        keep = [row for row in h.rows if any(row)]
        dinv = Frac(ring, ring.one, d)
        basis = Matrix(ring, [[x * dinv for x in row] for row in keep], ambient_dim)
        return cls(ring, ambient_dim, basis, _canonical=True)

    @classmethod
    def standard(cls, ring, n):
        return cls(ring, n, Matrix.identity(ring, n), _canonical=True)

    @classmethod
    def zero(cls, ring, n):
        return cls(ring, n, Matrix(ring, [], n), _canonical=True)

    @property
    def rank(self):
        return self.basis.nrows

    def __eq__(self, other):
        return (
            isinstance(other, Lattice)
            and self.ambient_dim == other.ambient_dim
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self):
        return "Lattice(rank %d in dim %d)" % (self.rank, self.ambient_dim)

    def pivot_columns(self):
        pivots = []
        for row in self.basis.rows:
            pivots.append(next(j for j, x in enumerate(row) if x))
        return pivots

    def solve_in_basis(self, vec):
        """Coefficients t with t * basis = vec, or None if vec is outside
        the rational span."""
        if self.rank == 0:
            return [] if not any(vec) else None
        pivots = self.pivot_columns()
        sq = self.basis.submatrix(range(self.rank), pivots)
        t_row = Matrix(self.ring, [[vec[j] for j in pivots]], len(pivots))
        t = (t_row * sq.inverse()).rows[0]
        check = Matrix(self.ring, [t], self.rank) * self.basis
        if check.rows[0] != [Frac.of(self.ring, x) for x in vec]:
            return None
        return t

    def contains_vector(self, vec):
        t = self.solve_in_basis(vec)
        return t is not None and all(x.is_integral() for x in t)

    def contains_lattice(self, other):
        return all(self.contains_vector(row) for row in other.basis.rows)

    def add(self, other):
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("ambient dimension mismatch")
        return Lattice.from_rows(
            self.ring, self.basis.stack(other.basis), self.ambient_dim
        )

    def scaled(self, c):
        return Lattice.from_rows(self.ring, self.basis.scaled(c), self.ambient_dim)

    def dual(self):
        """For a full-rank square lattice: {y : y . x in R for all x}."""
        if self.rank != self.ambient_dim:
            raise RankDeficient("dual of a non-full-rank lattice")
        inv_t = self.basis.inverse().transpose()
        return Lattice.from_rows(self.ring, inv_t, self.ambient_dim)


def lattice_index(sub, sup):
    """Generalized index [sup : sub] as a canonical ring element."""
    if sub.ambient_dim != sup.ambient_dim or sub.rank != sup.rank:
        raise NotSublattice("lattices are not commensurable")
    ring = sub.ring
    if sub.rank == 0:
        return ring.one
    t_rows = []
    for row in sub.basis.rows:
        t = sup.solve_in_basis(row)
        if t is None:
            raise NotSublattice("sub is not inside sup's rational span")
        if not all(x.is_integral() for x in t):
            raise NotSublattice("sub is not contained in sup")
        t_rows.append(t)
    det = Matrix(ring, t_rows, sub.rank).det()
    return ring.canonical(det.integral_value())


def saturate_rows(ring, mat):
    """Saturation in R^n of the lattice spanned by the rows of mat.

    Returns a canonical Lattice; accepts rational rows (the saturation
    only depends on the rational row span intersected with R^n).
    """
    lat = Lattice.from_rows(ring, mat)
    r = lat.rank
    if r == 0:
        return lat
    _, _, v = snf(lat.basis.scaled(Frac.of(ring, lat.basis.denominator_lcm())))
    vinv = v.inverse()
    return Lattice.from_rows(ring, Matrix(ring, vinv.rows[:r], lat.ambient_dim))


def saturate(lat, ambient):
    """Smallest sublattice of `ambient` containing `lat` with torsion-free
    quotient.  Requires lat to have full rank in ambient's span."""
    if lat.ambient_dim != ambient.ambient_dim:
        raise NotSublattice("ambient dimension mismatch")
    if lat.rank < ambient.rank:
        raise RankDeficient("lattice does not span the ambient rationally")
    t_rows = []
    for row in lat.basis.rows:
        t = ambient.solve_in_basis(row)
        if t is None:
            raise NotSublattice("lattice is not inside the ambient span")
        t_rows.append(t)
    sat = saturate_rows(lat.ring, Matrix(lat.ring, t_rows, ambient.rank))
    return Lattice.from_rows(lat.ring, sat.basis * ambient.basis, ambient.ambient_dim)
