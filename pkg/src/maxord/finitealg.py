"""Linear algebra and algebra structure over prime fields F_p.

Everything here works with plain ints reduced mod p, row-vector
convention as elsewhere in the package.
"""

from .errors import DimensionTooLarge, InternalError


def inv_mod(a, p):
    return pow(a % p, p - 2, p)


def rref_mod(rows, ncols, p):
    """Reduced row echelon form over F_p; returns (rows, pivot_columns)."""
    mat = [[x % p for x in row] for row in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(mat)) if mat[i][c]), None)
        if pr is None:
            continue
        mat[r], mat[pr] = mat[pr], mat[r]
        inv = inv_mod(mat[r][c], p)
        mat[r] = [(x * inv) % p for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [(x - f * y) % p for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
    return mat[:r], pivots


def span_basis(rows, ncols, p):
    red, _ = rref_mod(rows, ncols, p)
    return red


def in_span(basis_rows, pivots, vec, p):
    """Membership test against an rref basis; returns residual (zero iff in)."""
    v = [x % p for x in vec]
    for row, c in zip(basis_rows, pivots):
        if v[c]:
            f = v[c]
            v = [(x - f * y) % p for x, y in zip(v, row)]
    return v


def solve_mod(rows, ncols, vec, p):
    """Solve x * M = vec where rows of M span the target; None if unsolvable."""
    aug = [list(row) + [0] for row in rows]
    # transpose trick: solve via rref of [M^T | vec^T]
    mt = [[rows[i][j] for i in range(len(rows))] + [vec[j] % p]
          for j in range(ncols)]
    red, pivots = rref_mod(mt, len(rows) + 1, p)
    if len(rows) in pivots:
        return None
    sol = [0] * len(rows)
    for row, c in zip(red, pivots):
        sol[c] = row[len(rows)]
    # verify (rows need not be independent)
    for j in range(ncols):
        if sum(sol[i] * rows[i][j] for i in range(len(rows))) % p != vec[j] % p:
            return None
    del aug
    return sol


def kernel_mod(rows, ncols, p):
    """Basis of {x : x * M = 0} for the matrix with the given rows."""
    n = len(rows)
    mt = [[rows[i][j] for i in range(n)] for j in range(ncols)]
    red, pivots = rref_mod(mt, n, p)
    free = [c for c in range(n) if c not in pivots]
    out = []
    for fc in free:
        v = [0] * n
        v[fc] = 1
        for row, c in zip(red, pivots):
            v[c] = (-row[fc]) % p
        out.append(v)
    return out


def matmul_mod(a, b, p):
    if not a or not b:
        return [[0] * (len(b[0]) if b else 0) for _ in a]
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) % p for col in bt] for row in a]


def charpoly_mod(mat, p):
    """Characteristic polynomial coefficients over F_p, lowest degree first,
    monic, via Hessenberg reduction."""
    n = len(mat)
    h = [[x % p for x in row] for row in mat]
    for c in range(n - 2):
        pr = next((r for r in range(c + 1, n) if h[r][c]), None)
        if pr is None:
            continue
        if pr != c + 1:
            h[pr], h[c + 1] = h[c + 1], h[pr]
            for r in range(n):
                h[r][pr], h[r][c + 1] = h[r][c + 1], h[r][pr]
        inv = inv_mod(h[c + 1][c], p)
        for r in range(c + 2, n):
            if h[r][c]:
                f = (h[r][c] * inv) % p
                h[r] = [(x - f * y) % p for x, y in zip(h[r], h[c + 1])]
                for rr in range(n):
                    h[rr][c + 1] = (h[rr][c + 1] + f * h[rr][r]) % p
    polys = [[1]]  # charpoly of top-left 0x0 block
    for m in range(1, n + 1):
        prev = polys[m - 1]
        d = h[m - 1][m - 1]
        cur = [0] * (m + 1)
        for i, c in enumerate(prev):
            cur[i + 1] = (cur[i + 1] + c) % p
            cur[i] = (cur[i] - d * c) % p
        run = 1
        for i in range(m - 1, 0, -1):
            run = (run * h[i][i - 1]) % p
            f = (run * h[i - 1][m - 1]) % p
            if f:
                for idx, c in enumerate(polys[i - 1]):
                    cur[idx] = (cur[idx] - f * c) % p
        polys.append(cur)
    return polys[n]


class FiniteAlgebra:
    """Associative unital algebra over F_p given by structure constants."""

    def __init__(self, p, table, one_coords):
        self.p = p
        self.dim = len(table)
        self.table = [
            [[c % p for c in table[i][j]] for j in range(self.dim)]
            for i in range(self.dim)
        ]
        self.one_coords = [c % p for c in one_coords]

    def mul(self, x, y):
        p = self.p
        out = [0] * self.dim
        for i, xi in enumerate(x):
            if not xi % p:
                continue
            ti = self.table[i]
            for j, yj in enumerate(y):
                if not yj % p:
                    continue
                f = (xi * yj) % p
                for k, c in enumerate(ti[j]):
                    if c:
                        out[k] = (out[k] + f * c) % p
        return out

    def left_mul_matrix(self, a):
        """Rows i: coords of a * b_i; coords(a*x) = coords(x) * M."""
        basis = self.basis()
        return [self.mul(a, basis[i]) for i in range(self.dim)]

    def basis(self):
        out = []
        for i in range(self.dim):
            v = [0] * self.dim
            v[i] = 1
            out.append(v)
        return out

    def charpoly(self, a):
        return charpoly_mod(self.left_mul_matrix(a), self.p)

    # -- radical (characteristic-p safe) --------------------------------------

    def radical_basis(self):
        """Basis of the Jacobson radical.

        Uses the tower of subspaces cut out by the characteristic-polynomial
        coefficient maps g_i(x) = [lambda^(n - p^i)] charpoly(L_x), which are
        F_p-linear on each successive subspace; the final subspace is the
        radical.
        """
        p, n = self.p, self.dim
        current = self.basis()  # rows spanning R_i
        i = 0
        power = 1  # p^i
        while True:
            # g_i applied to products x*y for x in span(current), y in current:
            # linear conditions on x in coordinates of `current`
            m = len(current)
            if m == 0:
                return []
            cond = []
            for y in current:
                col = []
                for x in current:
                    cp = self.charpoly(self.mul(x, y))
                    col.append(cp[n - power] % p)
                cond.append(col)
            # rows indexed by x-coordinate, columns by y: kernel over the
            # x-coefficients
            mat = [[cond[jy][ix] for jy in range(m)] for ix in range(m)]
            ker = kernel_mod(mat, m, p)
            nxt = []
            for kv in ker:
                row = [0] * n
                for c, base in zip(kv, current):
                    if c:
                        row = [(r + c * b) % p for r, b in zip(row, base)]
                nxt.append(row)
            nxt = span_basis(nxt, n, p)
            current = nxt
            if power * p > n:
                return current
            i += 1
            power *= p

    # -- quotients ------------------------------------------------------------

    def quotient(self, ideal_rows):
        """Quotient by a two-sided ideal.

        Returns (quotient_algebra, project, lift) where project maps parent
        coords to quotient coords and lift picks representatives.
        """
        p, n = self.p, self.dim
        ired, ipiv = rref_mod(ideal_rows, n, p)
        comp_cols = [c for c in range(n) if c not in ipiv]
        q = len(comp_cols)

        def project(vec):
            res = in_span(ired, ipiv, vec, p)
            return [res[c] for c in comp_cols]

        def lift(qvec):
            out = [0] * n
            for c, v in zip(comp_cols, qvec):
                out[c] = v % p
            return out

        table = []
        for a in range(q):
            row = []
            for b in range(q):
                prod = self.mul(lift([1 if t == a else 0 for t in range(q)]),
                                lift([1 if t == b else 0 for t in range(q)]))
                row.append(project(prod))
            table.append(row)
        quot = FiniteAlgebra(p, table, project(self.one_coords))
        return quot, project, lift

    def semisimple_quotient(self):
        return self.quotient(self.radical_basis())

    # -- center and simple factors --------------------------------------------

    def center_basis(self):
        p, n = self.p, self.dim
        basis = self.basis()
        lmats = [self.left_mul_matrix(b) for b in basis]
        rmats = [[self.mul(basis[i], b) for i in range(n)] for b in basis]
        big = []
        for i in range(n):
            row = []
            for j in range(n):
                row.extend(
                    (rmats[j][i][k] - lmats[j][i][k]) % p for k in range(n)
                )
            big.append(row)
        return kernel_mod(big, n * n, p)

    def frobenius_fixed_center(self):
        """Basis of {z in center : z^p = z}, whose F_p-dimension equals the
        number of simple factors when the algebra is semisimple."""
        p, n = self.p, self.dim
        zb = self.center_basis()
        m = len(zb)
        if m == 0:
            return []
        # matrix of z -> z^p - z on the center, in the zb coordinates
        rows = []
        for z in zb:
            zp = self._elt_pow(z, p)
            diff = [(a - b) % p for a, b in zip(zp, z)]
            sol = solve_mod(zb, n, diff, p)
            if sol is None:
                raise InternalError("center is not closed under x -> x^p")
            rows.append(sol)
        ker = kernel_mod(rows, m, p)
        out = []
        for kv in ker:
            row = [0] * n
            for c, base in zip(kv, zb):
                if c:
                    row = [(r + c * b) % p for r, b in zip(row, base)]
            out.append(row)
        return span_basis(out, n, p)

    def _elt_pow(self, z, e):
        acc = list(self.one_coords)
        base = z
        while e:
            if e & 1:
                acc = self.mul(acc, base)
            base = self.mul(base, base)
            e >>= 1
        return acc

    def count_simple_factors(self):
        """Number of simple factors of the semisimple quotient."""
        quot, _, _ = self.semisimple_quotient()
        if quot.dim == 0:
            return 0
        return len(quot.frobenius_fixed_center())

    def primitive_central_idempotents(self):
        """Primitive central idempotents; requires the algebra semisimple."""
        p, n = self.p, self.dim
        if n == 0:
            return []
        fixed = self.frobenius_fixed_center()
        idems = [list(self.one_coords)]
        for z in fixed:
            refined = []
            for e in idems:
                w = self.mul(z, e)
                # minimal relation among e, w, w^2, ... ; roots are in F_p
                powers = [list(e)]
                rel = None
                while rel is None:
                    nxt = self.mul(powers[-1], w)
                    rel = solve_mod(powers, n, nxt, p)
                    if rel is None:
                        powers.append(nxt)
                # min poly of w (with identity e): x^d - sum rel_i x^i
                roots = [a for a in range(p)
                         if (pow_eval(rel, a, p) - pow(a, len(rel), p)) % p == 0]
                if len(roots) != len(rel):
                    raise InternalError(
                        "central element has eigenvalues outside F_p"
                    )
                for a in roots:
                    ea = list(e)
                    denom = 1
                    for b in roots:
                        if b == a:
                            continue
                        ea = self.mul(
                            ea, [(w[t] - b * e[t]) % p for t in range(n)]
                        )
                        denom = (denom * (a - b)) % p
                    ea = [(x * inv_mod(denom, p)) % p for x in ea]
                    if any(ea):
                        refined.append(ea)
            idems = refined
        # sanity: orthogonal idempotents summing to one
        total = [0] * n
        for e in idems:
            if self.mul(e, e) != e:
                raise InternalError("idempotent refinement failed")
            total = [(a + b) % p for a, b in zip(total, e)]
        if total != self.one_coords:
            raise InternalError("idempotents do not sum to 1")
        idems.sort()
        return idems

    # -- two-sided ideals ------------------------------------------------------

    def two_sided_ideal_generated(self, x):
        """Span basis of the two-sided ideal generated by x (with 1 in A)."""
        basis = self.basis()
        gens = [self.mul(self.mul(bi, x), bj) for bi in basis for bj in basis]
        return span_basis(gens, self.dim, self.p)

    def all_two_sided_ideals(self, max_elements=200000):
        """Every two-sided ideal, as tuples of rref basis rows.

        Enumerates cyclic ideals over all p^dim elements, then closes the
        collection under sums.  Guarded against combinatorial blowup.
        """
        p, n = self.p, self.dim
        if n > 16:
            raise DimensionTooLarge("residue algebra dimension %d > 16" % n)
        if p ** n > max_elements:
            raise DimensionTooLarge(
                "residue algebra has %d elements" % (p ** n)
            )
        seen = set()
        seen.add(())  # zero ideal
        vec = [0] * n
        for count in range(p ** n):
            rem = count
            for t in range(n):
                vec[t] = rem % p
                rem //= p
            if not any(vec):
                continue
            ideal = self.two_sided_ideal_generated(vec)
            seen.add(tuple(tuple(r) for r in ideal))
        # close under sums
        changed = True
        while changed:
            changed = False
            items = list(seen)
            for a in items:
                for b in items:
                    s = span_basis([list(r) for r in a + b], n, p)
                    key = tuple(tuple(r) for r in s)
                    if key not in seen:
                        seen.add(key)
                        changed = True
        return sorted(seen)


def pow_eval(coeffs, a, p):
    """Evaluate sum coeffs[i] * a^i mod p."""
    acc = 0
    pw = 1
    for c in coeffs:
        acc = (acc + c * pw) % p
        pw = (pw * a) % p
    return acc
