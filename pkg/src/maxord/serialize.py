"""JSON (de)serialization for ground rings, matrices, algebras, orders,
isogeny types, presentations, and period lattices.

All numbers travel as strings: "n" or "n/d" over Z, coefficient strings
like "t^2+1" over a polynomial ground ring.  No floats anywhere.
"""

import re

from .errors import ParseError
from .exactlin import Lattice, Matrix
from .algebras import (
    Algebra,
    matrix_algebra,
    poly_quotient_algebra,
    quaternion_algebra,
)
from .orders import Order
from .rings import ZZ, Frac, poly_ring


# -- ground rings -----------------------------------------------------------


def parse_ground(obj):
    if obj == "Z":
        return ZZ
    if isinstance(obj, dict) and "poly" in obj:
        spec = obj["poly"]
        try:
            return poly_ring(int(spec["p"]), spec.get("var", "t"))
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError("bad polynomial ring spec: %s" % exc)
    raise ParseError("unrecognized ground ring %r" % (obj,))


def format_ground(ring):
    if ring.kind == "Z":
        return "Z"
    return {"poly": {"p": ring.p, "var": ring.var}}


# -- scalars and matrices ---------------------------------------------------


def parse_frac(ring, s):
    try:
        return Frac.from_str(ring, s)
    except Exception as exc:
        raise ParseError("bad number %r: %s" % (s, exc))


def format_frac(f):
    return str(f)


def parse_matrix(ring, rows, ncols=None):
    if not isinstance(rows, list) or any(not isinstance(r, list) for r in rows):
        raise ParseError("matrix must be an array of arrays")
    parsed = [[parse_frac(ring, x) for x in row] for row in rows]
    if ncols is None:
        if not parsed:
            raise ParseError("empty matrix needs an explicit width")
        ncols = len(parsed[0])
    return Matrix(ring, parsed, ncols)


def format_matrix(m):
    return [[format_frac(x) for x in row] for row in m.rows]


# -- polynomial strings (for poly_quotient moduli) --------------------------

_TERM = re.compile(
    r"^(?P<coef>[^*a-su-z]*?)\*?(?P<var>[a-su-z])?(?:\^(?P<exp>\d+))?$"
)


def parse_poly_string(ring, s, var="x"):
    """Parse a monic-friendly polynomial like "x^2-5" or "x^2+t" into a
    coefficient list (lowest degree first) of Frac over the ring.

    Coefficients must be single terms (integers, fractions, or ring
    monomials like "t^2"); parenthesized coefficients are not supported.
    """
    s = s.replace(" ", "")
    if not s:
        raise ParseError("empty polynomial string")
    chunks = re.findall(r"[+-]?[^+-]+", s)
    coeffs = {}
    for chunk in chunks:
        sign = -1 if chunk.startswith("-") else 1
        body = chunk.lstrip("+-")
        if var in body:
            head, _, tail = body.partition(var)
            exp = 1
            if tail.startswith("^"):
                exp = int(tail[1:])
            elif tail:
                raise ParseError("bad term %r" % chunk)
            head = head.rstrip("*")
            coef = parse_frac(ring, head) if head else Frac.of(ring, ring.one)
        else:
            exp = 0
            coef = parse_frac(ring, body)
        if sign < 0:
            coef = -coef
        coeffs[exp] = coeffs.get(exp, Frac.of(ring, ring.zero)) + coef
    deg = max(coeffs)
    return [coeffs.get(k, Frac.of(ring, ring.zero)) for k in range(deg + 1)]


# -- algebras ---------------------------------------------------------------


def parse_algebra(obj, ring=None):
    if obj == "Q":
        return Algebra(ZZ, [[[1]]], [1], basis_names=["1"],
                       trusted_semisimple=True, validate=False)
    if not isinstance(obj, dict):
        raise ParseError("algebra must be an object or \"Q\"")
    if ring is None and "ground" in obj:
        ring = parse_ground(obj["ground"])
    if ring is None:
        ring = ZZ
    trusted = bool(obj.get("trusted_semisimple", False))
    if "matrix" in obj:
        return matrix_algebra(ring, int(obj["matrix"]["n"]))
    if "quaternion" in obj:
        spec = obj["quaternion"]
        return quaternion_algebra(ring, parse_frac(ring, spec["a"]),
                                  parse_frac(ring, spec["b"]))
    if "poly_quotient" in obj:
        spec = obj["poly_quotient"]
        var = spec.get("var", "x")
        coeffs = parse_poly_string(ring, spec["modulus"], var)
        return poly_quotient_algebra(ring, coeffs, var=var,
                                     trusted_semisimple=trusted)
    if "mul" in obj:
        dim = int(obj["dim"])
        mul = obj["mul"]
        table = [
            [[parse_frac(ring, mul[i][j][k]) for k in range(dim)]
             for j in range(dim)]
            for i in range(dim)
        ]
        one = [parse_frac(ring, c) for c in obj["one"]]
        return Algebra(ring, table, one,
                       basis_names=obj.get("basis"),
                       trusted_semisimple=trusted)
    raise ParseError("unrecognized algebra spec")


def format_algebra(alg):
    return {
        "ground": format_ground(alg.ring),
        "dim": alg.dim,
        "basis": list(alg.basis_names),
        "mul": [
            [[format_frac(c) for c in alg.table[i][j]] for j in range(alg.dim)]
            for i in range(alg.dim)
        ],
        "one": [format_frac(c) for c in alg.one_coords],
    }


# -- orders -----------------------------------------------------------------


def parse_order(obj, algebra=None):
    if not isinstance(obj, dict) or "basis" not in obj:
        raise ParseError("order needs a basis matrix")
    if algebra is None:
        if "algebra" not in obj:
            raise ParseError("order needs an inline algebra")
        algebra = parse_algebra(obj["algebra"])
    basis = parse_matrix(algebra.ring, obj["basis"], algebra.dim)
    return Order(algebra, Lattice.from_rows(algebra.ring, basis, algebra.dim))


def format_order(order, include_algebra=True):
    doc = {"basis": format_matrix(order.lattice.basis)}
    if include_algebra:
        doc["algebra"] = format_algebra(order.algebra)
    return doc


def format_certificate(ring, cert):
    return {
        "prime": ring.to_str(cert["prime"]),
        "idealizer_fixed": cert["idealizerFixed"],
        "residue_simple": cert["residueSimple"],
        "verdict": cert["verdict"],
    }


# -- primes -----------------------------------------------------------------


def parse_primes(ring, text):
    """Parse a --primes flag value like "2,3" or "t,t^2+t+1"."""
    out = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        try:
            out.append(ring.from_str(chunk))
        except Exception as exc:
            raise ParseError("bad prime %r: %s" % (chunk, exc))
    return out


# -- Serre tensor data ------------------------------------------------------


def parse_isogeny_type(obj):
    from .serre import IsogenyFactor, IsogenyType

    if not isinstance(obj, dict) or "factors" not in obj:
        raise ParseError("isogeny type needs a factors array")
    factors = []
    for f in obj["factors"]:
        factors.append(IsogenyFactor(
            f["label"], int(f["dim"]), parse_algebra(f["endo"]), int(f["mult"])
        ))
    return IsogenyType(factors)


def format_isogeny_type(itype):
    return {
        "factors": [
            {
                "label": f.label,
                "dim": f.dimB,
                "endo": format_algebra(f.endo),
                "mult": f.mult,
            }
            for f in itype.factors
        ]
    }


def parse_presentation(obj, order=None):
    from .serre import ModulePresentation

    if order is None:
        order = parse_order(obj["order"])
    alg = order.algebra
    alpha = []
    for row in obj["alpha"]:
        alpha.append([
            alg.element([parse_frac(alg.ring, c) for c in entry])
            for entry in row
        ])
    s = obj.get("s")
    return ModulePresentation(order, alpha, s=int(s) if s else None)


def parse_period_lattice(obj, order):
    from .serre import PeriodLattice

    ring = order.algebra.ring
    basis = parse_matrix(ring, obj["basis"])
    lat = Lattice.from_rows(ring, basis, basis.ncols)
    action = [parse_matrix(ring, a, basis.ncols) for a in obj["action"]]
    return PeriodLattice(order, lat, action, prime=obj.get("prime", "generic"))
