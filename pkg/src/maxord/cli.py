"""Command-line front end.

Exit codes: 0 success, 2 certified-negative result (e.g. a non-maximal
order under `certify`), 1 error with a structured {code, message,
location} record.
"""

import argparse
import json
import sys

from .errors import MaxordError, ParseError
from .exactlin import Lattice, lattice_index
from .orders import (
    discriminant,
    is_maximal_at_p,
    maximal_order,
    radical_mod_p,
)
from .serialize import (
    format_certificate,
    format_matrix,
    format_order,
    parse_algebra,
    parse_isogeny_type,
    parse_matrix,
    parse_order,
    parse_period_lattice,
    parse_presentation,
    parse_primes,
)
from .serre import minimal_isogeny, tensor_isogeny_class, tensor_lattice


def _load(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise ParseError("cannot read %s: %s" % (path, exc))
    except json.JSONDecodeError as exc:
        raise ParseError("invalid JSON in %s: %s" % (path, exc))


def _emit(doc, args):
    if args.format == "text":
        lines = []

        def walk(prefix, val):
            if isinstance(val, dict):
                for k in sorted(val):
                    walk(prefix + "." + k if prefix else k, val[k])
            elif isinstance(val, list):
                lines.append("%s: %s" % (prefix, json.dumps(val)))
            else:
                lines.append("%s: %s" % (prefix, val))

        walk("", doc)
        text = "\n".join(lines) + "\n"
    else:
        text = json.dumps(doc, sort_keys=True, separators=(", ", ": ")) + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _candidate_primes(order, args):
    ring = order.algebra.ring
    primes = []
    disc = discriminant(order)
    if disc != ring.zero:
        primes = [q for q, _ in ring.factor(disc)]
    for q in parse_primes(ring, args.primes or ""):
        q = ring.canonical(q)
        if q not in primes:
            primes.append(q)
    return primes


def _load_idempotents(alg, args):
    if not args.idempotents_file:
        return None
    doc = _load(args.idempotents_file)
    from .serialize import parse_frac
    return [alg.element([parse_frac(alg.ring, c) for c in row]) for row in doc]


def cmd_center(args):
    alg = parse_algebra(_load(args.input))
    basis = [ [str(c) for c in z.coords] for z in alg.center() ]
    _emit({"center": basis, "dim": len(basis)}, args)
    return 0


def cmd_decompose(args):
    alg = parse_algebra(_load(args.input))
    idems = _load_idempotents(alg, args)
    if idems is None:
        idems = alg.central_idempotents(seed=args.seed)
    from .algebras import decompose
    dec = decompose(alg, idems)
    _emit({
        "idempotents": [[str(c) for c in e.coords] for e in dec.idempotents],
        "factor_dims": [f.dim for f in dec.factors],
    }, args)
    return 0


def cmd_maximal_order(args):
    order = parse_order(_load(args.input))
    ring = order.algebra.ring
    idems = _load_idempotents(order.algebra, args)
    extra = parse_primes(ring, args.primes or "") or None
    out = maximal_order(order, idems=idems, extra_primes=extra, seed=args.seed)
    certs = [format_certificate(ring, is_maximal_at_p(out, q))
             for q in _candidate_primes(out, args)]
    doc = format_order(out, include_algebra=False)
    doc["index"] = ring.to_str(lattice_index(order.lattice, out.lattice))
    doc["certificates"] = certs
    _emit(doc, args)
    return 0


def cmd_certify(args):
    order = parse_order(_load(args.input))
    ring = order.algebra.ring
    certs = []
    verdict = True
    failing = None
    for q in _candidate_primes(order, args):
        cert = is_maximal_at_p(order, q)
        certs.append(format_certificate(ring, cert))
        if not cert["verdict"] and failing is None:
            verdict = False
            failing = ring.to_str(cert["prime"])
    doc = {"verdict": verdict, "certificates": certs}
    if failing is not None:
        doc["failing_prime"] = failing
    _emit(doc, args)
    return 0 if verdict else 2


def cmd_radical(args):
    order = parse_order(_load(args.input))
    ring = order.algebra.ring
    primes = parse_primes(ring, args.primes or "")
    if not primes:
        raise ParseError("radical needs --primes with exactly one prime")
    j = radical_mod_p(order, primes[0])
    _emit({
        "prime": ring.to_str(primes[0]),
        "basis": format_matrix(j.lattice.basis),
    }, args)
    return 0


def cmd_disc(args):
    order = parse_order(_load(args.input))
    ring = order.algebra.ring
    _emit({"discriminant": ring.to_str(discriminant(order))}, args)
    return 0


def cmd_endo_order(args):
    doc = _load(args.input)
    from .orders import endomorphism_order
    delta = parse_order(doc["delta"])
    ring = delta.algebra.ring
    basis = parse_matrix(ring, doc["lattice"])
    lat = Lattice.from_rows(ring, basis, basis.ncols)
    out = endomorphism_order(delta, lat, r=doc.get("r"))
    _emit(format_order(out, include_algebra=False), args)
    return 0


def cmd_serre_class(args):
    doc = _load(args.input)
    order = parse_order(doc["order"])
    pres = parse_presentation(doc, order=order)
    itype = parse_isogeny_type(doc["type"])
    emb = parse_matrix(order.algebra.ring, doc["embedding"])
    out = tensor_isogeny_class(pres, itype, emb)
    _emit({
        "factors": [
            {"label": f.label, "mult": f.mult} for f in out.factors
        ],
        "dimension": out.total_dimension(),
    }, args)
    return 0


def cmd_serre_lattice(args):
    doc = _load(args.input)
    order = parse_order(doc["order"])
    pres = parse_presentation(doc, order=order)
    t = parse_period_lattice(doc["lattice"], order)
    out, divisors = tensor_lattice(pres, t)
    ring = order.algebra.ring
    _emit({
        "rank": out.lattice.rank,
        "basis": format_matrix(out.lattice.basis),
        "kernel_divisors": [ring.to_str(d) for d in divisors],
    }, args)
    return 0


def cmd_minimal_isogeny(args):
    doc = _load(args.input)
    order = parse_order(doc["order"])
    o_prime = parse_order(doc["orderPrime"], algebra=order.algebra)
    itype = parse_isogeny_type(doc["type"])
    lattices = [parse_period_lattice(t, order) for t in doc["lattices"]]
    desc = minimal_isogeny(order, o_prime, itype, lattices)
    ring = order.algebra.ring
    _emit({
        "degree": ring.to_str(desc.degree),
        "kernels": [
            {
                "prime": p["prime"] if isinstance(p["prime"], str)
                else ring.to_str(p["prime"]),
                "elementary_divisors": [
                    ring.to_str(d) for d in p["elementaryDivisors"]
                ],
            }
            for p in desc.per_lattice_divisors
        ],
    }, args)
    return 0


def cmd_selftest(args):
    from . import selftest
    report = selftest.run(seed=args.seed)
    _emit(report, args)
    return 0 if report["ok"] else 1


COMMANDS = {
    "center": cmd_center,
    "decompose": cmd_decompose,
    "maximal-order": cmd_maximal_order,
    "certify": cmd_certify,
    "radical": cmd_radical,
    "disc": cmd_disc,
    "endo-order": cmd_endo_order,
    "serre-class": cmd_serre_class,
    "serre-lattice": cmd_serre_lattice,
    "minimal-isogeny": cmd_minimal_isogeny,
    "selftest": cmd_selftest,
}


def build_parser():
    p = argparse.ArgumentParser(
        prog="maxord",
        description="Exact construction and certification of maximal orders, "
                    "and tensor constructions on abelian-variety isogeny data.",
    )
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("input", nargs="?",
                   help="input JSON document (not needed for selftest)")
    p.add_argument("--primes", help="extra candidate primes, e.g. \"2,3\" or \"t\"")
    p.add_argument("--idempotents-file",
                   help="JSON array of central idempotent coordinate vectors")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=["json", "text"], default="json")
    p.add_argument("--output", help="write the result document here")
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.command != "selftest" and not args.input:
        print(json.dumps({"code": "ParseError",
                          "message": "missing input path",
                          "location": "cli"}), file=sys.stderr)
        return 1
    try:
        return COMMANDS[args.command](args)
    except MaxordError as exc:
        print(json.dumps(exc.record(), sort_keys=True), file=sys.stderr)
        return 1
    except Exception as exc:  # unexpected: still emit a structured record
        print(json.dumps({"code": "InternalError", "message": str(exc),
                          "location": args.command}, sort_keys=True),
              file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
