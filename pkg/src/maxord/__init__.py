"""Exact-arithmetic engine for maximal orders in semisimple algebras over
Z and F_p[t], with tensor constructions on abelian-variety isogeny data."""

__version__ = "0.1.0"
