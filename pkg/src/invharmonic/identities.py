"""Operator identities every compatible triple must satisfy, as verdicts."""

from __future__ import annotations

from .coframe import differential
from .harmonic import Verdict
from .operators import adjoint, anticommutator, build, compose, verify_identity
from .triple import CompatibleTriple, predicates, weil_star_check

__all__ = ["identity_suite"]


def _check(name: str, lhs, rhs) -> Verdict:
    res = verify_identity(lhs, rhs)
    return Verdict(name, True, res.ok, res.describe())


def _zero_like(op):
    return op - op


def identity_suite(t: CompatibleTriple) -> list[Verdict]:
    """Squares, adjoint relation, star relations, Weil formula and the two
    anticommutator criteria."""
    d, dc, dl = build(t, "d"), build(t, "dc"), build(t, "dLambda")
    star, ss, J = build(t, "star"), build(t, "star_s"), build(t, "J")
    ident = build(t, "identity")
    out = []
    for op, label in ((d, "d"), (dc, "dc"), (dl, "dL")):
        sq = compose(op, op)
        out.append(_check(f"{label}^2 = 0", sq, _zero_like(sq)))
    out.append(_check("dL = dc*", dl, adjoint(dc)))
    out.append(_check("* = J *s", star, compose(J, ss)))
    out.append(_check("* = *s J", star, compose(ss, J)))
    out.append(_check("*s^2 = 1", compose(ss, ss), ident))
    w = weil_star_check(t)
    detail = "pass" if w.ok else f"fails for a primitive {w.k}-form at r = {w.r}"
    out.append(Verdict("Weil formula on a primitive basis", True, w.ok, detail))

    pr = predicates(t)
    ac = anticommutator(d, dc)
    vanishes = ac.is_zero()
    out.append(Verdict("d dc + dc d = 0 iff J integrable", True, vanishes == pr.integrable,
                       f"anticommutator {'vanishes' if vanishes else 'nonzero'}, integrable={pr.integrable}"))
    closed = not differential(t.alg, t.omega)
    al = anticommutator(d, dl)
    if closed:
        out.append(_check("d dL + dL d = 0 (d omega = 0)", al, _zero_like(al)))
    else:
        out.append(Verdict("d dL + dL d = 0 (d omega = 0)", False, False, "d omega != 0"))
    return out
