"""Built-in models with their published dimension vectors.

Four models carry structure equations and are recomputed: the torus, the
primary Kodaira surface, the Hopf surface and the Kodaira-Thurston manifold
with an almost Kahler structure. The hyperelliptic, Inoue S_M, secondary
Kodaira and Inoue S^+- classes ship as stubs: only their topological data
(b1, b+, b-) and published values are stored, so their d+dc vectors are
checked through the Bott-Chern diamond and their d+dL vectors are carried
as stated.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .coframe import CoframeAlgebra, check_integrability_d, invariant_betti
from .diamonds import TopologicalData, bc_diamond, ddc_totals
from .exterior import Form, generator, parse_form, substitute
from .harmonic import FAMILIES, Verdict, dimension_table
from .linalg import Matrix
from .scalars import ZERO
from .triple import CompatibleTriple, TripleError, make_triple, predicates, standard_j

__all__ = [
    "Expectation",
    "CatalogEntry",
    "catalog",
    "get",
    "names",
    "run_regressions",
    "alternative_triples",
    "change_coframe",
]

PAPER, DERIVED, TRIVIAL = "PAPER", "DERIVED", "TRIVIAL"


@dataclass(frozen=True)
class Expectation:
    family: str  # "d+dc", "d+dL" or "betti"
    values: tuple[int | None, ...]  # None where no value is stated
    provenance: str
    citation: str


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    title: str
    klass: str  # class letter in the surface classification, or "" if none
    algebra: CoframeAlgebra | None
    jmat: Matrix | None
    topology: TopologicalData | None
    expectations: tuple[Expectation, ...]
    flags: dict = field(default_factory=dict)

    @property
    def is_stub(self) -> bool:
        return self.algebra is None

    def triple(self) -> CompatibleTriple:
        if self.is_stub:
            raise ValueError(f"{self.name} is a stub without structure equations")
        return make_triple(self.algebra, self.jmat)

    def expected(self, family: str) -> Expectation | None:
        return next((e for e in self.expectations if e.family == family), None)


def _alg(dim: int, eqs: dict[int, str], name: str) -> CoframeAlgebra:
    dgen = [Form(dim) for _ in range(dim)]
    for i, text in eqs.items():
        dgen[i - 1] = parse_form(text, dim)
    return CoframeAlgebra(dim, dgen, name).validated()


# J for the Kodaira-Thurston structure: e1 -> -e4, e2 -> -e3, e3 -> e2, e4 -> e1,
# so omega = e14 + e23, which is closed for d e4 = e12.
_KT_J = Matrix([[0, 0, 0, -1], [0, 0, -1, 0], [0, 1, 0, 0], [1, 0, 0, 0]])


def _table_cite(klass: str, title: str) -> str:
    return f"published table of h_(d+dc), h_(d+dL), class ({klass}) {title}"


def _build() -> tuple[CatalogEntry, ...]:
    std = standard_j(4)
    entries = []

    def full(name, title, klass, alg, jmat, td, ddc, ddl, betti, betti_prov, flags):
        cite = _table_cite(klass, title) if klass else f"published proposition on the {title}"
        exps = (
            Expectation("d+dc", tuple(ddc), PAPER, cite),
            Expectation("d+dL", tuple(ddl), PAPER, cite),
            Expectation("betti", tuple(betti), betti_prov[0], betti_prov[1]),
        )
        entries.append(CatalogEntry(name, title, klass, alg, jmat, td, exps, flags))

    full("torus", "complex torus", "A", CoframeAlgebra.abelian(4, "torus"), std,
         TopologicalData(4, 3, 3), [1, 4, 6, 4, 1], [1, 4, 6, 4, 1], [1, 4, 6, 4, 1],
         (TRIVIAL, "zero differential"),
         {"integrable": True, "almost_kahler": True, "kahler": True})
    # d f1 = 0, d f2 = f1 ^ conj(f1) with f^j = e^(2j-1) + i e^(2j)
    full("kodaira", "primary Kodaira surface", "D", _alg(4, {4: "-2 e12"}, "kodaira"), std,
         TopologicalData(3, 2, 2), [1, 2, 5, 4, 1], [1, 3, 4, 2, 1], [1, 3, 4, 3, 1],
         (PAPER, "b1 = 3, b2 = 4 for primary Kodaira surfaces"),
         {"integrable": True, "almost_kahler": False, "kahler": False})
    full("hopf", "Hopf surface", "", _alg(4, {2: "-1 e34", 3: "1 e24", 4: "-1 e23"}, "hopf"), std,
         TopologicalData(1, 0, 0), [1, 0, 1, 2, 1], [1, 1, 0, 0, 1], [1, 1, 0, 1, 1],
         (PAPER, "b1 = 1, b2 = 0 for the Hopf surface"),
         {"integrable": True, "almost_kahler": False, "kahler": False})
    kt_cite = "published Kodaira-Thurston almost Kahler example: h1_(d+dc) = 2, h1_(d+dL) = b1 = 3"
    entries.append(CatalogEntry(
        "kodaira-thurston", "Kodaira-Thurston manifold", "",
        _alg(4, {4: "1 e12"}, "kodaira-thurston"), _KT_J, None,
        (Expectation("d+dc", (None, 2, None, None, None), PAPER, kt_cite),
         Expectation("d+dL", (None, 3, None, None, None), PAPER, kt_cite),
         Expectation("betti", (1, 3, 4, 3, 1), DERIVED, "nilmanifold of the Heisenberg algebra times R")),
        {"integrable": False, "almost_kahler": True, "kahler": False}))

    for name, title, klass, td, ddc, ddl in (
        ("hyperelliptic", "hyperelliptic surface", "B", TopologicalData(2, 1, 1),
         [1, 2, 2, 2, 1], [1, 2, 2, 2, 1]),
        ("inoue-sm", "Inoue surface S_M", "C", TopologicalData(1, 0, 0), [1, 0, 1, 2, 1], [1, 1, 0, 0, 1]),
        ("secondary-kodaira", "secondary Kodaira surface", "E", TopologicalData(1, 0, 0),
         [1, 0, 1, 2, 1], [1, 1, 0, 0, 1]),
        ("inoue-spm", "Inoue surface S^+-", "F", TopologicalData(1, 0, 0), [1, 0, 1, 2, 1], [1, 1, 0, 0, 1]),
    ):
        cite = _table_cite(klass, title)
        exps = (Expectation("d+dc", tuple(ddc), PAPER, cite),
                Expectation("d+dL", tuple(ddl), PAPER, cite + " (stated, not recomputed)"),
                Expectation("betti", tuple(td.betti), PAPER, f"b1 = {td.b1}, b2 = {td.b2}"))
        entries.append(CatalogEntry(name, title, klass, None, None, td, exps, {}))
    return tuple(entries)


_CATALOG: tuple[CatalogEntry, ...] | None = None


def catalog() -> tuple[CatalogEntry, ...]:
    global _CATALOG
    if _CATALOG is None:
        _CATALOG = _build()
    return _CATALOG


def names() -> list[str]:
    return [e.name for e in catalog()]


def get(name: str) -> CatalogEntry:
    for e in catalog():
        if e.name == name:
            return e
    raise KeyError(f"no catalog model named {name!r}; available: {', '.join(names())}")


# alternative invariant triples ------------------------------------------------


def change_coframe(alg: CoframeAlgebra, a: Matrix) -> CoframeAlgebra:
    """Structure equations in the coframe e'^i = sum_j a[i][j] e^j."""
    n = alg.dim
    inv = a.inverse()
    # e^j in terms of the new coframe
    images = []
    for j in range(n):
        f = Form(n)
        for k in range(n):
            if inv[j, k]:
                f = f + generator(n, k + 1) * inv[j, k]
        images.append(f)
    dgen = []
    for i in range(n):
        f = Form(n)
        for j in range(n):
            if a[i, j]:
                f = f + substitute(alg.dgen[j], images) * a[i, j]
        dgen.append(f)
    return CoframeAlgebra(n, dgen, alg.name)


def _commutant(jmat: Matrix) -> list[Matrix]:
    n = jmat.nrows
    rows = []
    # X J - J X = 0, unknowns X[r][c] in row-major order
    for i in range(n):
        for j in range(n):
            row = [ZERO] * (n * n)
            for k in range(n):
                row[i * n + k] = row[i * n + k] + jmat[k, j]
                row[k * n + j] = row[k * n + j] - jmat[i, k]
            rows.append(row)
    return [Matrix([v[r * n:(r + 1) * n] for r in range(n)], n) for v in Matrix(rows, n * n).nullspace()]


def _candidates(jmat: Matrix, orthogonal: bool):
    n = jmat.nrows
    ident = Matrix.identity(n)
    if not orthogonal:
        # complex-linear changes keep J and move the metric
        for x in _commutant(jmat):
            for s in (1, 2, -1):
                yield ident + x.scale(s)
    # rational rotations in coordinate planes keep the metric and move J
    c, s = Fraction(3, 5), Fraction(4, 5)
    for p, q in itertools.combinations(range(n), 2):
        rows = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        rows[p][p], rows[p][q], rows[q][p], rows[q][q] = c, -s, s, c
        yield Matrix(rows, n)
    for perm in itertools.permutations(range(n)):
        for signs in itertools.product((1, -1), repeat=n):
            yield Matrix([[signs[i] if j == perm[i] else 0 for j in range(n)] for i in range(n)], n)


def alternative_triples(alg: CoframeAlgebra, jmat: Matrix, count: int = 3,
                        orthogonal: bool = True) -> list[tuple[Matrix, CompatibleTriple]]:
    """Up to ``count`` further invariant compatible triples of the same kind.

    Each one keeps J's matrix but rewrites the algebra in a rational coframe
    e' = A e; pulled back to the original coframe this is the triple
    (A^-1 J A, A^T A). Triples are kept only when they differ from the base
    triple and have the same integrable and almost Kahler flags. With
    ``orthogonal`` only orthogonal A are tried, so the metric is fixed and J
    moves; otherwise complex-linear A (which move the metric) come first.
    """
    base = make_triple(alg, jmat)
    bp = predicates(base)
    seen = {(jmat, Matrix.identity(alg.dim))}
    out = []
    for a in _candidates(jmat, orthogonal):
        try:
            inv = a.inverse()
        except ZeroDivisionError:
            continue
        key = (inv @ jmat @ a, a.T @ a)
        if key in seen:
            continue
        new_alg = change_coframe(alg, a)
        try:
            t = make_triple(new_alg, jmat)
        except TripleError:
            continue
        p = predicates(t)
        if (p.integrable, p.almost_kahler) != (bp.integrable, bp.almost_kahler):
            continue
        seen.add(key)
        out.append((a, t))
        if len(out) >= count:
            break
    return out


# regressions ------------------------------------------------------------------


def _compare(name: str, got: list[int], exp: Expectation) -> Verdict:
    ok = all(e is None or g == e for g, e in zip(got, exp.values))
    shown = ", ".join("-" if e is None else str(e) for e in exp.values)
    return Verdict(name, True, ok, f"got [{', '.join(map(str, got))}], expected [{shown}] ({exp.provenance}: {exp.citation})")


def run_regressions(entry: CatalogEntry, samples: int = 3) -> list[Verdict]:
    out: list[Verdict] = []
    if entry.topology is not None:
        totals = ddc_totals(bc_diamond(entry.topology))
        exp = entry.expected("d+dc")
        out.append(_compare(f"{entry.name}: d+dc from Bott-Chern diamond", totals, exp))
    if entry.is_stub:
        exp = entry.expected("d+dL")
        out.append(Verdict(f"{entry.name}: d+dL", False, False,
                           f"[{', '.join(map(str, exp.values))}] {exp.provenance}: stated only, no structure equations"))
        return out
    d2 = check_integrability_d(entry.algebra)
    out.append(Verdict(f"{entry.name}: d^2 = 0", True, bool(d2), "" if d2 else f"witness {d2.witness}"))
    t = entry.triple()
    out.append(_compare(f"{entry.name}: invariant Betti numbers", invariant_betti(entry.algebra), entry.expected("betti")))
    table = dimension_table(t)
    for fam in ("d+dc", "d+dL"):
        out.append(_compare(f"{entry.name}: h_({fam})", table[fam], entry.expected(fam)))
    pr = predicates(t).as_dict()
    bad = {k: pr[k] for k, v in entry.flags.items() if pr[k] != v}
    out.append(Verdict(f"{entry.name}: structure flags", True, not bad,
                       ", ".join(f"{k}={pr[k]}" for k in entry.flags) if not bad else f"mismatch {bad}"))
    if samples:
        for orth, what in ((True, "orthogonal"), (False, "complex-linear")):
            alts = alternative_triples(entry.algebra, entry.jmat, samples, orth)
            same = [dimension_table(alt) == table for _, alt in alts]
            enough = len(alts) >= samples
            out.append(Verdict(f"{entry.name}: dimensions independent of the invariant triple ({what} changes)",
                               True, enough and all(same),
                               f"{sum(same)}/{len(alts)} sampled triples agree on all {len(FAMILIES)} families"))
    return out
