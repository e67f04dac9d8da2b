"""Harmonic spaces as exact joint kernels, plus structural theorem checks.

Each family P is characterized by three first- and second-order conditions
(for instance d+dc-harmonic forms are the k-forms killed by d, d^c and
(dd^c)^*). On the finite-dimensional invariant complex with true matrix
adjoints these joint kernels coincide with the kernels of the fourth-order
Laplacians; :func:`laplacian_kernel_agrees` recomputes the latter as a
cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .coframe import invariant_betti
from .exterior import Form, basis
from .linalg import Matrix, span_rank, vstack
from .operators import GradedOperator, adjoint, anticommutator, build, compose
from .scalars import ZERO
from .triple import CompatibleTriple, predicates

__all__ = [
    "FAMILIES",
    "HarmonicSpace",
    "Verdict",
    "Gamma0",
    "HodgeDecomposition",
    "normalize_label",
    "conditions",
    "joint_kernel",
    "harmonic_space",
    "dimension_table",
    "duality_report",
    "special_space",
    "hodge_decompose",
    "gamma0",
    "laplacian",
    "laplacian_kernel_agrees",
    "verify_ddc_decomposition",
    "verify_ddlambda_decomposition",
    "verify_inclusion_theorems",
]

FAMILIES = ("d+dc", "dc+d", "ddc", "dcd", "d+dL", "dL+d", "ddL", "dLd")
SINGLE = ("d", "dc", "dL")

_ALIASES = {
    "d+dLambda": "d+dL", "dLambda+d": "dL+d", "ddLambda": "ddL", "dLambdad": "dLd",
    "dLambda": "dL",
}


def normalize_label(label: str) -> str:
    lab = label.replace(" ", "").replace("^", "")
    lab = _ALIASES.get(lab, lab)
    if lab not in FAMILIES and lab not in SINGLE:
        raise ValueError(f"unknown family {label!r}; choose from {', '.join(FAMILIES + SINGLE)}")
    return lab


@dataclass(frozen=True)
class HarmonicSpace:
    label: str
    degree: int
    basis: tuple[Form, ...]
    ambient: int

    @property
    def dim(self) -> int:
        return len(self.basis)

    def vectors(self) -> list[list]:
        return [b.to_vector(self.degree) for b in self.basis]

    def contains(self, a: Form) -> bool:
        return _in_span(self.vectors(), a.to_vector(self.degree), self.ambient, self.degree)


@dataclass(frozen=True)
class Verdict:
    """One theorem check. ``applicable`` False means the hypothesis does not
    hold on this model and nothing was asserted."""

    name: str
    applicable: bool
    passed: bool
    detail: str = ""

    def status(self) -> str:
        if not self.applicable:
            return "n/a"
        return "pass" if self.passed else "FAIL"


def _length(dim: int, k: int) -> int:
    return len(basis(dim, k))


def _in_span(vectors, v, dim, k) -> bool:
    n = _length(dim, k)
    return span_rank(list(vectors) + [v], n) == span_rank(vectors, n)


def _rank(vectors, dim, k) -> int:
    return span_rank(list(vectors), _length(dim, k))


# conditions ----------------------------------------------------------------


def _x(t: CompatibleTriple, lab: str) -> GradedOperator:
    return build(t, "dc" if "dc" in lab else "dLambda")


def conditions(t: CompatibleTriple, label: str) -> list[GradedOperator]:
    """The operators whose joint kernel is the P-harmonic space."""
    lab = normalize_label(label)
    d = build(t, "d")
    if lab == "d":
        return [d, adjoint(d)]
    if lab in ("dc", "dL"):
        x = _x(t, lab)
        return [x, adjoint(x)]
    x = _x(t, lab)
    if lab in ("d+dc", "d+dL"):
        return [d, x, adjoint(compose(d, x))]
    if lab in ("dc+d", "dL+d"):
        return [d, x, adjoint(compose(x, d))]
    if lab in ("ddc", "ddL"):
        return [adjoint(d), adjoint(x), compose(d, x)]
    return [adjoint(d), adjoint(x), compose(x, d)]


def joint_kernel(conds: Sequence[GradedOperator | Matrix], k: int, dim: int,
                 label: str = "") -> HarmonicSpace:
    """Exact common kernel at degree ``k``.

    ``conds`` may mix graded operators (their degree-k block is used) and
    raw matrices acting on A^k. The basis is the reduced-echelon nullspace
    basis, so it is deterministic.
    """
    if not 0 <= k <= dim:
        raise ValueError(f"degree {k} out of range 0..{dim}")
    n = _length(dim, k)
    blocks = [c.block(k) if isinstance(c, GradedOperator) else c for c in conds]
    for b in blocks:
        if b.ncols != n:
            raise ValueError(f"condition has {b.ncols} columns, expected {n}")
    if blocks:
        null = vstack(blocks, n).nullspace()
    else:
        null = Matrix.identity(n).columns()
    forms = tuple(Form.from_vector(dim, k, v) for v in null)
    # self-audit: every basis element satisfies every condition
    for f in forms:
        vec = f.to_vector(k)
        for b in blocks:
            if any(b.apply(vec)):
                raise ArithmeticError(f"kernel vector fails a condition for {label} in degree {k}")
    return HarmonicSpace(label, k, forms, dim)


def harmonic_space(t: CompatibleTriple, label: str, k: int) -> HarmonicSpace:
    lab = normalize_label(label)
    if not 0 <= k <= t.dim:
        raise ValueError(f"degree {k} out of range 0..{t.dim}")
    return t.cached(("harmonic", lab, k), lambda: joint_kernel(conditions(t, lab), k, t.dim, lab))


def dimension_table(t: CompatibleTriple, labels: Sequence[str] = FAMILIES) -> dict[str, list[int]]:
    return {normalize_label(lab): [harmonic_space(t, lab, k).dim for k in range(t.dim + 1)]
            for lab in labels}


@dataclass
class DualityReport:
    table: dict[str, list[int]]
    chains: dict[str, bool]
    maps: dict[str, bool]

    @property
    def ok(self) -> bool:
        return all(self.chains.values()) and all(self.maps.values())


def _maps_onto(t: CompatibleTriple, op: GradedOperator, src: str, tgt: str) -> bool:
    n = t.dim
    for k in range(n + 1):
        s = harmonic_space(t, src, k)
        tk = op.target(k)
        dest = harmonic_space(t, tgt, tk)
        images = [op(f).to_vector(tk) for f in s.basis]
        if _rank(images, n, tk) != s.dim or s.dim != dest.dim:
            return False
        if _rank(images + dest.vectors(), n, tk) != dest.dim:
            return False
    return True


def duality_report(t: CompatibleTriple) -> DualityReport:
    """All eight dimension vectors, both equality chains, and the isomorphisms
    of the two commutative diagrams checked as maps between bases."""
    table = dimension_table(t)
    n = t.dim
    ks = range(n + 1)
    c_chain = all(
        table["d+dc"][k] == table["dc+d"][k] == table["ddc"][n - k] == table["dcd"][n - k] for k in ks)
    l_chain = all(
        table["d+dL"][k] == table["dL+d"][n - k] == table["ddL"][k] == table["dLd"][n - k] for k in ks)
    J, star, ss = build(t, "J"), build(t, "star"), build(t, "star_s")
    maps = {
        "J: d+dc -> dc+d": _maps_onto(t, J, "d+dc", "dc+d"),
        # (dd^c)^* = +-* d^c d *, so * sends d+dc to dcd (and dc+d to ddc)
        "*: d+dc -> dcd": _maps_onto(t, star, "d+dc", "dcd"),
        "*: dc+d -> ddc": _maps_onto(t, star, "dc+d", "ddc"),
        "J: ddc -> dcd": _maps_onto(t, J, "ddc", "dcd"),
        "*s: d+dL -> dL+d": _maps_onto(t, ss, "d+dL", "dL+d"),
        "J: d+dL -> ddL": _maps_onto(t, J, "d+dL", "ddL"),
        "J: dL+d -> dLd": _maps_onto(t, J, "dL+d", "dLd"),
        "*s: ddL -> dLd": _maps_onto(t, ss, "ddL", "dLd"),
    }
    return DualityReport(table, {"d+dc": c_chain, "d+dL": l_chain}, maps)


# special subspaces ---------------------------------------------------------

SPECIAL = ("anti_self_dual_harmonic", "J_anti_invariant_harmonic", "primitive_ddLambda_harmonic")


def _require_four(t: CompatibleTriple, what: str):
    if t.dim != 4:
        raise ValueError(f"{what} is only defined here for 2m = 4, got 2m = {t.dim}")


def special_space(t: CompatibleTriple, which: str) -> HarmonicSpace:
    """Degree-2 subspaces used by the 4-dimensional decompositions."""
    if which not in SPECIAL:
        raise ValueError(f"unknown special space {which!r}; choose from {', '.join(SPECIAL)}")

    def make():
        d = build(t, "d")
        n2 = _length(t.dim, 2)
        ident = Matrix.identity(n2)
        if which == "anti_self_dual_harmonic":
            _require_four(t, which)
            conds = [d, adjoint(d), build(t, "star").block(2) + ident]
        elif which == "J_anti_invariant_harmonic":
            conds = [d, adjoint(d), build(t, "J").block(2) + ident]
        else:
            _require_four(t, which)
            conds = conditions(t, "d+dL") + [build(t, "Lambda")]
        return joint_kernel(conds, 2, t.dim, which)

    return t.cached(("special", which), make)


def _pure_harmonic(t: CompatibleTriple, p: int, q: int) -> HarmonicSpace:
    """d-harmonic forms of pure bidegree (p, q)."""
    k = p + q
    d = build(t, "d")
    others = [m for pq, m in t.bigrade_projectors(k).items() if pq != (p, q)]
    return joint_kernel([d, adjoint(d)] + others, k, t.dim, f"H^{p},{q}_d")


# Hodge decomposition and gamma0 --------------------------------------------


@dataclass(frozen=True)
class HodgeDecomposition:
    harmonic: Form
    exact: Form
    coexact: Form
    eta: Form
    mu: Form


def _min_norm_preimage(M: Matrix, v: list) -> tuple[list, list]:
    """Orthogonal projection of ``v`` onto im M and the preimage of least norm.

    Both come from exact normal equations: M^H M x = M^H v gives the
    projection p = M x, and the preimage M^H y with (M M^H) y = p lies in
    (ker M)^perp.
    """
    if M.ncols == 0 or M.nrows == 0:
        return [ZERO] * M.nrows, [ZERO] * M.ncols
    MH = M.H
    x = (MH @ M).solve(MH.apply(v))
    p = M.apply(x)
    y = (M @ MH).solve(p)
    return p, MH.apply(y)


def hodge_decompose(t: CompatibleTriple, a: Form) -> HodgeDecomposition:
    """a = h(a) + d eta + d^* mu with eta, mu of least norm."""
    if not a:
        z = Form(t.dim)
        return HodgeDecomposition(z, z, z, z, z)
    k = a.degree()
    n = t.dim
    d = build(t, "d")
    vec = a.to_vector(k)
    zero = Form(n)
    if k > 0:
        p_ex, eta_v = _min_norm_preimage(d.block(k - 1), vec)
        exact, eta = Form.from_vector(n, k, p_ex), Form.from_vector(n, k - 1, eta_v)
    else:
        exact, eta = zero, zero
    if k < n:
        dstar = adjoint(d)
        p_co, mu_v = _min_norm_preimage(dstar.block(k + 1), vec)
        coexact, mu = Form.from_vector(n, k, p_co), Form.from_vector(n, k + 1, mu_v)
    else:
        coexact, mu = zero, zero
    harmonic = a - exact - coexact
    if d(harmonic) or adjoint(d)(harmonic):
        raise ArithmeticError("harmonic part is not d-harmonic")
    return HodgeDecomposition(harmonic, exact, coexact, eta, mu)


@dataclass(frozen=True)
class Gamma0:
    eta: Form
    mu: Form
    gamma0: Form
    harmonic_omega: Form


def gamma0(t: CompatibleTriple) -> Gamma0:
    """gamma0 = -d*mu - d^*mu from the Hodge decomposition of omega."""
    _require_four(t, "gamma0")
    dec = hodge_decompose(t, t.omega)
    d, star = build(t, "d"), build(t, "star")
    g = -d(star(dec.mu)) - adjoint(d)(dec.mu)
    if star(g) != -g:
        raise ArithmeticError("gamma0 is not anti-self-dual")
    if build(t, "J")(g) != g:
        raise ArithmeticError("gamma0 is not J-invariant")
    return Gamma0(dec.eta, dec.mu, g, dec.harmonic)


# Laplacians ----------------------------------------------------------------


def _sq(a: GradedOperator) -> GradedOperator:
    return compose(a, adjoint(a)) + compose(adjoint(a), a)


def laplacian(t: CompatibleTriple, label: str) -> GradedOperator:
    """The fourth-order Laplacian of one of the eight families."""
    lab = normalize_label(label)
    if lab not in FAMILIES:
        raise ValueError("laplacians are defined for the eight two-operator families")
    d = build(t, "d")
    x = _x(t, lab)
    ds, xs = adjoint(d), adjoint(x)
    if lab in ("d+dc", "d+dL"):
        return _sq(compose(d, x)) + _sq(compose(ds, x)) + compose(ds, d) + compose(xs, x)
    if lab in ("dc+d", "dL+d"):
        return _sq(compose(x, d)) + _sq(compose(xs, d)) + compose(ds, d) + compose(xs, x)
    if lab in ("ddc", "ddL"):
        return _sq(compose(d, x)) + _sq(compose(d, xs)) + compose(d, ds) + compose(x, xs)
    return _sq(compose(x, d)) + _sq(compose(x, ds)) + compose(d, ds) + compose(x, xs)


def laplacian_kernel_agrees(t: CompatibleTriple, label: str) -> bool:
    lap = laplacian(t, label)
    for k in range(t.dim + 1):
        ker = joint_kernel([lap], k, t.dim)
        hs = harmonic_space(t, label, k)
        if ker.dim != hs.dim or _rank(ker.vectors() + hs.vectors(), t.dim, k) != hs.dim:
            return False
    return True


# theorem verifiers ---------------------------------------------------------


def _summand_check(t, name, parts: dict[str, list[Form]], target: HarmonicSpace) -> Verdict:
    k = target.degree
    vecs = {lab: [f.to_vector(k) for f in fs] for lab, fs in parts.items()}
    allv = [v for vs in vecs.values() for v in vs]
    sizes = {lab: _rank(vs, t.dim, k) for lab, vs in vecs.items()}
    inside = all(target.contains(f) for fs in parts.values() for f in fs)
    independent = _rank(allv, t.dim, k) == sum(sizes.values())
    spans = _rank(allv, t.dim, k) == target.dim
    ok = inside and independent and spans
    detail = f"{target.dim} = " + " + ".join(str(s) for s in sizes.values())
    detail += f" ({', '.join(sizes)})"
    if not ok:
        detail += f"; inside={inside} independent={independent} spans={spans}"
    return Verdict(name, True, ok, detail)


def verify_ddc_decomposition(t: CompatibleTriple) -> Verdict:
    """H^2_{d+dc} = <omega + gamma0> + H^-_g + H^{(2,0)(0,2)}_J in dimension 4."""
    name = "d+dc decomposition of 2-forms"
    if t.dim != 4:
        return Verdict(name, False, False, "needs 2m = 4")
    if not predicates(t).gauduchon:
        return Verdict(name, False, False, "not Gauduchon")
    g0 = gamma0(t)
    parts = {
        "omega+gamma0": [t.omega + g0.gamma0],
        "b-": list(special_space(t, "anti_self_dual_harmonic").basis),
        "h-_J": list(special_space(t, "J_anti_invariant_harmonic").basis),
    }
    return _summand_check(t, name, parts, harmonic_space(t, "d+dc", 2))


def verify_ddlambda_decomposition(t: CompatibleTriple) -> Verdict:
    """H^2_{d+dL} equals <omega> + primitive part when d omega = 0, else the
    primitive part alone."""
    name = "d+dL decomposition of 2-forms"
    if t.dim != 4:
        return Verdict(name, False, False, "needs 2m = 4")
    prim = list(special_space(t, "primitive_ddLambda_harmonic").basis)
    closed = not build(t, "d")(t.omega)
    parts = {"omega": [t.omega], "primitive": prim} if closed else {"primitive": prim}
    v = _summand_check(t, name, parts, harmonic_space(t, "d+dL", 2))
    branch = "d omega = 0" if closed else "d omega != 0"
    return Verdict(name, True, v.passed, f"{branch}: {v.detail}")


def _subspace(t, a: HarmonicSpace, b: HarmonicSpace) -> bool:
    return all(b.contains(f) for f in a.basis)


def _same(t, a: HarmonicSpace, b: HarmonicSpace) -> bool:
    return a.dim == b.dim and _subspace(t, a, b)


def verify_inclusion_theorems(t: CompatibleTriple) -> list[Verdict]:
    """Inclusions, bounds and Betti equalities relating the two families."""
    n = t.dim
    pr = predicates(t)
    betti = invariant_betti(t.alg)
    tab = dimension_table(t)
    H = lambda lab, k: harmonic_space(t, lab, k)  # noqa: E731
    d, J = build(t, "d"), build(t, "J")
    dL = build(t, "dLambda")
    out: list[Verdict] = []

    # injection of d+dc into d+dL for almost Kahler triples
    name = "injection H_{d+dc} -> H_{d+dL}"
    if pr.almost_kahler:
        ok, notes = True, []
        ddl = compose(d, dL)
        for k in range(n + 1):
            src = H("d+dc", k)
            images = [J(f) for f in src.basis]
            closed = all(not d(f) and not dL(f) for f in images)
            im = ddl.block(k).columns()
            vecs = [f.to_vector(k) for f in images]
            inj = _rank(vecs + im, n, k) == len(vecs) + _rank(im, n, k)
            le = tab["d+dc"][k] <= tab["d+dL"][k]
            ok &= closed and inj and le
            notes.append(f"{tab['d+dc'][k]}<={tab['d+dL'][k]}")
        out.append(Verdict(name, True, ok, " ".join(notes)))
    else:
        out.append(Verdict(name, False, False, "not almost Kahler"))

    # top-minus-one inclusion, always; equality of three spaces when d omega = 0
    k = n - 1
    inc = _subspace(t, H("dL+d", k), H("dc+d", k))
    out.append(Verdict(f"H^{k}_(dL+d) in H^{k}_(dc+d)", True, inc,
                       f"{tab['dL+d'][k]} <= {tab['dc+d'][k]}"))
    # as subspaces the chain closes on dc+d; d+dc is its image under J^-1
    name = f"H^{k}_(d+dL) = H^{k}_(dL+d) = H^{k}_(dc+d) ~ H^{k}_(d+dc)"
    if pr.almost_kahler:
        eq = _same(t, H("d+dL", k), H("dL+d", k)) and _same(t, H("dL+d", k), H("dc+d", k))
        eq = eq and tab["dc+d"][k] == tab["d+dc"][k]
        out.append(Verdict(name, True, eq, f"dims {tab['d+dL'][k]}, {tab['dL+d'][k]}, {tab['dc+d'][k]}, {tab['d+dc'][k]}"))
    else:
        out.append(Verdict(name, False, False, "d omega != 0"))

    out.append(Verdict("h^1_(d+dL) <= h^(2m-1)_(d+dc)", True, tab["d+dL"][1] <= tab["d+dc"][n - 1],
                       f"{tab['d+dL'][1]} <= {tab['d+dc'][n - 1]}"))
    name = "h^(2m-1)_(d+dc) = b1"
    if pr.almost_kahler:
        out.append(Verdict(name, True, tab["d+dc"][n - 1] == betti[1], f"{tab['d+dc'][n - 1]} = {betti[1]}"))
    else:
        out.append(Verdict(name, False, False, "d omega != 0"))

    # h^1_{d+dc} <= b1, via injection into cohomology
    h1 = H("d+dc", 1)
    exact = d.block(0).columns()
    inj = _rank(h1.vectors() + exact, n, 1) == h1.dim + _rank(exact, n, 1)
    out.append(Verdict("h^1_(d+dc) <= b1", True, inj and h1.dim <= betti[1], f"{h1.dim} <= {betti[1]}"))

    ends = all(tab[lab][0] == 1 and tab[lab][n] == 1 for lab in ("d+dc", "d+dL"))
    out.append(Verdict("h^0 = h^2m = 1 for d+dc and d+dL", True, ends,
                       f"d+dc {tab['d+dc'][0]},{tab['d+dc'][n]}; d+dL {tab['d+dL'][0]},{tab['d+dL'][n]}"))
    top = H("d+dL", n)
    out.append(Verdict("H^2m_(d+dL) = <Vol>", True, top.dim == 1 and top.contains(t.vol), ""))

    sub = _subspace(t, H("d+dL", 1), H("d", 1))
    out.append(Verdict("H^1_(d+dL) in H^1_d", True, sub and tab["d+dL"][1] <= betti[1],
                       f"{tab['d+dL'][1]} <= {betti[1]}"))
    if pr.almost_kahler:
        out.append(Verdict("H^1_(d+dL) = H^1_d", True, _same(t, H("d+dL", 1), H("d", 1)),
                           f"{tab['d+dL'][1]} = {betti[1]}"))
    else:
        out.append(Verdict("H^1_(d+dL) = H^1_d", False, False, "d omega != 0"))

    # Betti equalities under inclusion hypotheses
    for lab, x, need, flag in (("d+dc", "dc", "almost Kahler", pr.almost_kahler),
                               ("d+dL", "dL", "integrable", pr.integrable)):
        for k in range(n + 1):
            name = f"H^{k}_{x} in H^{k}_({lab}) => h^{k}_({lab}) = b{k}"
            if not flag:
                out.append(Verdict(name, False, False, f"not {need}"))
                continue
            if not _subspace(t, H(x, k), H(lab, k)):
                out.append(Verdict(name, False, False, "hypothesis fails"))
                continue
            ok = _same(t, H(lab, k), H("d", k)) and tab[lab][k] == betti[k]
            out.append(Verdict(name, True, ok, f"{tab[lab][k]} = {betti[k]}"))

    # invariant triples on Lie algebra quotients
    out.append(Verdict("h^1_(d+dL) = b1", True, tab["d+dL"][1] == betti[1], f"{tab['d+dL'][1]} = {betti[1]}"))

    # bidegree splitting for integrable J
    for lab in ("d+dc", "ddc"):
        name = f"H_({lab}) splits by bidegree"
        if not pr.integrable:
            out.append(Verdict(name, False, False, "not integrable"))
            continue
        ok = True
        for k in range(n + 1):
            sp = H(lab, k)
            for proj in t.bigrade_projectors(k).values():
                for v in sp.vectors():
                    w = proj.apply(v)
                    if any(w) and not _in_span(sp.vectors(), w, n, k):
                        ok = False
        out.append(Verdict(name, True, ok, ""))

    # degree-3 harmonic forms of integrable 4-dimensional models
    name = "H^3_(d+dL) = H^(2,1)_d u H^(1,2)_d"
    if pr.integrable and n == 4:
        a, b = _pure_harmonic(t, 2, 1), _pure_harmonic(t, 1, 2)
        target = H("d+dL", 3)
        vecs = a.vectors() + b.vectors()
        union_dim = _rank(vecs, n, 3)
        ok = (union_dim == a.dim + b.dim and a.dim == b.dim
              and union_dim == target.dim and _rank(vecs + target.vectors(), n, 3) == target.dim)
        out.append(Verdict(name, True, ok, f"{target.dim} = {a.dim} + {b.dim}"))
    else:
        out.append(Verdict(name, False, False, "needs integrable J and 2m = 4"))

    # full anticommutator {d, dL} vanishes exactly when d omega = 0 (2m = 4)
    name = "{d, dL} = 0 <=> d omega = 0"
    if n == 4:
        zero = anticommutator(d, dL).is_zero()
        out.append(Verdict(name, True, zero == pr.almost_kahler, f"anticommutator zero: {zero}"))
    else:
        out.append(Verdict(name, False, False, "needs 2m = 4"))
    return out
