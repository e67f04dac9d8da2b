"""Compatible triples (J, omega, g) on an invariant coframe and the operators
they induce on forms.

Conventions, fixed once here:

* ``J`` is given as a matrix whose row ``i`` is the image of ``e^i`` under the
  dual action, so a covector with coefficient vector ``c`` maps to
  ``J.T @ c``. The (1,0)-covectors are the ``+i`` eigenvectors.
* ``g`` is the identity on the coframe; monomials are orthonormal and the
  Hermitian product is ``<a, b> Vol = a ^ *conj(b)``.
* ``omega(X, Y) = g(JX, Y)``, equivalently ``omega(., J.) = g``.
* ``J`` acts on ``A^{p,q}`` by ``i^(p-q)``; this is the exterior power of the
  dual action and is a real operator fixing top-degree forms.
* ``Vol = omega^m / m!``; with an orthonormal coframe this is
  ``+-e^{1...2m}`` and the sign is stored as ``orientation``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Callable, Sequence

from .coframe import CoframeAlgebra, differential
from .exterior import (
    Form,
    basis,
    basis_index,
    conjugate,
    merge_sign,
    one,
    popcount,
    substitute,
    wedge,
)
from .linalg import Matrix
from .scalars import I, ONE, ZERO, Scalar

__all__ = [
    "CompatibleTriple",
    "TripleError",
    "Predicates",
    "WeilCheck",
    "make_triple",
    "standard_j",
    "bigrade",
    "j_act",
    "j_inv",
    "hodge_star",
    "symplectic_star",
    "lefschetz",
    "lefschetz_decompose",
    "primitive_basis",
    "weil_star_check",
    "predicates",
    "dc",
    "apply_by_degree",
]


class TripleError(ValueError):
    """The data does not define a compatible triple."""


def standard_j(dim: int) -> Matrix:
    """J with J e^{2j-1} = -e^{2j}, J e^{2j} = e^{2j-1}, so that
    e^{2j-1} + i e^{2j} spans the (1,0)-covectors."""
    rows = [[0] * dim for _ in range(dim)]
    for j in range(0, dim, 2):
        rows[j][j + 1] = -1
        rows[j + 1][j] = 1
    return Matrix(rows, dim)


def _vec_to_form(dim: int, vec: Sequence[Scalar]) -> Form:
    return Form(dim, {1 << i: c for i, c in enumerate(vec)})


def apply_by_degree(a: Form, block: Callable[[int], Matrix], shift: int) -> Form:
    """Apply a graded linear map, given by its matrix in each source degree."""
    out: dict[int, Scalar] = {}
    for k in sorted(a.degrees()):
        tgt = k + shift
        if not 0 <= tgt <= a.dim:
            continue
        vec = block(k).apply(a.to_vector(k))
        for m, c in zip(basis(a.dim, tgt), vec):
            if c:
                out[m] = c
    return Form(a.dim, out)


class CompatibleTriple:
    """An invariant almost Hermitian structure on a coframe algebra.

    Build with :func:`make_triple`, which validates the data. Derived matrices
    are cached on the instance; nothing is mutated after construction.
    """

    def __init__(self, alg: CoframeAlgebra, jmat: Matrix, omega: Form, orientation: int,
                 phi: Sequence[Form]):
        self.alg = alg
        self.dim = alg.dim
        self.m = alg.dim // 2
        self.jmat = jmat
        self.omega = omega
        self.orientation = orientation
        self.phi = tuple(phi)
        self.vol = Form(self.dim, {(1 << self.dim) - 1: orientation})
        self._cache: dict = {}

    def __repr__(self):
        name = self.alg.name or "model"
        return f"CompatibleTriple({name}, omega={self.omega})"

    def cached(self, key, build):
        if key not in self._cache:
            self._cache[key] = build()
        return self._cache[key]

    # bigrading ------------------------------------------------------------

    def _theta(self) -> tuple[list[Form], list[Form]]:
        # theta = (phi^1..phi^m, conj phi^1..conj phi^m) and the inverse change
        def build():
            theta = list(self.phi) + [conjugate(p) for p in self.phi]
            n = self.dim
            t = Matrix.from_columns([f.to_vector(1) for f in theta], n)
            s = t.inverse()
            # e^i = sum_j s[j][i] theta_j, written over theta-generators
            to_theta = [Form(n, {1 << j: s[j, i] for j in range(n)}) for i in range(n)]
            return theta, to_theta
        return self.cached("theta", build)

    def bigrade_projectors(self, k: int) -> dict[tuple[int, int], Matrix]:
        """Matrices of the projections A^k -> A^{p,q}, p + q = k."""
        def build():
            theta, to_theta = self._theta()
            n, m = self.dim, self.m
            low = (1 << m) - 1
            src = basis(n, k)
            pieces_per_mono = []
            for mask in src:
                in_theta = substitute(Form(n, {mask: ONE}), to_theta)
                groups: dict[tuple[int, int], dict[int, Scalar]] = {}
                for tm, c in in_theta.items():
                    pq = (popcount(tm & low), popcount(tm >> m))
                    groups.setdefault(pq, {})[tm] = c
                pieces = {pq: substitute(Form(n, g), theta) for pq, g in groups.items()}
                pieces_per_mono.append(pieces)
            out = {}
            for p in range(max(0, k - m), min(k, m) + 1):
                pq = (p, k - p)
                vecs = [pc.get(pq, Form(n)).to_vector(k) for pc in pieces_per_mono]
                out[pq] = Matrix.from_columns(vecs, len(src))
            return out
        return self.cached(("bigrade", k), build)

    def j_matrix(self, k: int, convention: int = 1) -> Matrix:
        def build():
            projs = self.bigrade_projectors(k)
            size = len(basis(self.dim, k))
            total = Matrix.zeros(size, size)
            for (p, q), pr in projs.items():
                total = total + pr.scale(I ** (convention * (p - q) % 4))
            return total
        return self.cached(("J", k, convention), build)

    def star_matrix(self, k: int) -> Matrix:
        def build():
            n = self.dim
            full = (1 << n) - 1
            tgt_index = basis_index(n, n - k)
            src = basis(n, k)
            rows = [[ZERO] * len(src) for _ in range(len(tgt_index))]
            for col, mask in enumerate(src):
                comp = full ^ mask
                rows[tgt_index[comp]][col] = Scalar(self.orientation * merge_sign(mask, comp))
            return Matrix(rows, len(src))
        return self.cached(("star", k), build)

    def l_matrix(self, k: int) -> Matrix:
        """Matrix of L = omega ^ . from degree k to k + 2."""
        def build():
            n = self.dim
            src = basis(n, k)
            ntgt = len(basis(n, k + 2))
            cols = [wedge(self.omega, Form(n, {mask: ONE})).to_vector(k + 2) for mask in src]
            return Matrix.from_columns(cols, ntgt) if src else Matrix([[] for _ in range(ntgt)], 0)
        return self.cached(("L", k), build)

    def lambda_matrix(self, k: int) -> Matrix:
        """Matrix of the dual Lefschetz operator, degree k to k - 2."""
        def build():
            if k - 2 < 0:
                return Matrix([], len(basis(self.dim, k)))
            return self.l_matrix(k - 2).H
        return self.cached(("Lambda", k), build)


def _is_rational(mat: Matrix) -> bool:
    return all(x.is_real for r in mat.rows for x in r)


def make_triple(alg: CoframeAlgebra, jmat) -> CompatibleTriple:
    """Validate J against the orthonormal metric and derive omega.

    Raises :class:`TripleError` when J^2 != -Id, J is not orthogonal, or the
    derived omega is degenerate.
    """
    alg.validated()
    n = alg.dim
    if not isinstance(jmat, Matrix):
        try:
            jmat = Matrix(jmat)
        except (TypeError, ValueError) as exc:
            raise TripleError(f"J is not a matrix: {exc}") from None
    if jmat.shape != (n, n):
        raise TripleError(f"J must be {n}x{n}, got {jmat.nrows}x{jmat.ncols}")
    if not _is_rational(jmat):
        raise TripleError("J must have rational entries")
    ident = Matrix.identity(n)
    if jmat @ jmat != -ident:
        raise TripleError("J^2 != -Id")
    if jmat @ jmat.T != ident:
        raise TripleError("J is not orthogonal for the coframe metric")
    # omega(e_a, e_b) = g(J e_a, e_b) = jmat[b][a]
    omega = Form(n, {(1 << a) | (1 << b): jmat[b, a] for a in range(n) for b in range(a + 1, n)})
    # compatibility omega(e_a, J e_b) = g(e_a, e_b)
    for a in range(n):
        for b in range(n):
            val = sum((jmat[c, b] * jmat[c, a] for c in range(n)), ZERO)
            if val != (ONE if a == b else ZERO):
                raise TripleError("omega(., J.) != g(., .)")
    m = n // 2
    top = one(n)
    for _ in range(m):
        top = wedge(top, omega)
    top = top / factorial(m)
    coeff = top.coefficient((1 << n) - 1)
    if not coeff:
        raise TripleError("omega is degenerate")
    if coeff not in (ONE, -ONE):
        raise TripleError(f"omega^m/m! = {coeff} Vol; coframe is not orthonormal for omega")
    orientation = 1 if coeff == ONE else -1
    # (1,0)-covectors: kernel of (J^T - i Id)
    shifted = jmat.T - ident.scale(I)
    phis = [_vec_to_form(n, v) for v in shifted.nullspace()]
    if len(phis) != m:
        raise TripleError("J does not split the complexified coframe evenly")
    return CompatibleTriple(alg, jmat, omega, orientation, phis)


# form-level operators -----------------------------------------------------


def bigrade(t: CompatibleTriple, a: Form) -> dict[tuple[int, int], Form]:
    """Nonzero (p,q)-components of ``a``."""
    out: dict[tuple[int, int], Form] = {}
    for k in sorted(a.degrees()):
        vec = a.to_vector(k)
        for pq, pr in t.bigrade_projectors(k).items():
            comp = Form.from_vector(a.dim, k, pr.apply(vec))
            if comp:
                out[pq] = comp
    return out


def j_act(t: CompatibleTriple, a: Form, convention: int = 1) -> Form:
    """Multiply the (p,q)-component by ``i^(p-q)``.

    ``convention=-1`` uses ``i^(q-p)`` instead; it exists as a negative control
    and equals :func:`j_inv`.
    """
    return apply_by_degree(a, lambda k: t.j_matrix(k, convention), 0)


def j_inv(t: CompatibleTriple, a: Form) -> Form:
    return apply_by_degree(a, lambda k: t.j_matrix(k, -1), 0)


def hodge_star(t: CompatibleTriple, a: Form) -> Form:
    n = t.dim
    return _graded(a, lambda k: t.star_matrix(k), lambda k: n - k)


def _graded(a: Form, block, target) -> Form:
    out = Form(a.dim)
    for k in sorted(a.degrees()):
        vec = block(k).apply(a.to_vector(k))
        out = out + Form.from_vector(a.dim, target(k), vec)
    return out


def symplectic_star(t: CompatibleTriple, a: Form) -> Form:
    """``*_s = J^{-1} *``."""
    return j_inv(t, hodge_star(t, a))


def lefschetz(t: CompatibleTriple, a: Form, direction: str = "up") -> Form:
    if direction == "up":
        return wedge(t.omega, a)
    if direction == "down":
        return _graded(a, t.lambda_matrix, lambda k: k - 2) if a else Form(a.dim)
    raise ValueError(f"direction must be 'up' or 'down', got {direction!r}")


def dc(t: CompatibleTriple, a: Form) -> Form:
    """``d^c = J^{-1} d J``."""
    return j_inv(t, differential(t.alg, j_act(t, a)))


def primitive_basis(t: CompatibleTriple, k: int) -> list[Form]:
    """Basis of the primitive k-forms (kernel of Lambda), k <= m."""
    def build():
        if k > t.m:
            return []
        n = t.dim
        lam = t.lambda_matrix(k)
        if lam.nrows == 0:
            return [Form(n, {mask: ONE}) for mask in basis(n, k)]
        return [Form.from_vector(n, k, v) for v in lam.nullspace()]
    return t.cached(("primitive", k), build)


def _l_power(t: CompatibleTriple, a: Form, r: int) -> Form:
    for _ in range(r):
        a = wedge(t.omega, a)
    return a


def lefschetz_decompose(t: CompatibleTriple, a: Form) -> list[tuple[int, Form]]:
    """Unique ``a = sum_j L^j P_j`` with ``P_j`` primitive of degree k - 2j.

    Returns the nonzero pairs ``(j, P_j)`` in decreasing ``j``.
    """
    if not a:
        return []
    if not a.is_homogeneous():
        raise ValueError("lefschetz_decompose needs a homogeneous form")
    k = a.degree()
    n = t.dim
    blocks = []
    for j in range(max(0, k - t.m), k // 2 + 1):
        prim = primitive_basis(t, k - 2 * j)
        if prim:
            blocks.append((j, prim))
    cols = []
    for j, prim in blocks:
        cols.extend(_l_power(t, p, j).to_vector(k) for p in prim)
    mat = Matrix.from_columns(cols, len(basis(n, k)))
    coeffs = mat.solve(a.to_vector(k))
    if coeffs is None:
        raise ArithmeticError("Lefschetz decomposition failed; omega may be degenerate")
    out = []
    pos = 0
    for j, prim in blocks:
        part = Form(n)
        for p in prim:
            part = part + p * coeffs[pos]
            pos += 1
        if part:
            out.append((j, part))
    out.sort(key=lambda jp: -jp[0])
    return out


@dataclass(frozen=True)
class WeilCheck:
    ok: bool
    k: int | None = None
    r: int | None = None
    primitive: Form | None = None
    lhs: Form | None = None
    rhs: Form | None = None

    def __bool__(self):
        return self.ok


def weil_star_check(t: CompatibleTriple, j_action: Callable[[Form], Form] | None = None) -> WeilCheck:
    """Check ``* L^r P = (-1)^{k(k+1)/2} r!/(m-k-r)! L^{m-k-r} J P`` for every
    primitive basis form P of degree k and every 0 <= r <= m - k."""
    jfun = j_action or (lambda f: j_act(t, f))
    m = t.m
    for k in range(m + 1):
        sign = -1 if (k * (k + 1) // 2) % 2 else 1
        for p in primitive_basis(t, k):
            jp = jfun(p)
            for r in range(m - k + 1):
                lhs = hodge_star(t, _l_power(t, p, r))
                coef = Fraction(sign * factorial(r), factorial(m - k - r))
                rhs = _l_power(t, jp, m - k - r) * coef
                if lhs != rhs:
                    return WeilCheck(False, k, r, p, lhs, rhs)
    return WeilCheck(True)


@dataclass(frozen=True)
class Predicates:
    integrable: bool
    almost_kahler: bool
    kahler: bool
    gauduchon: bool
    balanced: bool

    def as_dict(self) -> dict[str, bool]:
        return {
            "integrable": self.integrable,
            "almost_kahler": self.almost_kahler,
            "kahler": self.kahler,
            "gauduchon": self.gauduchon,
            "balanced": self.balanced,
        }


def predicates(t: CompatibleTriple) -> Predicates:
    def build():
        d = lambda f: differential(t.alg, f)  # noqa: E731
        integrable = all((0, 2) not in bigrade(t, d(p)) for p in t.phi)
        domega = d(t.omega)
        almost_kahler = not domega
        gauduchon = not d(dc(t, t.omega)) and not dc(t, domega)
        power = one(t.dim)
        for _ in range(t.m - 1):
            power = wedge(power, t.omega)
        balanced = not d(power)
        return Predicates(integrable, almost_kahler, integrable and almost_kahler, gauduchon, balanced)
    return t.cached("predicates", build)
