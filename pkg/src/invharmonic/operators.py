"""Graded operators as families of exact matrices, one block per source degree."""

from __future__ import annotations

from dataclasses import dataclass

from .exterior import Form, basis
from .linalg import Matrix
from .scalars import Scalar
from .triple import CompatibleTriple

__all__ = [
    "GradedOperator",
    "IdentityCheck",
    "OPERATOR_NAMES",
    "build",
    "compose",
    "adjoint",
    "anticommutator",
    "verify_identity",
]


def _size(dim: int, k: int) -> int:
    return len(basis(dim, k)) if 0 <= k <= dim else 0


class GradedOperator:
    """``blocks[k]`` maps coordinates of A^k to A^{target(k)}.

    The target degree is ``shift + k`` for ordinary operators and
    ``shift - k`` for degree-reversing ones such as the Hodge star
    (``reverses=True``, ``shift = 2m``). Every source degree 0..dim has a
    block; out-of-range targets give blocks with zero rows.
    """

    def __init__(self, dim: int, shift: int, blocks: dict[int, Matrix], name: str = "",
                 reverses: bool = False):
        self.dim = dim
        self.shift = shift
        self.reverses = reverses
        self.name = name
        full = {}
        for k in range(dim + 1):
            shape = (_size(dim, self.target(k)), _size(dim, k))
            blk = blocks.get(k)
            if blk is None:
                blk = Matrix.zeros(*shape)
            if blk.shape != shape:
                raise ValueError(f"block {k} of {name or 'operator'} has shape {blk.shape}, expected {shape}")
            full[k] = blk
        self.blocks = full

    def target(self, k: int) -> int:
        return self.shift - k if self.reverses else self.shift + k

    def source(self, tgt: int) -> int:
        return self.shift - tgt if self.reverses else tgt - self.shift

    def __repr__(self):
        kind = "2m-k" if self.reverses else f"{self.shift:+d}"
        return f"GradedOperator({self.name or '?'}, degree {kind}, dim={self.dim})"

    def block(self, k: int) -> Matrix:
        if 0 <= k <= self.dim:
            return self.blocks[k]
        return Matrix.zeros(_size(self.dim, self.target(k)), 0)

    def __call__(self, a: Form) -> Form:
        out = Form(a.dim)
        for k in sorted(a.degrees()):
            tgt = self.target(k)
            if 0 <= tgt <= self.dim:
                out = out + Form.from_vector(a.dim, tgt, self.blocks[k].apply(a.to_vector(k)))
        return out

    def _same_kind(self, other: "GradedOperator"):
        if self.dim != other.dim:
            raise ValueError("operators act on different dimensions")
        if (self.shift, self.reverses) != (other.shift, other.reverses):
            raise ValueError(f"shift mismatch: {self!r} vs {other!r}")

    def __add__(self, other: "GradedOperator") -> "GradedOperator":
        self._same_kind(other)
        return GradedOperator(self.dim, self.shift,
                              {k: self.blocks[k] + other.blocks[k] for k in self.blocks},
                              f"({self.name} + {other.name})", self.reverses)

    def __neg__(self) -> "GradedOperator":
        return GradedOperator(self.dim, self.shift, {k: -b for k, b in self.blocks.items()},
                              f"-{self.name}", self.reverses)

    def __sub__(self, other: "GradedOperator") -> "GradedOperator":
        return self + (-other)

    def scale_by_degree(self, coef, name: str = "") -> "GradedOperator":
        """Multiply block k by ``coef(k)``."""
        return GradedOperator(self.dim, self.shift,
                              {k: b.scale(coef(k)) for k, b in self.blocks.items()},
                              name or self.name, self.reverses)

    def __matmul__(self, other: "GradedOperator") -> "GradedOperator":
        return compose(self, other)

    @property
    def H(self) -> "GradedOperator":
        return adjoint(self)

    def is_zero(self) -> bool:
        return all(b.is_zero() for b in self.blocks.values())

    def __eq__(self, other):
        if not isinstance(other, GradedOperator):
            return NotImplemented
        return (self.dim, self.shift, self.reverses) == (other.dim, other.shift, other.reverses) \
            and self.blocks == other.blocks

    __hash__ = None


def compose(a: GradedOperator, b: GradedOperator) -> GradedOperator:
    """``a o b``, degreewise."""
    if a.dim != b.dim:
        raise ValueError("operators act on different dimensions")
    sign_a = -1 if a.reverses else 1
    shift = a.shift + sign_a * b.shift
    reverses = a.reverses != b.reverses
    blocks = {k: a.block(b.target(k)) @ b.blocks[k] for k in range(b.dim + 1)}
    return GradedOperator(a.dim, shift, blocks, f"{a.name}{b.name}", reverses)


def adjoint(a: GradedOperator) -> GradedOperator:
    """Conjugate transpose of every block in the orthonormal monomial basis."""
    blocks = {}
    for k, blk in a.blocks.items():
        tgt = a.target(k)
        if 0 <= tgt <= a.dim:
            blocks[tgt] = blk.H
    shift = a.shift if a.reverses else -a.shift
    name = a.name[:-1] if a.name.endswith("*") else f"{a.name}*"
    return GradedOperator(a.dim, shift, blocks, name, a.reverses)


def anticommutator(a: GradedOperator, b: GradedOperator) -> GradedOperator:
    ab, ba = compose(a, b), compose(b, a)
    if (ab.shift, ab.reverses) != (ba.shift, ba.reverses):
        raise ValueError("AB and BA have different degree shifts")
    return ab + ba


@dataclass(frozen=True)
class IdentityCheck:
    ok: bool
    degree: int | None = None
    row: int | None = None
    col: int | None = None
    lhs: Scalar | None = None
    rhs: Scalar | None = None

    def __bool__(self):
        return self.ok

    def describe(self) -> str:
        if self.ok:
            return "pass"
        return (f"fail at degree {self.degree}, entry ({self.row}, {self.col}): "
                f"{self.lhs} != {self.rhs}")


def verify_identity(lhs: GradedOperator, rhs: GradedOperator) -> IdentityCheck:
    """Exact blockwise comparison reporting the first discrepancy."""
    if (lhs.dim, lhs.shift, lhs.reverses) != (rhs.dim, rhs.shift, rhs.reverses):
        raise ValueError(f"cannot compare {lhs!r} with {rhs!r}")
    for k in range(lhs.dim + 1):
        a, b = lhs.blocks[k], rhs.blocks[k]
        for i, (ra, rb) in enumerate(zip(a.rows, b.rows)):
            for j, (x, y) in enumerate(zip(ra, rb)):
                if x != y:
                    return IdentityCheck(False, k, i, j, x, y)
    return IdentityCheck(True)


OPERATOR_NAMES = ("d", "dc", "dLambda", "star", "star_s", "L", "Lambda", "J", "Jinv", "identity")


def build(t: CompatibleTriple, name: str) -> GradedOperator:
    """Materialize a named operator of ``t``; results are cached on ``t``."""
    if name not in OPERATOR_NAMES:
        raise ValueError(f"unknown operator {name!r}; choose from {', '.join(OPERATOR_NAMES)}")
    return t.cached(("op", name), lambda: _build(t, name))


def _build(t: CompatibleTriple, name: str) -> GradedOperator:
    n = t.dim
    degrees = range(n + 1)
    if name == "d":
        return GradedOperator(n, 1, {k: t.alg.d_matrix(k) for k in degrees}, "d")
    if name == "dc":
        op = compose(build(t, "Jinv"), compose(build(t, "d"), build(t, "J")))
        op.name = "dc"
        return op
    if name == "dLambda":
        ss = build(t, "star_s")
        # (-1)^{k+1} *_s d *_s on k-forms
        return compose(ss, compose(build(t, "d"), ss)).scale_by_degree(
            lambda k: -1 if k % 2 == 0 else 1, "dLambda")
    if name == "star":
        return GradedOperator(n, n, {k: t.star_matrix(k) for k in degrees}, "star", reverses=True)
    if name == "star_s":
        blocks = {k: t.j_matrix(n - k, -1) @ t.star_matrix(k) for k in degrees}
        return GradedOperator(n, n, blocks, "star_s", reverses=True)
    if name == "L":
        return GradedOperator(n, 2, {k: t.l_matrix(k) for k in degrees}, "L")
    if name == "Lambda":
        return GradedOperator(n, -2, {k: t.lambda_matrix(k) for k in degrees}, "Lambda")
    if name == "J":
        return GradedOperator(n, 0, {k: t.j_matrix(k, 1) for k in degrees}, "J")
    if name == "Jinv":
        return GradedOperator(n, 0, {k: t.j_matrix(k, -1) for k in degrees}, "Jinv")
    return GradedOperator(n, 0, {k: Matrix.identity(_size(n, k)) for k in degrees}, "1")
