"""Lie algebras given dually, by the differentials of a coframe.

The differential on invariant forms is the Chevalley-Eilenberg derivation
extended from the generators; d^2 = 0 on the generators is the Jacobi
identity.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .exterior import Form, basis, generator, mask_indices, one, wedge
from .linalg import Matrix

__all__ = [
    "CoframeAlgebra",
    "IntegrabilityResult",
    "differential",
    "check_integrability_d",
    "invariant_betti",
    "AlgebraError",
]


class AlgebraError(ValueError):
    """Structure equations do not define a valid real Lie algebra."""


@dataclass(frozen=True)
class IntegrabilityResult:
    ok: bool
    generator: int | None = None
    witness: Form | None = None

    def __bool__(self):
        return self.ok


class CoframeAlgebra:
    """``dgen[i]`` is the 2-form ``d e^{i+1}``.

    Construction checks shapes and reality only; call
    :func:`check_integrability_d` (or :meth:`validated`) for d^2 = 0.
    """

    def __init__(self, dim: int, dgen: Sequence[Form] | None = None, name: str | None = None):
        if dim <= 0 or dim % 2:
            raise AlgebraError(f"coframe dimension must be a positive even number, got {dim}")
        dgen = list(dgen) if dgen is not None else [Form(dim) for _ in range(dim)]
        if len(dgen) != dim:
            raise AlgebraError(f"need {dim} generator differentials, got {len(dgen)}")
        for i, f in enumerate(dgen, 1):
            if f.dim != dim:
                raise AlgebraError(f"d e{i} lives in dimension {f.dim}, expected {dim}")
            if not f.is_homogeneous(2):
                raise AlgebraError(f"d e{i} must be a 2-form")
            if not f.is_real:
                raise AlgebraError(f"d e{i} has non-real coefficients")
        self.dim = dim
        self.dgen = tuple(dgen)
        self.name = name

    @classmethod
    def abelian(cls, dim: int, name: str | None = None) -> "CoframeAlgebra":
        return cls(dim, None, name)

    def validated(self) -> "CoframeAlgebra":
        res = check_integrability_d(self)
        if not res:
            raise AlgebraError(f"d^2 e{res.generator} = {res.witness} is not zero")
        return self

    def __eq__(self, other):
        return isinstance(other, CoframeAlgebra) and self.dim == other.dim and self.dgen == other.dgen

    def __hash__(self):
        return hash((self.dim, self.dgen))

    def __repr__(self):
        eqs = ", ".join(f"d e{i} = {f}" for i, f in enumerate(self.dgen, 1) if f)
        return f"CoframeAlgebra(dim={self.dim}, {eqs or 'abelian'})"

    @cached_property
    def _mono_d(self) -> dict[int, Form]:
        # d of every basis monomial, computed once
        out = {}
        for mask in range(1 << self.dim):
            idx = mask_indices(mask)
            total = Form(self.dim)
            for j, g in enumerate(idx):
                dg = self.dgen[g - 1]
                if not dg:
                    continue
                term = one(self.dim)
                for h in idx[:j]:
                    term = wedge(term, generator(self.dim, h))
                term = wedge(term, dg)
                for h in idx[j + 1:]:
                    term = wedge(term, generator(self.dim, h))
                total = total - term if j % 2 else total + term
            out[mask] = total
        return out

    def d_matrix(self, k: int) -> Matrix:
        """Matrix of d from degree k to degree k+1 in the sorted monomial bases."""
        src = basis(self.dim, k)
        tgt = basis(self.dim, k + 1)
        cols = [self._mono_d[m].to_vector(k + 1) for m in src]
        return Matrix.from_columns(cols, len(tgt)) if cols else Matrix([[ ] for _ in tgt], 0)


def differential(alg: CoframeAlgebra, a: Form) -> Form:
    if a.dim != alg.dim:
        raise ValueError(f"dimension mismatch: form has {a.dim}, algebra has {alg.dim}")
    out = Form(alg.dim)
    table = alg._mono_d
    for m, c in a.items():
        dm = table[m]
        if dm:
            out = out + dm * c
    return out


def check_integrability_d(alg: CoframeAlgebra) -> IntegrabilityResult:
    """d(d e^i) = 0 for every generator, with the first offending one as witness."""
    for i, dg in enumerate(alg.dgen, 1):
        dd = differential(alg, dg)
        if dd:
            return IntegrabilityResult(False, i, dd)
    return IntegrabilityResult(True)


def invariant_betti(alg: CoframeAlgebra) -> list[int]:
    """Dimensions of the cohomology of the invariant complex (Lambda g*, d).

    These agree with the Betti numbers of the quotient manifold only in the
    cases where a Nomizu/Hattori type theorem applies; callers label them as
    invariant numbers.
    """
    alg.validated()
    n = alg.dim
    ranks = [alg.d_matrix(k).rank() for k in range(n + 1)]
    out = []
    for k in range(n + 1):
        dim_k = len(basis(n, k))
        kernel = dim_k - ranks[k]
        image = ranks[k - 1] if k > 0 else 0
        out.append(kernel - image)
    return out
