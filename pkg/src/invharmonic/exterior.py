"""Exterior algebra over C^{2m} with a bitmask-indexed monomial basis.

Generator ``e^i`` (1-based) is bit ``i-1``. A basis monomial is the wedge of
its generators in increasing order. Within each degree, basis monomials are
ordered by the integer value of their mask, and every matrix in the package
uses that ordering.
"""

from __future__ import annotations

import re
from functools import lru_cache
from math import comb
from typing import Iterable, Iterator, Mapping, Sequence

from .scalars import ONE, ZERO, Scalar, as_scalar, format_scalar, parse_scalar

__all__ = [
    "Form",
    "wedge",
    "grade_project",
    "conjugate",
    "substitute",
    "basis",
    "basis_index",
    "popcount",
    "mask_indices",
    "mask_from_indices",
    "merge_sign",
    "generator",
    "one",
    "parse_form",
]


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def mask_indices(mask: int) -> tuple[int, ...]:
    """1-based generator indices of ``mask`` in increasing order."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def mask_from_indices(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << (i - 1)
    return m


def merge_sign(a: int, b: int) -> int:
    """Sign of ``e^a ^ e^b`` relative to ``e^(a|b)`` for disjoint masks.

    Counts the pairs (i in a, j in b) with i > j, i.e. the transpositions
    needed to merge the two sorted index lists.
    """
    swaps = 0
    while b:
        low = b & -b
        swaps += popcount(a & ~((low << 1) - 1))
        b ^= low
    return -1 if swaps & 1 else 1


@lru_cache(maxsize=None)
def basis(dim: int, k: int) -> tuple[int, ...]:
    """Masks of degree ``k`` in ``dim`` generators, sorted by mask value."""
    if not 0 <= k <= dim:
        return ()
    return tuple(m for m in range(1 << dim) if popcount(m) == k)


@lru_cache(maxsize=None)
def basis_index(dim: int, k: int) -> dict[int, int]:
    return {m: i for i, m in enumerate(basis(dim, k))}


class Form:
    """A finitely supported map from monomial masks to Gaussian rationals.

    Zero coefficients are never stored, so equality is termwise. Forms may be
    inhomogeneous. Instances are treated as immutable.
    """

    __slots__ = ("dim", "_terms", "_hash")

    def __init__(self, dim: int, terms: Mapping[int, object] | None = None):
        if dim < 0:
            raise ValueError("dimension must be non-negative")
        self.dim = dim
        clean: dict[int, Scalar] = {}
        if terms:
            top = 1 << dim
            for mask, c in terms.items():
                if not 0 <= mask < top:
                    raise ValueError(f"mask {mask:b} out of range for dim {dim}")
                c = as_scalar(c)
                if c:
                    clean[mask] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _from_clean(cls, dim: int, terms: dict[int, Scalar]) -> "Form":
        f = object.__new__(cls)
        f.dim = dim
        f._terms = terms
        f._hash = None
        return f

    @classmethod
    def from_vector(cls, dim: int, k: int, vec: Sequence) -> "Form":
        b = basis(dim, k)
        if len(vec) != len(b):
            raise ValueError(f"expected {len(b)} coordinates in degree {k}, got {len(vec)}")
        return cls(dim, {m: c for m, c in zip(b, vec)})

    @property
    def terms(self) -> dict[int, Scalar]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[int, Scalar]]:
        return iter(sorted(self._terms.items(), key=lambda t: (popcount(t[0]), t[0])))

    def coefficient(self, mask: int) -> Scalar:
        return self._terms.get(mask, ZERO)

    def to_vector(self, k: int) -> list[Scalar]:
        """Coordinates of the degree-``k`` part in the sorted monomial basis."""
        return [self._terms.get(m, ZERO) for m in basis(self.dim, k)]

    def degrees(self) -> set[int]:
        return {popcount(m) for m in self._terms}

    def degree(self) -> int:
        """Degree of a homogeneous nonzero form."""
        ds = self.degrees()
        if len(ds) != 1:
            raise ValueError("degree() needs a nonzero homogeneous form")
        return ds.pop()

    def is_homogeneous(self, k: int | None = None) -> bool:
        ds = self.degrees()
        if k is None:
            return len(ds) <= 1
        return ds <= {k}

    @property
    def is_real(self) -> bool:
        return all(c.is_real for c in self._terms.values())

    def __bool__(self):
        return bool(self._terms)

    def _check(self, other: "Form"):
        if not isinstance(other, Form):
            raise TypeError(f"expected a Form, got {type(other).__name__}")
        if other.dim != self.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def __add__(self, other):
        self._check(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, ZERO) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Form._from_clean(self.dim, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return Form._from_clean(self.dim, {m: -c for m, c in self._terms.items()})

    def __mul__(self, scalar):
        if isinstance(scalar, Form):
            return NotImplemented
        s = as_scalar(scalar)
        if not s:
            return Form(self.dim)
        return Form._from_clean(self.dim, {m: c * s for m, c in self._terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return self * (ONE / as_scalar(scalar))

    def __xor__(self, other):
        return wedge(self, other)

    def __eq__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        return self.dim == other.dim and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.dim, frozenset(self._terms.items())))
        return self._hash

    def __str__(self):
        return format_form(self)

    def __repr__(self):
        return f"Form({self.dim}, {format_form(self)!r})"


def generator(dim: int, i: int) -> Form:
    """The 1-form ``e^i`` (1-based)."""
    if not 1 <= i <= dim:
        raise ValueError(f"generator index {i} out of range 1..{dim}")
    return Form._from_clean(dim, {1 << (i - 1): ONE})


def one(dim: int) -> Form:
    return Form._from_clean(dim, {0: ONE})


def wedge(a: Form, b: Form) -> Form:
    a._check(b)
    out: dict[int, Scalar] = {}
    for ma, ca in a._terms.items():
        for mb, cb in b._terms.items():
            if ma & mb:
                continue
            m = ma | mb
            c = ca * cb
            if merge_sign(ma, mb) < 0:
                c = -c
            s = out.get(m)
            s = c if s is None else s + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
    return Form._from_clean(a.dim, out)


def wedge_all(forms: Sequence[Form], dim: int) -> Form:
    out = one(dim)
    for f in forms:
        out = wedge(out, f)
    return out


def grade_project(a: Form, k: int) -> Form:
    if not 0 <= k <= a.dim:
        raise ValueError(f"degree {k} out of range 0..{a.dim}")
    return Form._from_clean(a.dim, {m: c for m, c in a._terms.items() if popcount(m) == k})


def conjugate(a: Form) -> Form:
    return Form._from_clean(a.dim, {m: c.conjugate() for m, c in a._terms.items()})


def substitute(a: Form, images: Sequence[Form], dim: int | None = None) -> Form:
    """Apply the algebra map sending ``e^i`` to ``images[i-1]``.

    ``images`` are 1-forms over a possibly different number of generators
    ``dim``; the result is the exterior power of that linear map applied to
    ``a``.
    """
    if len(images) != a.dim:
        raise ValueError(f"need {a.dim} images, got {len(images)}")
    target = images[0].dim if images else (dim if dim is not None else 0)
    out = Form(target)
    cache: dict[int, Form] = {0: one(target)}

    def mono(mask: int) -> Form:
        if mask not in cache:
            high = mask.bit_length()
            rest = mask & ~(1 << (high - 1))
            cache[mask] = wedge(mono(rest), images[high - 1])
        return cache[mask]

    for m, c in a._terms.items():
        out = out + mono(m) * c
    return out


# text syntax ----------------------------------------------------------------


def _mask_token(mask: int, dim: int) -> str:
    idx = mask_indices(mask)
    if dim <= 9:
        return "e" + "".join(str(i) for i in idx)
    return "e" + ".".join(str(i) for i in idx)


def format_form(a: Form) -> str:
    """Canonical text, e.g. ``1 e12 + -2 e34``; the zero form is ``0``.

    A degree-0 term is written as its bare coefficient. Terms appear by
    degree, then mask value.
    """
    if not a._terms:
        return "0"
    parts = []
    for m, c in a.items():
        s = format_scalar(c)
        parts.append(s if m == 0 else f"{s} {_mask_token(m, a.dim)}")
    return " + ".join(parts)


_TERM_SPLIT = re.compile(r"\s\+\s(?![^()]*\))")
_TERM = re.compile(r"^(?P<coef>.*?)\s*\*?\s*(?P<mono>e[\d.]*)$")


def parse_form(text: str, dim: int) -> Form:
    """Parse the canonical text syntax back into a :class:`Form`."""
    t = text.strip()
    if t in ("", "0"):
        return Form(dim)
    out: dict[int, Scalar] = {}
    for raw in _TERM_SPLIT.split(t):
        raw = raw.strip()
        m = _TERM.match(raw)
        if m and len(m.group("mono")) > 1:
            coef_txt = m.group("coef").strip()
            if coef_txt in ("", "+"):
                coef = ONE
            elif coef_txt == "-":
                coef = -ONE
            else:
                coef = parse_scalar(coef_txt)
            idx_txt = m.group("mono")[1:]
            if "." in idx_txt:
                idx = [int(x) for x in idx_txt.split(".") if x]
            else:
                idx = [int(ch) for ch in idx_txt]
            if any(not 1 <= i <= dim for i in idx):
                raise ValueError(f"index out of range in term {raw!r}")
            sign = 1
            for p in range(len(idx)):
                for q in range(p + 1, len(idx)):
                    if idx[p] == idx[q]:
                        sign = 0
                    elif idx[p] > idx[q]:
                        sign = -sign
            if sign == 0:
                continue
            mask = mask_from_indices(idx)
            coef = coef * sign
        else:
            coef = parse_scalar(raw)
            mask = 0
        s = out.get(mask, ZERO) + coef
        if s:
            out[mask] = s
        else:
            out.pop(mask, None)
    return Form._from_clean(dim, out)


def dim_lambda(dim: int, k: int) -> int:
    return comb(dim, k) if 0 <= k <= dim else 0
