"""Plain-text model files.

A model file has up to five bracketed sections::

    [model]
    name = hopf

    [algebra]
    dim = 4
    d e2 = -1 e34
    d e3 = 1 e24
    d e4 = -1 e23

    [J]
    0 -1 0 0
    1 0 0 0
    0 0 0 -1
    0 0 1 0

Omitted generators are closed. Instead of real equations the algebra may be
given in a (1,0)-coframe f1..fm, e.g. ``d f2 = 1 f1~1`` where ``~`` marks a
conjugated index; f^j is identified with e^(2j-1) + i e^(2j). The flag
section ``[complex-coframe]`` declares the standard J for that pairing and
makes ``[J]`` optional. A ``[metric]`` section is accepted only if it is the
identity, since g is always the identity on the coframe.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .coframe import CoframeAlgebra
from .exterior import Form, conjugate, format_form, generator, one, parse_form, wedge
from .linalg import Matrix
from .scalars import I, ONE, Scalar, parse_scalar
from .triple import standard_j

__all__ = ["ModelParseError", "ModelSpec", "parse_model", "load_model", "dump_model", "real_part", "imag_part"]

SECTIONS = ("model", "algebra", "J", "complex-coframe", "metric")


class ModelParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class ModelSpec:
    name: str
    algebra: CoframeAlgebra
    jmat: Matrix
    complex_coframe: bool = False


def real_part(a: Form) -> Form:
    return (a + conjugate(a)) / 2


def imag_part(a: Form) -> Form:
    return (a - conjugate(a)) / (2 * I)


def phi(dim: int, j: int, conj: bool = False) -> Form:
    """f^j = e^(2j-1) + i e^(2j), or its conjugate."""
    im = -I if conj else I
    return generator(dim, 2 * j - 1) + generator(dim, 2 * j) * im


_SPLIT = re.compile(r"\s\+\s(?![^()]*\))")
_F_TERM = re.compile(r"^(?P<coef>.*?)\s*\*?\s*f(?P<idx>(?:~?\d)+)$")
_D_LINE = re.compile(r"^d\s+(?P<kind>[ef])(?P<i>\d+)\s*=\s*(?P<rhs>.*)$")


def _parse_complex(text: str, dim: int, line: int) -> Form:
    m_half = dim // 2
    out = Form(dim)
    t = text.strip()
    if t == "0":
        return out
    for raw in _SPLIT.split(t):
        mt = _F_TERM.match(raw.strip())
        if not mt:
            raise ModelParseError(f"cannot read complex term {raw.strip()!r}", line)
        coef_txt = mt.group("coef").strip()
        coef = ONE if coef_txt in ("", "+") else -ONE if coef_txt == "-" else parse_scalar(coef_txt)
        term = one(dim)
        for conj, j in re.findall(r"(~?)(\d)", mt.group("idx")):
            j = int(j)
            if not 1 <= j <= m_half:
                raise ModelParseError(f"f{j} out of range 1..{m_half}", line)
            term = wedge(term, phi(dim, j, bool(conj)))
        out = out + term * coef
    return out


def _parse_rational_row(text: str, line: int) -> list[Fraction]:
    try:
        return [Fraction(tok) for tok in text.split()]
    except (ValueError, ZeroDivisionError):
        raise ModelParseError(f"J and metric entries must be rationals: {text!r}", line) from None


def parse_model(text: str, default_name: str = "model") -> ModelSpec:
    section = None
    seen: set[str] = set()
    name = default_name
    dim = None
    real_eqs: dict[int, tuple[str, int]] = {}
    complex_eqs: dict[int, tuple[str, int]] = {}
    j_rows: list[tuple[list[Fraction], int]] = []
    metric_rows: list[tuple[list[Fraction], int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        s = raw.split("#", 1)[0].strip()
        if not s:
            continue
        if s.startswith("["):
            if not s.endswith("]"):
                raise ModelParseError(f"malformed section header {s!r}", lineno)
            section = s[1:-1].strip()
            if section not in SECTIONS:
                raise ModelParseError(f"unknown section [{section}]", lineno)
            if section in seen:
                raise ModelParseError(f"duplicate section [{section}]", lineno)
            seen.add(section)
            continue
        if section is None:
            raise ModelParseError("content before the first section header", lineno)
        if section == "model":
            key, _, val = s.partition("=")
            if key.strip() != "name" or not val.strip():
                raise ModelParseError(f"expected 'name = ...', got {s!r}", lineno)
            name = val.strip()
        elif section == "algebra":
            if s.startswith("dim"):
                key, _, val = s.partition("=")
                if key.strip() != "dim":
                    raise ModelParseError(f"cannot read {s!r}", lineno)
                try:
                    dim = int(val)
                except ValueError:
                    raise ModelParseError(f"dim must be an integer, got {val.strip()!r}", lineno) from None
                if dim <= 0 or dim % 2:
                    raise ModelParseError(f"dim must be a positive even integer, got {dim}", lineno)
                continue
            m = _D_LINE.match(s)
            if not m:
                raise ModelParseError(f"expected 'd eN = ...' or 'd fN = ...', got {s!r}", lineno)
            target = real_eqs if m.group("kind") == "e" else complex_eqs
            i = int(m.group("i"))
            if i in target:
                raise ModelParseError(f"second equation for d {m.group('kind')}{i}", lineno)
            target[i] = (m.group("rhs"), lineno)
        elif section == "J":
            j_rows.append((_parse_rational_row(s, lineno), lineno))
        elif section == "metric":
            metric_rows.append((_parse_rational_row(s, lineno), lineno))
        else:
            raise ModelParseError("[complex-coframe] is a flag section and takes no content", lineno)

    if "algebra" not in seen:
        raise ModelParseError("missing [algebra] section")
    if dim is None:
        raise ModelParseError("missing 'dim = N' in [algebra]")
    if real_eqs and complex_eqs:
        raise ModelParseError("mixing real (d eN) and complex (d fN) equations is not supported")

    dgen = [Form(dim) for _ in range(dim)]
    for i, (rhs, ln) in sorted(real_eqs.items()):
        if not 1 <= i <= dim:
            raise ModelParseError(f"generator e{i} out of range 1..{dim}", ln)
        try:
            dgen[i - 1] = parse_form(rhs, dim)
        except ValueError as exc:
            raise ModelParseError(str(exc), ln) from None
    for j, (rhs, ln) in sorted(complex_eqs.items()):
        if not 1 <= j <= dim // 2:
            raise ModelParseError(f"generator f{j} out of range 1..{dim // 2}", ln)
        try:
            df = _parse_complex(rhs, dim, ln)
        except ValueError as exc:
            if isinstance(exc, ModelParseError):
                raise
            raise ModelParseError(str(exc), ln) from None
        dgen[2 * j - 2] = real_part(df)
        dgen[2 * j - 1] = imag_part(df)
    for i, f in enumerate(dgen, 1):
        if not f.is_homogeneous(2):
            ln = (real_eqs.get(i) or (None, None))[1]
            raise ModelParseError(f"d e{i} must be a 2-form", ln)
        if not f.is_real:
            ln = (real_eqs.get(i) or (None, None))[1]
            raise ModelParseError(f"d e{i} must have real coefficients", ln)

    cplx = "complex-coframe" in seen
    if j_rows:
        for row, ln in j_rows:
            if len(row) != dim:
                raise ModelParseError(f"J row has {len(row)} entries, expected {dim}", ln)
        if len(j_rows) != dim:
            raise ModelParseError(f"[J] has {len(j_rows)} rows, expected {dim}", j_rows[-1][1])
        jmat = Matrix([r for r, _ in j_rows], dim)
        if cplx and jmat != standard_j(dim):
            raise ModelParseError("[J] disagrees with the standard J declared by [complex-coframe]", j_rows[0][1])
    elif cplx:
        jmat = standard_j(dim)
    else:
        raise ModelParseError("missing [J] section (or [complex-coframe] flag)")

    if metric_rows:
        if len(metric_rows) != dim or any(len(r) != dim for r, _ in metric_rows):
            raise ModelParseError(f"[metric] must be {dim}x{dim}", metric_rows[0][1])
        for i, (row, ln) in enumerate(metric_rows):
            if any(x != (1 if i == j else 0) for j, x in enumerate(row)):
                raise ModelParseError("only the identity metric is supported; orthonormalize the coframe first", ln)

    return ModelSpec(name, CoframeAlgebra(dim, dgen, name), jmat, cplx)


def load_model(path) -> ModelSpec:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise ModelParseError(f"cannot read {p}: {exc.strerror}") from None
    return parse_model(text, default_name=p.stem)


def _fmt_rational(x: Scalar) -> str:
    if not x.is_real:
        raise ValueError("J entries must be real")
    f = x.re
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def dump_model(name: str, alg: CoframeAlgebra, jmat: Matrix) -> str:
    """Canonical text; ``parse_model(dump_model(...))`` reproduces the input."""
    lines = ["[model]", f"name = {name}", "", "[algebra]", f"dim = {alg.dim}"]
    for i, f in enumerate(alg.dgen, 1):
        if f:
            lines.append(f"d e{i} = {format_form(f)}")
    lines += ["", "[J]"]
    for row in jmat.rows:
        lines.append(" ".join(_fmt_rational(x) for x in row))
    return "\n".join(lines) + "\n"
