"""Hodge, Bott-Chern and Aeppli diamonds of compact complex surfaces.

Everything here is closed-form in (b1, b+, b-); no geometry is computed.
"""

from __future__ import annotations

from dataclasses import dataclass

__all__ = [
    "TopologicalData",
    "Diamond",
    "DiamondError",
    "hodge_diamond",
    "bc_diamond",
    "aeppli_diamond",
    "ddc_totals",
    "teleman_relations",
    "FLAVORS",
]

FLAVORS = ("hodge", "bc", "aeppli")

# display order, top to bottom
ROWS = (((0, 0),), ((1, 0), (0, 1)), ((2, 0), (1, 1), (0, 2)), ((2, 1), (1, 2)), ((2, 2),))


class DiamondError(ValueError):
    pass


@dataclass(frozen=True)
class TopologicalData:
    b1: int
    bplus: int
    bminus: int

    def __post_init__(self):
        for name in ("b1", "bplus", "bminus"):
            v = getattr(self, name)
            if not isinstance(v, int) or v < 0:
                raise DiamondError(f"{name} must be a non-negative integer, got {v!r}")
        if self.b1 % 2 == 0 and self.bplus % 2 == 0:
            raise DiamondError(f"b1 = {self.b1} is even, so b+ must be odd (got {self.bplus})")
        if self.b1 % 2 == 1 and self.bplus % 2 == 1:
            raise DiamondError(f"b1 = {self.b1} is odd, so b+ must be even (got {self.bplus})")

    @property
    def b2(self) -> int:
        return self.bplus + self.bminus

    @property
    def betti(self) -> list[int]:
        return [1, self.b1, self.b2, self.b1, 1]


@dataclass(frozen=True)
class Diamond:
    flavor: str
    entries: tuple[tuple[tuple[int, int], int], ...]

    @classmethod
    def build(cls, flavor: str, values: dict[tuple[int, int], int]) -> "Diamond":
        return cls(flavor, tuple(sorted(values.items())))

    def __getitem__(self, pq: tuple[int, int]) -> int:
        return dict(self.entries)[pq]

    def rows(self) -> list[list[int]]:
        h = dict(self.entries)
        return [[h[pq] for pq in row] for row in ROWS]

    def is_symmetric(self) -> bool:
        h = dict(self.entries)
        if self.flavor == "hodge":
            return all(h[p, q] == h[2 - p, 2 - q] for p, q in h)
        return all(h[p, q] == h[q, p] for p, q in h)

    def render(self) -> str:
        rows = self.rows()
        width = max(len(str(x)) for r in rows for x in r)
        lines = []
        for r in rows:
            # five-column grid; a row of length n starts at column 3 - n
            grid = [""] * 5
            for i, x in enumerate(r):
                grid[3 - len(r) + 2 * i] = str(x)
            lines.append(" ".join(c.rjust(width) for c in grid).rstrip())
        return "\n".join(lines)

    def as_dict(self) -> dict:
        return {"flavor": self.flavor, "rows": self.rows(),
                "entries": {f"{p},{q}": v for (p, q), v in self.entries}}


def _check(td) -> TopologicalData:
    if not isinstance(td, TopologicalData):
        td = TopologicalData(*td)
    return td


def hodge_diamond(td) -> Diamond:
    td = _check(td)
    b1, bp, bm = td.b1, td.bplus, td.bminus
    if b1 % 2 == 0:
        h = {(1, 0): b1 // 2, (0, 1): b1 // 2, (2, 0): (bp - 1) // 2, (0, 2): (bp - 1) // 2,
             (1, 1): bm + 1, (2, 1): b1 // 2, (1, 2): b1 // 2}
    else:
        h = {(1, 0): (b1 - 1) // 2, (0, 1): (b1 + 1) // 2, (2, 0): bp // 2, (0, 2): bp // 2,
             (1, 1): bm, (2, 1): (b1 + 1) // 2, (1, 2): (b1 - 1) // 2}
    h[0, 0] = h[2, 2] = 1
    return Diamond.build("hodge", h)


def bc_diamond(td) -> Diamond:
    td = _check(td)
    b1, bp, bm = td.b1, td.bplus, td.bminus
    if b1 % 2 == 0:
        h = dict(hodge_diamond(td).entries)
    else:
        h = {(1, 0): (b1 - 1) // 2, (0, 1): (b1 - 1) // 2, (2, 0): bp // 2, (0, 2): bp // 2,
             (1, 1): bm + 1, (2, 1): (b1 + 1) // 2, (1, 2): (b1 + 1) // 2,
             (0, 0): 1, (2, 2): 1}
    return Diamond.build("bc", h)


def aeppli_diamond(td) -> Diamond:
    """Point reflection of the Bott-Chern diamond."""
    bc = dict(bc_diamond(td).entries)
    return Diamond.build("aeppli", {(p, q): bc[2 - p, 2 - q] for p, q in bc})


def ddc_totals(dm: Diamond) -> list[int]:
    """Antidiagonal sums h^k = sum_{p+q=k} h^{p,q}."""
    h = dict(dm.entries)
    return [sum(v for (p, q), v in h.items() if p + q == k) for k in range(5)]


def teleman_relations(td) -> tuple[bool, bool]:
    """The two linear relations between Bott-Chern numbers and (b1, b2)."""
    td = _check(td)
    h = dict(bc_diamond(td).entries)
    first = h[1, 0] + h[0, 1] + h[2, 1] + h[1, 2] == 2 * td.b1
    target = td.b2 if td.b1 % 2 == 0 else td.b2 + 1
    second = h[2, 0] + h[1, 1] + h[0, 2] == target
    return first, second
