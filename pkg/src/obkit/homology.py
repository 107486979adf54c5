"""First homology from integral surgery presentations.

Everything here is exact; matrices are lists of Python ints so entry growth
never overflows.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

from .openbook import OpenBook, UnsupportedPageError

Matrix = Sequence[Sequence[int]]


def smith_normal_form(matrix: Matrix) -> tuple[int, ...]:
    """Invariant factors of an integer matrix.

    Returns ``min(rows, cols)`` non-negative entries ``d1 | d2 | ...`` with the
    zeros last. The pivot is always the entry of smallest non-zero absolute
    value in the remaining block.
    """
    a = [[int(x) for x in row] for row in matrix]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    if any(len(row) != cols for row in a):
        raise ValueError("ragged matrix")
    size = min(rows, cols)
    diag: list[int] = []

    for t in range(size):
        pivot = _min_abs_entry(a, t, range(t, rows), range(t, cols))
        if pivot is None:
            break
        _move_to(a, t, *pivot)
        while True:
            p = a[t][t]
            for i in range(t + 1, rows):
                q = a[i][t] // p
                if q:
                    ri, rt = a[i], a[t]
                    for j in range(t, cols):
                        ri[j] -= q * rt[j]
            for j in range(t + 1, cols):
                q = a[t][j] // p
                if q:
                    for row in a[t:]:
                        row[j] -= q * row[t]
            # leftovers in the pivot row/column are smaller than the pivot
            leftover = _min_abs_entry(a, t, range(t + 1, rows), [t])
            other = _min_abs_entry(a, t, [t], range(t + 1, cols))
            cands = [c for c in (leftover, other) if c is not None]
            if cands:
                _move_to(a, t, *min(cands, key=lambda ij: abs(a[ij[0]][ij[1]])))
                continue
            bad = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, cols) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            rt, rb = a[t], a[bad]
            for j in range(t, cols):
                rt[j] += rb[j]
        diag.append(abs(a[t][t]))

    return tuple(diag) + (0,) * (size - len(diag))


def _min_abs_entry(a, t, rows, cols):
    best = None
    for i in rows:
        for j in cols:
            x = a[i][j]
            if x and (best is None or abs(x) < best[0]):
                best = (abs(x), i, j)
                if best[0] == 1:
                    return i, j
    return None if best is None else best[1:]


def _move_to(a, t, i, j):
    if i != t:
        a[t], a[i] = a[i], a[t]
    if j != t:
        for row in a:
            row[t], row[j] = row[j], row[t]


@dataclass(frozen=True)
class AbelianGroup:
    """Finitely generated abelian group ``Z^rank + Z/d1 + ... + Z/dk`` with ``d_i | d_{i+1}``."""

    rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        torsion = tuple(int(d) for d in self.torsion)
        object.__setattr__(self, "torsion", torsion)
        if self.rank < 0:
            raise ValueError("rank must be non-negative")
        if any(d < 2 for d in torsion):
            raise ValueError(f"torsion divisors must be >= 2: {torsion}")
        if any(b % a for a, b in zip(torsion, torsion[1:])):
            raise ValueError(f"torsion divisors must form a divisibility chain: {torsion}")

    @classmethod
    def from_invariant_factors(cls, factors: Sequence[int], free: int = 0) -> AbelianGroup:
        """Group presented by a diagonal; factor 0 adds a free summand, 1 drops out."""
        factors = [abs(int(d)) for d in factors]
        rank = free + sum(1 for d in factors if d == 0)
        nonzero = [d for d in factors if d > 1]
        # re-normalize arbitrary divisor lists (e.g. Z/2 + Z/3 -> Z/6)
        if any(b % a for a, b in zip(nonzero, nonzero[1:])):
            square = [[d if i == j else 0 for j in range(len(nonzero))] for i, d in enumerate(nonzero)]
            nonzero = [d for d in smith_normal_form(square) if d > 1]
        return cls(rank, tuple(nonzero))

    @classmethod
    def cyclic(cls, n: int) -> AbelianGroup:
        """``Z/n``; ``n = 0`` gives ``Z`` and ``n = +-1`` the trivial group."""
        return cls.from_invariant_factors([n])

    @classmethod
    def free(cls, rank: int) -> AbelianGroup:
        return cls(rank)

    @classmethod
    def parse(cls, text: str) -> AbelianGroup:
        """Inverse of ``str``; also accepts non-normalized sums like ``Z/2 + Z/3``."""
        text = text.strip()
        if text in ("0", ""):
            return cls()
        rank = 0
        factors = []
        for term in text.split("+"):
            term = term.replace(" ", "")
            m = re.fullmatch(r"Z(?:\^(\d+))?", term)
            if m:
                rank += int(m.group(1) or 1)
                continue
            m = re.fullmatch(r"Z/(\d+)", term)
            if m:
                factors.append(int(m.group(1)))
                continue
            if term == "0":
                continue
            raise ValueError(f"cannot parse group term {term!r}")
        if 0 in factors:
            raise ValueError("Z/0 is ambiguous; write Z")
        return cls.from_invariant_factors(factors, free=rank)

    def __str__(self) -> str:
        terms = []
        if self.rank == 1:
            terms.append("Z")
        elif self.rank > 1:
            terms.append(f"Z^{self.rank}")
        terms += [f"Z/{d}" for d in self.torsion]
        return " + ".join(terms) if terms else "0"

    def __add__(self, other: AbelianGroup) -> AbelianGroup:
        """Direct sum."""
        if not isinstance(other, AbelianGroup):
            return NotImplemented
        return AbelianGroup.from_invariant_factors(
            self.torsion + other.torsion, free=self.rank + other.rank
        )

    direct_sum = __add__

    @property
    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.torsion

    @property
    def is_cyclic(self) -> bool:
        return self.rank + len(self.torsion) <= 1

    @property
    def torsion_order(self) -> int:
        order = 1
        for d in self.torsion:
            order *= d
        return order

    @property
    def order(self) -> int | None:
        """Cardinality, or None if infinite."""
        return None if self.rank else self.torsion_order

    def sort_key(self):
        return (self.rank, len(self.torsion), self.torsion)


@dataclass(frozen=True)
class LinkingMatrix:
    """Symmetric framing/linking matrix of a framed link in ``S^3``."""

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        entries = tuple(tuple(int(x) for x in row) for row in self.entries)
        object.__setattr__(self, "entries", entries)
        n = len(entries)
        for i, row in enumerate(entries):
            if len(row) != n:
                raise ValueError("linking matrix must be square")
            for j in range(i):
                if row[j] != entries[j][i]:
                    raise ValueError(f"linking matrix not symmetric at ({i}, {j})")

    @property
    def n(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)


def h1_from_matrix(m: LinkingMatrix | Matrix) -> AbelianGroup:
    """Cokernel of the linking matrix, i.e. H_1 of the surgered manifold."""
    entries = m.entries if isinstance(m, LinkingMatrix) else m
    return AbelianGroup.from_invariant_factors(smith_normal_form(entries))


def _unit_letters(ob: OpenBook):
    for letter in ob.word:
        sign = 1 if letter.exponent > 0 else -1
        for _ in range(abs(letter.exponent)):
            yield letter.curve, sign


def surgery_presentation(ob: OpenBook) -> LinkingMatrix:
    """Integral surgery link for a planar open book.

    One 0-framed unknot per hole, then one component per unit Dehn twist
    (``t^e`` contributes ``|e|`` copies). A twist of sign ``s`` gets framing
    ``-s`` and links each hole-unknot it encircles once; twist components sit
    on distinct page levels and are pairwise unlinked.
    """
    if not ob.page.is_planar:
        raise UnsupportedPageError(f"page of genus {ob.page.genus} is not planar")
    holes = ob.boundary_count - 1
    letters = list(_unit_letters(ob))
    n = holes + len(letters)
    rows = [[0] * n for _ in range(n)]
    for k, (curve, sign) in enumerate(letters):
        idx = holes + k
        rows[idx][idx] = -sign
        for h in curve.holes:
            rows[idx][h - 1] = rows[h - 1][idx] = 1
    return LinkingMatrix(tuple(map(tuple, rows)))


def h1(ob: OpenBook) -> AbelianGroup:
    return h1_from_matrix(surgery_presentation(ob))


def reduced_presentation(ob: OpenBook) -> tuple[tuple[int, ...], ...]:
    """Hole-by-hole relation matrix after blowing down every twist component.

    Each twist row has a unit diagonal and no other twist entries, so
    eliminating it is unimodular; what remains is ``sum_c e_c * 1_c 1_c^T``
    over the curves ``c`` with net exponent ``e_c``. Same cokernel as
    ``surgery_presentation``, at ``(r-1) x (r-1)`` size.
    """
    if not ob.page.is_planar:
        raise UnsupportedPageError(f"page of genus {ob.page.genus} is not planar")
    n = ob.boundary_count - 1
    q = [[0] * n for _ in range(n)]
    for letter in ob.word:
        hs = [h - 1 for h in letter.curve.holes]
        for i in hs:
            for j in hs:
                q[i][j] += letter.exponent
    return tuple(map(tuple, q))


def h1_reduced(ob: OpenBook) -> AbelianGroup:
    """``h1`` via ``reduced_presentation``; used by the search hot loop."""
    return h1_from_matrix(reduced_presentation(ob))


def seifert_matrix(p: int, q: int, r: int) -> LinkingMatrix:
    """0-framed unknot with three meridians framed ``p``, ``q``, ``r``."""
    return LinkingMatrix((
        (0, 1, 1, 1),
        (1, p, 0, 0),
        (1, 0, q, 0),
        (1, 0, 0, r),
    ))


def seifert_h1(p: int, q: int, r: int) -> AbelianGroup:
    return h1_from_matrix(seifert_matrix(p, q, r))
