"""Contact-structure bookkeeping: exact d3 arithmetic and a small catalog.

Nothing here computes a contact invariant from an open book. Tightness and
d3 values in the catalog are recorded facts about specific open books.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering

from .homology import AbelianGroup, h1
from .openbook import Curve, Letter, OpenBook, PlanarPage, canonicalize, norm


class PreconditionError(ValueError):
    pass


@total_ordering
@dataclass(frozen=True)
class HalfInteger:
    """Exact element of ``(1/2) Z``, stored as twice its value."""

    twice_value: int

    @classmethod
    def parse(cls, text: str) -> HalfInteger:
        try:
            value = Fraction(text.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a half-integer: {text!r}") from exc
        return cls.from_value(value)

    @classmethod
    def from_value(cls, value) -> HalfInteger:
        twice = Fraction(value) * 2
        if twice.denominator != 1:
            raise ValueError(f"{value} is not a half-integer")
        return cls(int(twice))

    @property
    def value(self) -> Fraction:
        return Fraction(self.twice_value, 2)

    def __add__(self, other):
        if isinstance(other, HalfInteger):
            return HalfInteger(self.twice_value + other.twice_value)
        return NotImplemented

    def __neg__(self):
        return HalfInteger(-self.twice_value)

    def __lt__(self, other):
        if isinstance(other, HalfInteger):
            return self.twice_value < other.twice_value
        return NotImplemented

    def __str__(self) -> str:
        return str(self.value)


HALF = HalfInteger(1)
MINUS_HALF = HalfInteger(-1)


def xi_d_name(d: HalfInteger) -> str:
    return f"xi_d({d})"


@dataclass(frozen=True)
class ContactLabel:
    name: str
    d3: HalfInteger | None = None
    tight: bool | None = None
    c1_torsion: bool = True

    def __post_init__(self):
        if self.name.startswith("xi_d(") and self.name.endswith(")"):
            d = HalfInteger.parse(self.name[5:-1])
            if self.d3 != d or self.tight is not False:
                raise ValueError(f"{self.name} must be overtwisted with d3 = {d}")

    def __str__(self) -> str:
        parts = [self.name]
        if self.tight is not None:
            parts.append("tight" if self.tight else "overtwisted")
        if self.d3 is not None:
            parts.append(f"d3={self.d3}")
        return ", ".join(parts)


@dataclass(frozen=True)
class CatalogEntry:
    open_book: OpenBook
    manifold_name: str
    label: ContactLabel
    hg_upper_bound: int
    h1: AbelianGroup

    def __post_init__(self):
        if canonicalize(self.open_book) != self.open_book:
            raise ValueError("catalog open books are stored canonically")
        if self.hg_upper_bound != norm(self.open_book):
            raise ValueError("hg_upper_bound must equal the norm of the open book")


def d3_connected_sum(a: HalfInteger, b: HalfInteger, c1_torsion: bool = True) -> HalfInteger:
    """d3 of a contact connected sum: ``a + b + 1/2``.

    Only valid when ``c1`` of the structures is torsion.
    """
    if not c1_torsion:
        raise PreconditionError("d3 connected-sum formula needs c1 torsion")
    return a + b + HALF


def pants_open_book() -> OpenBook:
    """Pair of pants with monodromy ``t1 t2^-2 t3^-3``, t3 around the outer boundary."""
    return OpenBook(
        PlanarPage(0, 3),
        (
            Letter(Curve.of(1), 1),
            Letter(Curve.of(2), -2),
            Letter(Curve.of(1, 2), -3),
        ),
    )


def _entry(ob: OpenBook, manifold: str, label: ContactLabel) -> CatalogEntry:
    ob = canonicalize(ob)
    return CatalogEntry(ob, manifold, label, norm(ob), h1(ob))


_FIXED = {
    e.open_book: e
    for e in (
        _entry(OpenBook(PlanarPage(0, 1)), "S^3", ContactLabel("xi_std", tight=True)),
        _entry(
            pants_open_book(),
            "S^3",
            ContactLabel(xi_d_name(MINUS_HALF), d3=MINUS_HALF, tight=False),
        ),
    )
}


def catalog_lookup(ob: OpenBook) -> CatalogEntry | None:
    if not ob.page.is_planar:
        return None
    ob = canonicalize(ob)
    if ob in _FIXED:
        return _FIXED[ob]
    r = ob.boundary_count
    if not ob.word and r >= 2:
        k = r - 1
        name = "S^1 x S^2" if k == 1 else f"#_{k} S^1 x S^2"
        return _entry(ob, name, ContactLabel("xi_std", tight=True))
    if r == 2 and len(ob.word) == 1:
        m = ob.word[0].exponent
        if m > 0:
            return _entry(ob, f"L({m},-1)", ContactLabel("xi_std", tight=True))
        return _entry(ob, f"L({-m},1)", ContactLabel("xi_ot", tight=False))
    return None


def nonadditivity_report(d3_of_xi: HalfInteger, hg_of_xi: int) -> str:
    """Arithmetic behind the failure of additivity for Hg under contact connected sum.

    The inputs describe a contact structure on an integral homology sphere.
    Only the d3 identity is checked; the isotopy step is narrated.
    """
    pants = catalog_lookup(pants_open_book())
    hg_ot = pants.hg_upper_bound
    total = d3_connected_sum(d3_of_xi, MINUS_HALF, c1_torsion=True)
    if total != d3_of_xi:
        raise AssertionError("d3 identity failed")
    lines = [
        f"d3(Y, xi) = {d3_of_xi}",
        f"d3(Y, xi # xi_d(-1/2)) = {d3_of_xi} + ({MINUS_HALF}) + 1/2 = {total}",
        "equal d3 on a homology sphere: homotopic plane fields; overtwisted classification gives isotopy",
        f"Hg(Y, xi # xi_d(-1/2)) = Hg(Y, xi) = {hg_of_xi}",
        f"Hg(S^3, xi_d(-1/2)) = {hg_ot} (pants page, monodromy t1 t2^-2 t3^-3)",
        f"{hg_of_xi} < {hg_of_xi} + {hg_ot}",
    ]
    return "\n".join(lines) + "\n"
