"""Combinatorial planar open books.

A planar page is a disk with ``r - 1`` holes. Holes are numbered ``1..r-1``;
the outer boundary is index 0 and never appears explicitly. A simple closed
curve on the page is recorded by the set of holes it encloses, so ``{i}`` is
parallel to inner boundary ``i`` and the full set ``{1..r-1}`` is parallel to
the outer boundary. The monodromy is a word of Dehn twists along such curves,
read left to right in application order.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Iterable, NamedTuple, Sequence


class ValidationError(ValueError):
    """Malformed open book data (bad holes, zero exponents, ...)."""


class UnsupportedPageError(ValueError):
    """The operation needs a planar page and got one of positive genus."""


@dataclass(frozen=True)
class PlanarPage:
    """Compact surface of the given genus with ``boundary_count`` boundary circles.

    Positive genus is tolerated only for norm bookkeeping; such pages carry no
    curves.
    """

    genus: int = 0
    boundary_count: int = 1

    def __post_init__(self):
        if self.genus < 0:
            raise ValidationError(f"genus must be >= 0, got {self.genus}")
        if self.boundary_count < 1:
            raise ValidationError(f"boundary count must be >= 1, got {self.boundary_count}")

    @property
    def is_planar(self) -> bool:
        return self.genus == 0

    @property
    def holes(self) -> range:
        return range(1, self.boundary_count)

    @property
    def euler_char(self) -> int:
        return 2 - 2 * self.genus - self.boundary_count


@dataclass(frozen=True, order=True)
class Curve:
    """Curve on a planar page, identified by the sorted tuple of enclosed holes."""

    holes: tuple[int, ...]

    def __post_init__(self):
        holes = tuple(sorted(set(self.holes)))
        if not holes:
            raise ValidationError("a curve must enclose at least one hole")
        if len(holes) != len(self.holes) or holes != tuple(self.holes):
            object.__setattr__(self, "holes", holes)

    @classmethod
    def of(cls, *holes: int) -> Curve:
        return cls(tuple(holes))

    def fits(self, page: PlanarPage) -> bool:
        return page.is_planar and self.holes[0] >= 1 and self.holes[-1] <= page.boundary_count - 1

    def relabel(self, mapping: Sequence[int]) -> Curve:
        """Apply ``mapping`` where ``mapping[i]`` is the new label of hole ``i``."""
        return Curve(tuple(sorted(mapping[h] for h in self.holes)))

    def shift(self, offset: int) -> Curve:
        return Curve(tuple(h + offset for h in self.holes))


class Letter(NamedTuple):
    """One syllable ``t_c^e`` of a monodromy word; ``e > 0`` is right-handed."""

    curve: Curve
    exponent: int


TwistWord = tuple[Letter, ...]


@dataclass(frozen=True)
class OpenBook:
    page: PlanarPage
    word: TwistWord = ()

    def __post_init__(self):
        word = tuple(Letter(*letter) for letter in self.word)
        object.__setattr__(self, "word", word)
        if word and not self.page.is_planar:
            raise UnsupportedPageError("twist curves are only supported on planar pages")
        for letter in word:
            if not isinstance(letter.curve, Curve):
                raise ValidationError(f"not a curve: {letter.curve!r}")
            if letter.exponent == 0:
                raise ValidationError("twist exponents must be non-zero")
            if not letter.curve.fits(self.page):
                raise ValidationError(
                    f"curve {set(letter.curve.holes)} does not fit a page with "
                    f"{self.page.boundary_count} boundary components"
                )

    @property
    def boundary_count(self) -> int:
        return self.page.boundary_count

    @property
    def total_exponent(self) -> int:
        return sum(abs(letter.exponent) for letter in self.word)


def euler_char(page: PlanarPage) -> int:
    return page.euler_char


def norm(ob: OpenBook) -> int:
    """``2g + r - 1``, which is ``1 - chi(page)``.

    This is the genus of the Heegaard splitting induced by the open book, and
    hence an upper bound for the contact genus of the underlying manifold and
    for the Heegaard genus (one plus the support norm) of the supported
    contact structure.
    """
    return 2 * ob.page.genus + ob.page.boundary_count - 1


def disk() -> OpenBook:
    return OpenBook(PlanarPage(0, 1))


def annulus(m: int) -> OpenBook:
    """Annulus page with monodromy ``t_c^m`` around the core ``c``."""
    word = (Letter(Curve.of(1), m),) if m else ()
    return OpenBook(PlanarPage(0, 2), word)


def hopf_band(sign: int) -> OpenBook:
    _check_sign(sign)
    return annulus(sign)


def trivial_planar(boundary_count: int) -> OpenBook:
    """Planar page with ``boundary_count`` binding components and identity monodromy."""
    return OpenBook(PlanarPage(0, boundary_count))


def _check_sign(sign: int) -> None:
    if sign not in (1, -1):
        raise ValidationError(f"sign must be +1 or -1, got {sign}")


def _require_planar(*books: OpenBook) -> None:
    for ob in books:
        if not ob.page.is_planar:
            raise UnsupportedPageError(f"page of genus {ob.page.genus} is not planar")


def plumb(a: OpenBook, b: OpenBook) -> OpenBook:
    """Plumb (Murasugi sum) two planar open books.

    The outer boundaries are merged, the holes of ``b`` are shifted past those
    of ``a``, and the monodromy is ``a``'s word followed by ``b``'s. The
    result supports the contact connected sum, and its norm is the sum of the
    norms.
    """
    _require_planar(a, b)
    offset = a.boundary_count - 1
    page = PlanarPage(0, a.boundary_count + b.boundary_count - 1)
    word = a.word + tuple(Letter(l.curve.shift(offset), l.exponent) for l in b.word)
    return OpenBook(page, word)


connected_sum = plumb


def stabilize(ob: OpenBook, sign: int, attach: Iterable[int] = ()) -> OpenBook:
    """Plumb a Hopf band onto the page.

    A new hole ``h = r`` is created and the twist ``t^sign`` along the curve
    enclosing ``attach | {h}`` is appended to the word. Positive sign keeps the
    supported contact structure, negative sign only the manifold.
    """
    _check_sign(sign)
    _require_planar(ob)
    attach = set(attach)
    r = ob.boundary_count
    bad = sorted(h for h in attach if not 1 <= h <= r - 1)
    if bad:
        raise ValidationError(f"attach holes {bad} not in 1..{r - 1}")
    curve = Curve(tuple(sorted(attach | {r})))
    return OpenBook(PlanarPage(0, r + 1), ob.word + (Letter(curve, sign),))


def merge_letters(word: Sequence[Letter]) -> list[Letter]:
    """Cyclically merge neighbouring letters on the same curve, dropping zero sums."""
    merged: list[Letter] = []
    for letter in word:
        if merged and merged[-1].curve == letter.curve:
            e = merged.pop().exponent + letter.exponent
            if e:
                merged.append(Letter(letter.curve, e))
        else:
            merged.append(letter)
    while len(merged) > 1 and merged[0].curve == merged[-1].curve:
        e = merged[0].exponent + merged[-1].exponent
        merged = merged[1:-1] + ([Letter(merged[0].curve, e)] if e else [])
    return merged


def letter_key(letter: Letter):
    """Sort key for letters: curve, then |exponent|, positive before negative."""
    return (letter.curve.holes, abs(letter.exponent), letter.exponent < 0)


def word_key(word: Sequence[Letter]):
    return tuple(letter_key(l) for l in word)


def _relabelings(r: int):
    holes = list(range(1, r))
    for image in permutations(holes):
        yield (0, *image)


def canonicalize(ob: OpenBook) -> OpenBook:
    """Least representative of ``ob`` up to conjugation, hole relabeling and letter merging.

    Words are compared lexicographically under ``letter_key``.
    """
    if not ob.word:
        return ob
    word = merge_letters(ob.word)
    if not word:
        return OpenBook(ob.page)
    best = best_key = None
    for mapping in _relabelings(ob.boundary_count):
        relabeled = [Letter(l.curve.relabel(mapping), l.exponent) for l in word]
        keys = word_key(relabeled)
        for i in range(len(relabeled)):
            key = keys[i:] + keys[:i]
            if best_key is None or key < best_key:
                best_key = key
                best = tuple(relabeled[i:] + relabeled[:i])
    return OpenBook(ob.page, best)


def is_canonical(ob: OpenBook) -> bool:
    return canonicalize(ob) == ob
