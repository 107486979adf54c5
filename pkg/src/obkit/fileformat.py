"""Text format for open books.

::

    # pair of pants, t1 t2^-2 t3^-3
    page 0 3
    twist 1 1
    twist -2 2
    twist -3 outer

``outer`` is shorthand for the curve enclosing every hole. Twist lines are in
application order.
"""
from __future__ import annotations

from .openbook import Curve, Letter, OpenBook, PlanarPage


class ParseError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def _int(token: str, lineno: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(lineno, f"{what} must be an integer, got {token!r}") from None


def parse_curve(token: str, page: PlanarPage, lineno: int = 0) -> Curve:
    if not page.is_planar:
        raise ParseError(lineno, "curves are not supported on pages of positive genus")
    if token == "outer":
        holes = tuple(page.holes)
    else:
        holes = tuple(_int(t, lineno, "hole") for t in token.split(",") if t)
    if not holes:
        raise ParseError(lineno, "empty curve")
    if list(holes) != sorted(set(holes)):
        raise ParseError(lineno, f"hole list must be strictly ascending: {token}")
    r = page.boundary_count
    for h in holes:
        if not 1 <= h <= r - 1:
            raise ParseError(lineno, f"hole {h} out of range 1..{r - 1}")
    return Curve(holes)


def parse_open_book(text: str) -> OpenBook:
    page = None
    word = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if tokens[0] == "page":
            if page is not None:
                raise ParseError(lineno, "duplicate page line")
            if len(tokens) != 3:
                raise ParseError(lineno, "expected 'page <genus> <boundary_count>'")
            genus = _int(tokens[1], lineno, "genus")
            r = _int(tokens[2], lineno, "boundary count")
            if genus < 0 or r < 1:
                raise ParseError(lineno, "need genus >= 0 and boundary count >= 1")
            page = PlanarPage(genus, r)
        elif tokens[0] == "twist":
            if page is None:
                raise ParseError(lineno, "twist before page line")
            if len(tokens) != 3:
                raise ParseError(lineno, "expected 'twist <exponent> <curve>'")
            e = _int(tokens[1], lineno, "exponent")
            if e == 0:
                raise ParseError(lineno, "zero exponent")
            word.append(Letter(parse_curve(tokens[2], page, lineno), e))
        else:
            raise ParseError(lineno, f"unknown directive {tokens[0]!r}")
    if page is None:
        raise ParseError(0, "missing page line")
    return OpenBook(page, tuple(word))


def format_curve(curve: Curve, page: PlanarPage) -> str:
    if len(curve.holes) > 1 and curve.holes == tuple(page.holes):
        return "outer"
    return ",".join(map(str, curve.holes))


def serialize_open_book(ob: OpenBook) -> str:
    lines = [f"page {ob.page.genus} {ob.page.boundary_count}"]
    lines += [f"twist {l.exponent} {format_curve(l.curve, ob.page)}" for l in ob.word]
    return "\n".join(lines) + "\n"
