"""Exact toolkit for planar open book decompositions of 3-manifolds."""
from .contact import CatalogEntry, ContactLabel, HalfInteger, catalog_lookup, d3_connected_sum, nonadditivity_report
from .fileformat import parse_open_book, serialize_open_book
from .homology import AbelianGroup, LinkingMatrix, h1, h1_from_matrix, seifert_h1, smith_normal_form, surgery_presentation
from .openbook import (
    Curve,
    Letter,
    OpenBook,
    PlanarPage,
    UnsupportedPageError,
    ValidationError,
    canonicalize,
    euler_char,
    hopf_band,
    norm,
    plumb,
    stabilize,
)
from .search import SearchConfig, cg_upper_bound, enumerate_books, verify_annulus_family

__version__ = "0.1.0"
