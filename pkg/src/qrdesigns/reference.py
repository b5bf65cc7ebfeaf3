"""Published values for the extended QR code of length 42 and helpers to build them."""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources

from .enumerators import (
    HarmonicWeightEnumerator,
    JacobiPolynomial,
    W,
    X,
    Y,
    Z,
    expand,
    lin,
    poly_mul,
    reference_harmonic,
)

Q42_DESIGN_SHELLS = {10: 18, 32: 744}
Q42_SHELL10_BLOCKS = 1722
Q42_LAMBDA4_SHELL10 = (42, 13)
Q42_PROFILE = (2, 3)


@lru_cache(maxsize=None)
def q42_jacobi_tables() -> tuple[JacobiPolynomial, JacobiPolynomial]:
    """Jacobi polynomials of the length-42 code for T = {0, 1, inf} and {0, 6, inf}."""
    text = resources.files("qrdesigns").joinpath("data/q42_jacobi_tables.json").read_text()
    data = json.loads(text)
    return JacobiPolynomial.from_json(data["T1"]), JacobiPolynomial.from_json(data["T2"])


def q42_difference_closed_form() -> dict:
    """x^9 y^9 (x^2 - y^2)^9 (w y - x z)^3, expanded."""
    x2_y2 = lin((1, poly_mul(X, X)), (-1, poly_mul(Y, Y)))
    wy_xz = lin((1, poly_mul(W, Y)), (-1, poly_mul(X, Z)))
    return expand((X, 9), (Y, 9), (x2_y2, 9), (wy_xz, 3))


def q42_harmonic_closed_form() -> HarmonicWeightEnumerator:
    """-5740 x^12 y^12 (x^2 - y^2)^9 as a harmonic weight enumerator of length 42."""
    x2_y2 = lin((1, poly_mul(X, X)), (-1, poly_mul(Y, Y)))
    poly = expand((X, 12), (Y, 12), (x2_y2, 9))
    return reference_harmonic(42, {m: -5740 * c for m, c in poly.items()})
