"""Jacobi polynomials and harmonic weight enumerators of binary codes.

The Jacobi polynomial of a code C with respect to a coordinate set T is

    J(w, z, x, y) = sum_{c in C} w^m0 z^m1 x^n0 y^n1

where m1 (n1) counts ones of c inside (outside) T and m0 = |T| - m1,
n0 = n - |T| - n1.  It is stored as a dense integer table indexed by
(m1, n1).

For codes whose automorphism group contains PSL(2, p), p = 1 mod 8, the
G-invariant degree-3 harmonic functions form a line spanned by the function
taking one constant value on each of the two triple orbits.  Its harmonic
weight enumerator only needs the two Jacobi tables of the orbit
representatives.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb, gcd

import numpy as np

from .codes import INF_LABEL, LinearCode, enumerate_codewords, map_codewords
from .projective import OrbitPartition, colex_rank, point_label

Monomial = tuple[int, int, int, int]  # exponents of (w, z, x, y)


# -- small exact polynomial algebra in w, z, x, y ---------------------------

def poly_mul(a: dict[Monomial, int], b: dict[Monomial, int]) -> dict[Monomial, int]:
    out: dict[Monomial, int] = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = tuple(i + j for i, j in zip(ma, mb))
            out[m] = out.get(m, 0) + ca * cb
    return {m: c for m, c in out.items() if c}


def poly_pow(a: dict[Monomial, int], e: int) -> dict[Monomial, int]:
    out = {(0, 0, 0, 0): 1}
    for _ in range(e):
        out = poly_mul(out, a)
    return out


def expand(*factors: tuple[dict[Monomial, int], int]) -> dict[Monomial, int]:
    """Expand a product of (polynomial, exponent) pairs."""
    out = {(0, 0, 0, 0): 1}
    for poly, e in factors:
        out = poly_mul(out, poly_pow(poly, e))
    return out


W = {(1, 0, 0, 0): 1}
Z = {(0, 1, 0, 0): 1}
X = {(0, 0, 1, 0): 1}
Y = {(0, 0, 0, 1): 1}


def lin(*terms: tuple[int, dict[Monomial, int]]) -> dict[Monomial, int]:
    """Integer linear combination of polynomials."""
    out: dict[Monomial, int] = {}
    for c, poly in terms:
        for m, v in poly.items():
            out[m] = out.get(m, 0) + c * v
    return {m: v for m, v in out.items() if v}


# -- Jacobi polynomials ------------------------------------------------------

def _fmt_var(name: str, e: int) -> str:
    if e == 0:
        return ""
    if e == 1:
        return name
    return f"{name}^{{{e}}}" if e > 9 else f"{name}^{e}"


@dataclass(frozen=True)
class JacobiPolynomial:
    """Coefficient table ``coeff[m1, n1]`` of a Jacobi polynomial.

    Tables built from a code have nonnegative entries; differences of two
    tables (``a - b``) may be signed.
    """

    n: int
    T: tuple
    coeff: np.ndarray

    def __post_init__(self):
        t = len(self.T)
        if self.coeff.shape != (t + 1, self.n - t + 1):
            raise ValueError("coefficient table has the wrong shape")
        self.coeff.setflags(write=False)

    @property
    def t(self) -> int:
        return len(self.T)

    def __getitem__(self, key: Monomial) -> int:
        """Coefficient of w^m0 z^m1 x^n0 y^n1."""
        m0, m1, n0, n1 = key
        if m0 + m1 != self.t or n0 + n1 != self.n - self.t or min(key) < 0:
            return 0
        return int(self.coeff[m1, n1])

    def _compatible(self, other: JacobiPolynomial) -> None:
        if self.n != other.n or self.t != other.t:
            raise ValueError("Jacobi polynomials have different shapes")

    def __add__(self, other: JacobiPolynomial) -> JacobiPolynomial:
        self._compatible(other)
        return JacobiPolynomial(self.n, self.T, self.coeff + other.coeff)

    def __sub__(self, other: JacobiPolynomial) -> JacobiPolynomial:
        self._compatible(other)
        return JacobiPolynomial(self.n, self.T, self.coeff - other.coeff)

    def __eq__(self, other):
        if not isinstance(other, JacobiPolynomial):
            return NotImplemented
        return self.n == other.n and self.t == other.t and np.array_equal(self.coeff, other.coeff)

    def same_table(self, other: JacobiPolynomial) -> bool:
        return self == other

    def terms(self) -> list[tuple[Monomial, int]]:
        """Nonzero terms ordered by (m1, n1)."""
        t, nt = self.t, self.n - self.t
        out = []
        for m1, n1 in zip(*np.nonzero(self.coeff)):
            out.append(((t - int(m1), int(m1), nt - int(n1), int(n1)), int(self.coeff[m1, n1])))
        return out

    def monomials(self) -> dict[Monomial, int]:
        return dict(self.terms())

    def total(self) -> int:
        return int(self.coeff.sum())

    def covering_count(self, weight: int) -> int:
        """Number of weight-``weight`` codewords whose support contains T."""
        if not self.t <= weight <= self.n:
            raise ValueError(f"weight must lie in [{self.t}, {self.n}]")
        return int(self.coeff[self.t, weight - self.t])

    def weight_enumerator(self) -> np.ndarray:
        """Coefficients of J(x, y, x, y), indexed by weight."""
        out = np.zeros(self.n + 1, dtype=np.int64)
        for m1 in range(self.t + 1):
            out[m1: m1 + self.n - self.t + 1] += self.coeff[m1]
        return out

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "t": self.t,
            "T": [str(x) for x in self.T],
            "terms": [
                {"m0": m[0], "m1": m[1], "n0": m[2], "n1": m[3], "coeff": c}
                for m, c in sorted(self.terms())
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> JacobiPolynomial:
        n, t = data["n"], data["t"]
        T = tuple(INF_LABEL if s == INF_LABEL else int(s) for s in data["T"])
        coeff = np.zeros((t + 1, n - t + 1), dtype=np.int64)
        for term in data["terms"]:
            coeff[term["m1"], term["n1"]] = term["coeff"]
        return cls(n, T, coeff)

    @classmethod
    def from_monomials(cls, n: int, T: Sequence, poly: dict[Monomial, int]) -> JacobiPolynomial:
        t = len(T)
        coeff = np.zeros((t + 1, n - t + 1), dtype=np.int64)
        for (m0, m1, n0, n1), c in poly.items():
            if m0 + m1 != t or n0 + n1 != n - t:
                raise ValueError(f"monomial {(m0, m1, n0, n1)} is not homogeneous of the right shape")
            coeff[m1, n1] += c
        return cls(n, tuple(T), coeff)

    def paper_style(self) -> str:
        """Terms as ``744w^3x^{29}y^{10}``, variables in w, x, y, z order."""
        parts = []
        for (m0, m1, n0, n1), c in self.terms():
            body = _fmt_var("w", m0) + _fmt_var("x", n0) + _fmt_var("y", n1) + _fmt_var("z", m1)
            mag = abs(c)
            coef = "" if mag == 1 and body else str(mag)
            sign = "-" if c < 0 else "+"
            parts.append((sign, coef + (body or "")))
        if not parts:
            return "0"
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, s in parts[1:]:
            text += f" {sign} {s}"
        return text


def jacobi_many(code: LinearCode, sets: Sequence[Sequence], threads: int | None = None,
                budget: int | None = None) -> list[JacobiPolynomial]:
    """Jacobi polynomials for several coordinate sets in one enumeration pass."""
    n = code.n
    specs = []
    for T in sets:
        T = tuple(T)
        if len(set(T)) != len(T):
            raise ValueError("coordinate set has repeated labels")
        specs.append((T, np.uint64(code.mask(T))))

    def accumulate(words):
        wt = np.bitwise_count(words).astype(np.int64)
        out = []
        for T, mask in specs:
            t = len(T)
            m1 = np.bitwise_count(words & mask).astype(np.int64)
            idx = m1 * (n - t + 1) + (wt - m1)
            out.append(np.bincount(idx, minlength=(t + 1) * (n - t + 1)))
        return out

    def merge(a, b):
        return [x + y for x, y in zip(a, b)]

    tables = map_codewords(code, accumulate, merge, threads, budget)
    return [
        JacobiPolynomial(n, T, tab.reshape(len(T) + 1, n - len(T) + 1).astype(np.int64))
        for (T, _), tab in zip(specs, tables)
    ]


def jacobi(code: LinearCode, T: Sequence, threads: int | None = None,
           budget: int | None = None) -> JacobiPolynomial:
    return jacobi_many(code, [T], threads, budget)[0]


def covering_count(J: JacobiPolynomial, weight: int) -> int:
    return J.covering_count(weight)


def jacobi_difference(a: JacobiPolynomial, b: JacobiPolynomial) -> JacobiPolynomial:
    return a - b


# -- harmonic functions ------------------------------------------------------

@dataclass(frozen=True)
class HarmonicFunction3:
    """Degree-3 harmonic function constant on both PSL(2, p) triple orbits."""

    p: int
    values: tuple[Fraction, Fraction]

    def value(self, orbits: OrbitPartition, triple: Sequence[int]) -> Fraction:
        return self.values[orbits.label(triple) - 1]

    def scaled(self, c) -> HarmonicFunction3:
        c = Fraction(c)
        return HarmonicFunction3(self.p, (self.values[0] * c, self.values[1] * c))

    def __neg__(self):
        return self.scaled(-1)


def gamma_image(values: tuple, orbits: OrbitPartition) -> dict[tuple[int, int], Fraction]:
    """gamma(f) on every pair: the sum of f over the triples containing it."""
    pts = range(orbits.n_points)
    out = {}
    for u, v in combinations(pts, 2):
        s = Fraction(0)
        for w in pts:
            if w != u and w != v:
                s += values[orbits.label((u, v, w)) - 1]
        out[(u, v)] = s
    return out


def invariant_harmonic3(orbits: OrbitPartition) -> HarmonicFunction3:
    """The invariant degree-3 harmonic function, as the smallest integral pair with f1 > 0."""
    k1, k2 = orbits.pair_incidence()
    g = gcd(k1, k2)
    values = (Fraction(k2 // g), Fraction(-k1 // g))
    bad = {pair: s for pair, s in gamma_image(values, orbits).items() if s != 0}
    if bad:
        raise ArithmeticError(f"function is not harmonic: gamma nonzero on {len(bad)} pairs")
    return HarmonicFunction3(orbits.p, values)


def ftilde(f: HarmonicFunction3, orbits: OrbitPartition, block: Sequence[int]) -> Fraction:
    """Sum of f over the 3-subsets of ``block`` (points 0..p, inf = p)."""
    return sum((f.values[orbits.label(t) - 1] for t in combinations(sorted(block), 3)), Fraction(0))


@dataclass(frozen=True)
class HarmonicWeightEnumerator:
    """coeff[l] is the coefficient of x^(n - l) y^l."""

    n: int
    coeff: tuple[Fraction, ...]

    def __add__(self, other: HarmonicWeightEnumerator) -> HarmonicWeightEnumerator:
        if self.n != other.n:
            raise ValueError("length mismatch")
        return HarmonicWeightEnumerator(self.n, tuple(a + b for a, b in zip(self.coeff, other.coeff)))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeff)

    def scalar_to(self, other: HarmonicWeightEnumerator) -> Fraction | None:
        """The c with self = c * other, or None if there is no such scalar."""
        if self.n != other.n:
            return None
        c = None
        for a, b in zip(self.coeff, other.coeff):
            if b == 0:
                if a != 0:
                    return None
                continue
            r = Fraction(a) / Fraction(b)
            if c is None:
                c = r
            elif r != c:
                return None
        return Fraction(0) if c is None and self.is_zero() else c

    def to_json(self) -> dict:
        return {"n": self.n, "coeff": {str(l): str(c) for l, c in enumerate(self.coeff) if c}}

    def pretty(self) -> str:
        parts = []
        for l, c in enumerate(self.coeff):
            if c:
                parts.append(f"{c}*x^{self.n - l}*y^{l}")
        return " + ".join(parts).replace("+ -", "- ") if parts else "0"


def _check_labels(code: LinearCode, orbits: OrbitPartition) -> None:
    p = orbits.p
    expected = tuple(range(p)) + (INF_LABEL,)
    if code.labels != expected:
        raise ValueError(f"code coordinates must be labelled 0..{p - 1}, inf")


def representative_labels(orbits: OrbitPartition) -> tuple[tuple, tuple]:
    p = orbits.p
    r1, r2 = orbits.representatives
    return tuple(point_label(p, x) for x in r1), tuple(point_label(p, x) for x in r2)


def orbit_jacobis(code: LinearCode, orbits: OrbitPartition, threads: int | None = None,
                  budget: int | None = None) -> tuple[JacobiPolynomial, JacobiPolynomial]:
    _check_labels(code, orbits)
    j1, j2 = jacobi_many(code, representative_labels(orbits), threads, budget)
    return j1, j2


def harmonic_from_jacobis(f: HarmonicFunction3, orbits: OrbitPartition,
                          j1: JacobiPolynomial, j2: JacobiPolynomial) -> HarmonicWeightEnumerator:
    n = j1.n
    s1, s2 = orbits.sizes
    coeff = [Fraction(0)] * (n + 1)
    for l in range(3, n + 1):
        coeff[l] = f.values[0] * s1 * j1.covering_count(l) + f.values[1] * s2 * j2.covering_count(l)
    return HarmonicWeightEnumerator(n, tuple(coeff))


def harmonic_weight_enumerator(code: LinearCode, f: HarmonicFunction3, orbits: OrbitPartition,
                               threads: int | None = None,
                               budget: int | None = None) -> HarmonicWeightEnumerator:
    """Harmonic weight enumerator assembled from the two orbit Jacobi tables.

    Relies on covering counts being constant along each orbit, which holds
    when PSL(2, p) acts on the code.
    """
    j1, j2 = orbit_jacobis(code, orbits, threads, budget)
    return harmonic_from_jacobis(f, orbits, j1, j2)


def harmonic_weight_enumerator_direct(code: LinearCode, f: HarmonicFunction3,
                                      orbits: OrbitPartition,
                                      budget: int | None = None) -> HarmonicWeightEnumerator:
    """Reference path: add ftilde(supp c) codeword by codeword."""
    _check_labels(code, orbits)
    n = code.n
    table = [f.values[lab - 1] for lab in orbits.labels]
    coeff = [Fraction(0)] * (n + 1)

    def visit(word, weight):
        if weight < 3:
            return
        supp = [i for i in range(n) if (word >> i) & 1]
        coeff[weight] += sum((table[colex_rank(t)] for t in combinations(supp, 3)), Fraction(0))

    enumerate_codewords(code, visit, budget)
    return HarmonicWeightEnumerator(n, tuple(coeff))


def reference_harmonic(n: int, poly: dict[Monomial, int]) -> HarmonicWeightEnumerator:
    """Two-variable polynomial in x, y (w = z exponents zero) as an enumerator."""
    coeff = [Fraction(0)] * (n + 1)
    for (ew, ez, ex, ey), c in poly.items():
        if ew or ez or ex + ey != n:
            raise ValueError("expected a homogeneous polynomial of degree n in x, y")
        coeff[ey] += c
    return HarmonicWeightEnumerator(n, tuple(coeff))


def orbit_sum_check(code_dist: np.ndarray, orbits: OrbitPartition,
                    j1: JacobiPolynomial, j2: JacobiPolynomial) -> bool:
    """|GT1| cc1(l) + |GT2| cc2(l) == |C_l| C(l, 3) for every l >= 3."""
    s1, s2 = orbits.sizes
    return all(
        s1 * j1.covering_count(l) + s2 * j2.covering_count(l) == int(code_dist[l]) * comb(l, 3)
        for l in range(3, j1.n + 1)
    )
