"""Polynomial and extension-field arithmetic over GF(2).

Polynomials are stored as nonnegative integers: bit ``i`` is the coefficient
of ``x**i``.  This is enough machinery to factor ``x**p - 1`` along
cyclotomic cosets and build quadratic residue generator polynomials.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

# Degree of the zero polynomial.  Kept distinct from any integer so that
# degree arithmetic stays total (NEG_INF + k == NEG_INF).
NEG_INF = float("-inf")


def _deg(a: int) -> int:
    return a.bit_length() - 1


def _mul(a: int, b: int) -> int:
    if a < b:
        a, b = b, a
    c = 0
    while b:
        if b & 1:
            c ^= a
        a <<= 1
        b >>= 1
    return c


def _divmod(a: int, b: int) -> tuple[int, int]:
    if b == 0:
        raise ZeroDivisionError("division by zero polynomial")
    db = _deg(b)
    q = 0
    while a and _deg(a) >= db:
        s = _deg(a) - db
        q ^= 1 << s
        a ^= b << s
    return q, a


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, _divmod(a, b)[1]
    return a


def _mulmod(a: int, b: int, m: int) -> int:
    dm = _deg(m)
    c = 0
    while b:
        if b & 1:
            c ^= a
        b >>= 1
        a <<= 1
        if (a >> dm) & 1:
            a ^= m
    return c


def _powmod(a: int, e: int, m: int) -> int:
    r = 1
    a = _divmod(a, m)[1]
    while e:
        if e & 1:
            r = _mulmod(r, a, m)
        a = _mulmod(a, a, m)
        e >>= 1
    return r


@dataclass(frozen=True, order=True)
class Gf2Poly:
    """Polynomial over GF(2) backed by an integer bit mask."""

    value: int = 0

    def __post_init__(self):
        if self.value < 0:
            raise ValueError("bit mask must be nonnegative")

    @classmethod
    def from_exponents(cls, exps) -> Gf2Poly:
        v = 0
        for e in exps:
            v ^= 1 << e
        return cls(v)

    @classmethod
    def from_bits(cls, bits: str) -> Gf2Poly:
        """Parse an ascending-degree 0/1 string, e.g. ``"1101"`` = 1 + x + x^3."""
        if bits == "":
            return cls(0)
        if set(bits) - {"0", "1"}:
            raise ValueError(f"not a 0/1 string: {bits!r}")
        return cls(int(bits[::-1], 2))

    def to_bits(self) -> str:
        if self.value == 0:
            return "0"
        return format(self.value, "b")[::-1]

    @property
    def degree(self):
        return NEG_INF if self.value == 0 else _deg(self.value)

    @property
    def coefficients(self) -> tuple[int, ...]:
        return tuple((self.value >> i) & 1 for i in range(max(self.value.bit_length(), 1)))

    def is_zero(self) -> bool:
        return self.value == 0

    def __add__(self, other: Gf2Poly) -> Gf2Poly:
        return Gf2Poly(self.value ^ other.value)

    __sub__ = __add__

    def __mul__(self, other: Gf2Poly) -> Gf2Poly:
        return Gf2Poly(_mul(self.value, other.value))

    def __divmod__(self, other: Gf2Poly) -> tuple[Gf2Poly, Gf2Poly]:
        q, r = _divmod(self.value, other.value)
        return Gf2Poly(q), Gf2Poly(r)

    def __floordiv__(self, other: Gf2Poly) -> Gf2Poly:
        return divmod(self, other)[0]

    def __mod__(self, other: Gf2Poly) -> Gf2Poly:
        return divmod(self, other)[1]

    def gcd(self, other: Gf2Poly) -> Gf2Poly:
        return Gf2Poly(_gcd(self.value, other.value))

    def __str__(self):
        if self.value == 0:
            return "0"
        terms = []
        for i in range(self.value.bit_length()):
            if (self.value >> i) & 1:
                terms.append("1" if i == 0 else "x" if i == 1 else f"x^{i}")
        return " + ".join(terms)


def poly_arith(a: Gf2Poly, b: Gf2Poly, op: str) -> Gf2Poly:
    """Apply ``op`` (one of add, mul, mod, gcd) to two polynomials."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "mod":
        return a % b
    if op == "gcd":
        return a.gcd(b)
    raise ValueError(f"unknown polynomial operation {op!r}")


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _check_odd_prime(p: int) -> None:
    if p == 2 or not is_prime(p):
        raise ValueError(f"{p} is not an odd prime")


def multiplicative_order(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise ValueError("zero has no multiplicative order")
    x, k = a, 1
    while x != 1:
        x = x * a % p
        k += 1
    return k


def quadratic_residues(p: int) -> frozenset[int]:
    """Nonzero squares modulo the odd prime ``p``."""
    _check_odd_prime(p)
    return frozenset(i * i % p for i in range(1, p))


def smallest_primitive_root(p: int) -> int:
    _check_odd_prime(p)
    for a in range(2, p):
        if multiplicative_order(a, p) == p - 1:
            return a
    raise AssertionError("unreachable: every prime has a primitive root")


@dataclass(frozen=True)
class CyclotomicCoset:
    representative: int
    members: tuple[int, ...]

    def __len__(self):
        return len(self.members)

    def __contains__(self, r):
        return r in self.members


def cyclotomic_cosets(p: int) -> list[CyclotomicCoset]:
    """2-cyclotomic cosets of the nonzero residues mod ``p``.

    Members are listed in doubling order starting from the smallest element,
    which is also the representative.
    """
    _check_odd_prime(p)
    seen = set()
    out = []
    for r in range(1, p):
        if r in seen:
            continue
        orbit = []
        x = r
        while x not in orbit:
            orbit.append(x)
            x = 2 * x % p
        seen.update(orbit)
        out.append(CyclotomicCoset(r, tuple(orbit)))
    return out


def is_irreducible(f: int) -> bool:
    """Rabin irreducibility test for a GF(2) polynomial given as a bit mask."""
    m = _deg(f)
    if m < 1:
        return False
    if _powmod(2, 1 << m, f) != 2:
        return False
    for q in prime_factors(m):
        h = _powmod(2, 1 << (m // q), f) ^ 2
        if _gcd(f, h) != 1:
            return False
    return True


@lru_cache(maxsize=None)
def smallest_irreducible(m: int) -> int:
    """Lexicographically smallest irreducible polynomial of degree ``m``."""
    for f in range(1 << m, 1 << (m + 1)):
        if f & 1 and is_irreducible(f):
            return f
    raise ArithmeticError(f"no irreducible polynomial of degree {m} found")


class Gf2Extension:
    """GF(2^m) realised as GF(2)[x] / (modulus)."""

    def __init__(self, m: int, modulus: int | None = None):
        self.m = m
        self.modulus = smallest_irreducible(m) if modulus is None else modulus
        if _deg(self.modulus) != m or not is_irreducible(self.modulus):
            raise ValueError("modulus must be irreducible of degree m")
        self.order = (1 << m) - 1

    def element(self, bits: int) -> Gf2ExtElement:
        return Gf2ExtElement(bits, self)

    def mul(self, a: int, b: int) -> int:
        return _mulmod(a, b, self.modulus)

    def pow(self, a: int, e: int) -> int:
        return _powmod(a, e, self.modulus)

    def is_generator(self, b: int) -> bool:
        if b == 0:
            return False
        return all(self.pow(b, self.order // q) != 1 for q in prime_factors(self.order))

    def smallest_generator(self) -> int:
        for b in range(1, 1 << self.m):
            if self.is_generator(b):
                return b
        raise ArithmeticError("field has no multiplicative generator")

    def minimal_polynomial(self, a: int, conjugate_exponents) -> Gf2Poly:
        """Product of (x - a^j) over ``conjugate_exponents``; coefficients land in GF(2)."""
        coeffs = [1]  # ascending, entries are field elements
        for j in conjugate_exponents:
            root = self.pow(a, j)
            nxt = [0] * (len(coeffs) + 1)
            for i, c in enumerate(coeffs):
                nxt[i + 1] ^= c
                nxt[i] ^= self.mul(c, root)
            coeffs = nxt
        if any(c not in (0, 1) for c in coeffs):
            raise ArithmeticError("conjugate set is not closed under Frobenius")
        return Gf2Poly(sum(c << i for i, c in enumerate(coeffs)))


@dataclass(frozen=True)
class Gf2ExtElement:
    bits: int
    field: Gf2Extension

    def __mul__(self, other: Gf2ExtElement) -> Gf2ExtElement:
        return Gf2ExtElement(self.field.mul(self.bits, other.bits), self.field)

    def __add__(self, other: Gf2ExtElement) -> Gf2ExtElement:
        return Gf2ExtElement(self.bits ^ other.bits, self.field)

    def __pow__(self, e: int) -> Gf2ExtElement:
        return Gf2ExtElement(self.field.pow(self.bits, e), self.field)


def _check_qr_prime(p: int) -> None:
    _check_odd_prime(p)
    if p % 8 not in (1, 7):
        raise ValueError(f"binary QR codes need p = +-1 mod 8, got p = {p}")


def primitive_pth_root(p: int) -> tuple[Gf2Extension, int]:
    """Field GF(2^m), m = ord_p(2), and alpha = beta^((2^m - 1)/p) in it."""
    _check_odd_prime(p)
    field = Gf2Extension(multiplicative_order(2, p))
    beta = field.smallest_generator()
    return field, field.pow(beta, field.order // p)


def nonresidue_idempotent(p: int) -> Gf2Poly:
    """Idempotent of the QR code of dimension (p + 1)/2 under our normalisation.

    It is the sum of x^n over non-residues n, plus 1 when p = 1 mod 8 (so that
    the idempotent takes the value 1 at x = 1 and the code contains all-ones).
    """
    _check_qr_prime(p)
    residues = quadratic_residues(p)
    e = Gf2Poly.from_exponents(n for n in range(1, p) if n not in residues)
    return e + Gf2Poly(1) if p % 8 == 1 else e


def _qr_generator(p: int, alpha_exponent: int) -> Gf2Poly:
    field, alpha = primitive_pth_root(p)
    alpha = field.pow(alpha, alpha_exponent % p)
    residues = quadratic_residues(p)
    g = Gf2Poly(1)
    for coset in cyclotomic_cosets(p):
        if coset.representative in residues:
            g = g * field.minimal_polynomial(alpha, coset.members)
    if (Gf2Poly((1 << p) | 1) % g).value:
        raise ArithmeticError("generator does not divide x^p - 1")
    return g


@lru_cache(maxsize=None)
def qr_alpha_exponent(p: int) -> int:
    """Exponent c with alpha = beta^(c(2^m - 1)/p) giving the normalised QR code.

    c = 1 is tried first, then the smallest primitive root (a non-residue);
    exactly one of them yields the code generated by ``nonresidue_idempotent``.
    """
    _check_qr_prime(p)
    target = nonresidue_idempotent(p).gcd(Gf2Poly((1 << p) | 1))
    for c in (1, smallest_primitive_root(p)):
        if _qr_generator(p, c) == target:
            return c
    raise ArithmeticError(f"neither alpha choice reproduces the QR idempotent for p={p}")


@lru_cache(maxsize=None)
def qr_generator_polynomial(p: int, alpha_exponent: int | None = None) -> Gf2Poly:
    """Generator polynomial prod_{r square}(x - alpha^r) of the QR code of length ``p``.

    With ``alpha_exponent`` None, alpha is normalised by ``qr_alpha_exponent``.
    Otherwise alpha**alpha_exponent is used as the root; a non-residue exponent
    gives the generator of the twin (non-residue) code.
    """
    _check_qr_prime(p)
    if alpha_exponent is None:
        alpha_exponent = qr_alpha_exponent(p)
    if alpha_exponent % p == 0:
        raise ValueError("alpha_exponent must be a unit mod p")
    return _qr_generator(p, alpha_exponent)
