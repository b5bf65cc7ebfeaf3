import pytest
from hypothesis import given, strategies as st

from qrdesigns.gf2 import (
    NEG_INF,
    Gf2Extension,
    Gf2Poly,
    cyclotomic_cosets,
    is_irreducible,
    nonresidue_idempotent,
    poly_arith,
    primitive_pth_root,
    qr_alpha_exponent,
    qr_generator_polynomial,
    quadratic_residues,
    smallest_irreducible,
    smallest_primitive_root,
)

QR_PRIMES = [7, 17, 23, 31, 41, 47, 71, 73]
polys = st.integers(min_value=0, max_value=(1 << 40) - 1).map(Gf2Poly)


def P(exps):
    return Gf2Poly.from_exponents(exps)


def test_poly_examples():
    assert poly_arith(P([2, 0]), P([1, 0]), "gcd") == P([1, 0])
    assert poly_arith(P([1, 0]), P([1, 0]), "mul") == P([2, 0])
    g17 = qr_generator_polynomial(17)
    assert poly_arith(P([17, 0]), g17, "mod").is_zero()
    with pytest.raises(ZeroDivisionError):
        poly_arith(P([3]), Gf2Poly(0), "mod")
    with pytest.raises(ValueError):
        poly_arith(P([3]), P([1]), "pow")


def test_zero_degree_sentinel():
    assert Gf2Poly(0).degree == NEG_INF
    assert Gf2Poly(0).degree + 5 == NEG_INF
    assert P([0]).degree == 0


def test_bit_string_round_trip():
    g = Gf2Poly.from_bits("1101")
    assert g == P([0, 1, 3])
    assert g.to_bits() == "1101"
    assert str(g) == "1 + x + x^3"


@given(polys, polys.filter(lambda b: not b.is_zero()))
def test_division_identity(a, b):
    q, r = divmod(a, b)
    assert q * b + r == a
    assert r.is_zero() or r.degree < b.degree


@given(polys, polys, polys)
def test_ring_laws(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)


@given(polys, polys)
def test_gcd_divides_both(a, b):
    g = a.gcd(b)
    if not g.is_zero():
        assert (a % g).is_zero() and (b % g).is_zero()


def _squares(p):
    return {i * i % p for i in range(1, p)}


def test_quadratic_residues():
    assert quadratic_residues(7) == {1, 2, 4}
    assert quadratic_residues(17) == _squares(17) == {1, 2, 4, 8, 9, 13, 15, 16}
    r41 = quadratic_residues(41)
    assert len(r41) == 20 and 2 in r41 and 6 not in r41
    with pytest.raises(ValueError):
        quadratic_residues(15)


def test_cyclotomic_cosets_examples():
    assert [set(c.members) for c in cyclotomic_cosets(17)] == [
        {1, 2, 4, 8, 16, 15, 13, 9}, {3, 6, 12, 7, 14, 11, 5, 10}]
    assert [set(c.members) for c in cyclotomic_cosets(7)] == [{1, 2, 4}, {3, 6, 5}]
    with pytest.raises(ValueError):
        cyclotomic_cosets(21)


@pytest.mark.parametrize("p", QR_PRIMES + [3, 5, 11, 13])
def test_cosets_partition(p):
    cosets = cyclotomic_cosets(p)
    members = [x for c in cosets for x in c.members]
    assert sorted(members) == list(range(1, p))
    for c in cosets:
        assert {2 * x % p for x in c.members} == set(c.members)


@pytest.mark.parametrize("p", QR_PRIMES)
def test_cosets_respect_residues(p):
    res = quadratic_residues(p)
    for c in cyclotomic_cosets(p):
        assert set(c.members) <= res or not set(c.members) & res


def test_p41_cosets():
    cosets = cyclotomic_cosets(41)
    res = quadratic_residues(41)
    assert all(len(c) == 20 for c in cosets)
    assert any(set(c.members) == res for c in cosets)


def test_smallest_irreducible_brute_force():
    # oracle: trial division by every polynomial of degree 1..m/2
    def irreducible(f):
        m = f.bit_length() - 1
        return all((Gf2Poly(f) % Gf2Poly(d)).value for d in range(2, 1 << (m // 2 + 1)))

    for m in range(2, 11):
        expected = next(f for f in range(1 << m, 1 << (m + 1)) if irreducible(f))
        assert smallest_irreducible(m) == expected
    assert smallest_irreducible(3) == 0b1011
    assert not is_irreducible(0b101)


@pytest.mark.parametrize("p", QR_PRIMES)
def test_generator_degree_and_divisibility(p):
    g = qr_generator_polynomial(p)
    assert g.degree == (p - 1) // 2
    assert (P([p, 0]) % g).is_zero()


@pytest.mark.parametrize("p", [7, 17, 23, 41])
def test_generator_roots_in_extension(p):
    # oracle: evaluate g at alpha^j in GF(2^m) directly
    field, alpha = primitive_pth_root(p)
    alpha = field.pow(alpha, qr_alpha_exponent(p))
    assert field.pow(alpha, p) == 1 and alpha != 1
    g = qr_generator_polynomial(p)
    res = quadratic_residues(p)

    def evaluate(j):
        x = field.pow(alpha, j)
        acc, power = 0, 1
        for bit in g.coefficients:
            if bit:
                acc ^= power
            power = field.mul(power, x)
        return acc

    for j in range(p):
        assert (evaluate(j) == 0) == (j in res)


def test_p7_generator():
    assert qr_generator_polynomial(7) in (P([3, 1, 0]), P([3, 2, 0]))


@pytest.mark.parametrize("p", QR_PRIMES)
def test_generator_matches_idempotent_code(p):
    g = qr_generator_polynomial(p)
    assert g == nonresidue_idempotent(p).gcd(P([p, 0]))
    other = 1 if qr_alpha_exponent(p) != 1 else smallest_primitive_root(p)
    twin = qr_generator_polynomial(p, other)
    assert twin != g and twin.degree == g.degree


def test_nonresidue_idempotent_is_idempotent():
    for p in QR_PRIMES:
        e = nonresidue_idempotent(p)
        assert (e * e + e) % P([p, 0]) == Gf2Poly(0)


def test_rejects_bad_primes():
    for p in (13, 19, 4, 1):
        with pytest.raises(ValueError):
            qr_generator_polynomial(p)


def test_extension_field_generator():
    field = Gf2Extension(4)
    b = field.element(field.smallest_generator())
    powers = {(b ** i).bits for i in range(15)}
    assert len(powers) == 15
    with pytest.raises(ValueError):
        Gf2Extension(3, modulus=0b1001)
