import json
import re
from fractions import Fraction
from itertools import combinations
from math import comb

import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from qrdesigns.codes import LinearCode, dual, enumerate_codewords, extended_qr_code, weight_distribution
from qrdesigns.enumerators import (
    HarmonicWeightEnumerator,
    JacobiPolynomial,
    covering_count,
    ftilde,
    gamma_image,
    harmonic_weight_enumerator,
    harmonic_weight_enumerator_direct,
    invariant_harmonic3,
    jacobi,
    jacobi_difference,
    jacobi_many,
    orbit_jacobis,
    orbit_sum_check,
)
from qrdesigns.reference import q42_difference_closed_form, q42_harmonic_closed_form, q42_jacobi_tables


def brute_jacobi(code, T):
    """Oracle: one dictionary update per codeword."""
    mask = code.mask(T)
    t = len(T)
    out = {}

    def visit(word, wt):
        m1 = bin(word & mask).count("1")
        key = (t - m1, m1, code.n - t - (wt - m1), wt - m1)
        out[key] = out.get(key, 0) + 1

    enumerate_codewords(code, visit)
    return out


@pytest.mark.parametrize("p, T", [(7, (0, 1, "inf")), (17, (0, 3, 5, "inf")), (23, ()), (17, (4,))])
def test_jacobi_matches_brute_force(p, T):
    code = extended_qr_code(p)
    assert jacobi(code, T).monomials() == brute_jacobi(code, T)


@st.composite
def code_and_set(draw):
    p = draw(st.sampled_from([7, 17, 23]))
    code = extended_qr_code(p)
    T = draw(st.lists(st.sampled_from(code.labels), unique=True, max_size=5))
    return code, tuple(T)


@given(code_and_set())
@settings(max_examples=30, deadline=None)
def test_mass_and_specialisation(arg):
    code, T = arg
    J = jacobi(code, T)
    assert J.total() == 1 << code.k
    assert (J.coeff >= 0).all()
    assert J[(len(T), 0, code.n - len(T), 0)] >= 1
    assert J.weight_enumerator().tolist() == weight_distribution(code).tolist()


def test_empty_set_is_weight_enumerator(q18):
    J = jacobi(q18, ())
    assert J.coeff.shape == (1, 19)
    assert J.coeff[0].tolist() == weight_distribution(q18).tolist()


def test_q42_examples(q42_jacobis):
    j1, j2 = q42_jacobis
    assert j1[(3, 0, 29, 10)] == 744
    assert j1[(3, 0, 27, 12)] == 3756
    assert j2[(3, 0, 27, 12)] == 3755
    assert covering_count(j1, 10) == 18 == covering_count(j2, 10)
    assert j1[(0, 3, 32, 7)] == 18
    assert covering_count(j1, 3) == 0
    with pytest.raises(ValueError):
        covering_count(j1, 2)


def test_q42_tables_match_published(q42_jacobis):
    ref1, ref2 = q42_jacobi_tables()
    assert len(ref1.terms()) == len(ref2.terms()) == 50
    assert q42_jacobis[0] == ref1
    assert q42_jacobis[1] == ref2


def test_difference_closed_form(q42_jacobis):
    j1, j2 = q42_jacobis
    diff = jacobi_difference(j1, j2)
    closed = JacobiPolynomial.from_monomials(42, j1.T, q42_difference_closed_form())
    assert diff == closed
    assert diff.total() == 0
    assert jacobi_difference(j1, j1).total() == 0 and not jacobi_difference(j1, j1).coeff.any()


def test_closed_form_against_sympy():
    w, z, x, y = sympy.symbols("w z x y")
    expr = sympy.expand(x**9 * y**9 * (x**2 - y**2) ** 9 * (w * y - x * z) ** 3)
    poly = sympy.Poly(expr, w, z, x, y)
    assert dict(poly.terms()) == q42_difference_closed_form()

    h = sympy.Poly(sympy.expand(-5740 * x**12 * y**12 * (x**2 - y**2) ** 9), x, y)
    ref = q42_harmonic_closed_form()
    assert {ey: c for (ex, ey), c in h.terms()} == {l: c for l, c in enumerate(ref.coeff) if c}


def test_difference_shape_mismatch(q18, q42_jacobis):
    with pytest.raises(ValueError):
        jacobi_difference(q42_jacobis[0], jacobi(q18, (0, 1, "inf")))


def test_jacobi_json_round_trip(q42_jacobis):
    j1 = q42_jacobis[0]
    data = json.loads(json.dumps(j1.to_json()))
    assert data["T"] == ["0", "1", "inf"]
    keys = [(t["m0"], t["m1"], t["n0"], t["n1"]) for t in data["terms"]]
    assert keys == sorted(keys)
    assert JacobiPolynomial.from_json(data) == j1


def _parse_paper_style(text):
    out = {}
    for term in text.replace(" ", "").replace("-", "+-").split("+"):
        m = re.fullmatch(r"(-?\d*)((?:[wxyz](?:\^\{?\d+\}?)?)*)", term)
        c = int(m.group(1)) if m.group(1) not in ("", "-") else (-1 if m.group(1) == "-" else 1)
        e = dict.fromkeys("wzxy", 0)
        for v, ex in re.findall(r"([wxyz])(?:\^\{?(\d+)\}?)?", m.group(2)):
            e[v] = int(ex or 1)
        out[(e["w"], e["z"], e["x"], e["y"])] = c
    return out


def test_paper_style(q42_jacobis):
    j1 = q42_jacobis[0]
    text = j1.paper_style()
    assert text.startswith("w^3x^{39} + 744w^3x^{29}y^{10} + 3756w^3x^{27}y^{12}")
    assert "18x^{32}y^7z^3" in text and text.endswith("y^{39}z^3")
    assert _parse_paper_style(text) == j1.monomials()
    diff = (q42_jacobis[0] - q42_jacobis[1]).paper_style()
    assert _parse_paper_style(diff) == (q42_jacobis[0] - q42_jacobis[1]).monomials()


def test_jacobi_many_consistent(q18):
    sets = [(0, 1, "inf"), (0, 3, "inf"), (2,)]
    many = jacobi_many(q18, sets)
    assert all(m == jacobi(q18, T) for m, T in zip(many, sets))
    with pytest.raises(ValueError):
        jacobi(q18, (0, 0, 1))
    with pytest.raises(KeyError):
        jacobi(q18, (0, 1, 99))


# -- harmonic functions ------------------------------------------------------

def test_invariant_harmonic_values(orbits41, orbits17):
    f = invariant_harmonic3(orbits41)
    assert f.values == (1, -1)
    assert all(v == 0 for v in gamma_image(f.values, orbits41).values())
    assert gamma_image(f.values, orbits41)[(0, 1)] == 0
    assert f.values[0] * orbits41.sizes[0] + f.values[1] * orbits41.sizes[1] == 0
    f17 = invariant_harmonic3(orbits17)
    assert f17.values[0] > 0
    assert sum(f17.value(orbits17, t) for t in combinations(range(18), 3)) == 0


def test_non_harmonic_pair_detected(orbits17):
    assert any(v != 0 for v in gamma_image((Fraction(1), Fraction(1)), orbits17).values())


def test_ftilde(orbits41):
    f = invariant_harmonic3(orbits41)
    assert ftilde(f, orbits41, (0, 1)) == 0
    assert ftilde(f, orbits41, (0, 1, 41)) == f.values[0]
    assert ftilde(f, orbits41, (0, 6, 41)) == f.values[1]


def test_ftilde_full_set(orbits17):
    f = invariant_harmonic3(orbits17)
    full = ftilde(f, orbits17, range(18))
    assert full == f.values[0] * orbits17.sizes[0] + f.values[1] * orbits17.sizes[1]


def test_q42_harmonic_enumerator(q42_jacobis, orbits41, q42):
    f = invariant_harmonic3(orbits41)
    w = harmonic_weight_enumerator(q42, f, orbits41)
    ref = q42_harmonic_closed_form()
    assert w.scalar_to(ref) == 1
    assert w.coeff[10] == 0 and w.coeff[32] == 0
    assert all(w.coeff[l] != 0 for l in range(12, 31, 2))
    assert all(c == 0 for c in w.coeff[:3])


def test_q18_harmonic_direct_oracle(q18, orbits17):
    f = invariant_harmonic3(orbits17)
    for code in (q18, dual(q18)):
        assembled = harmonic_weight_enumerator(code, f, orbits17)
        direct = harmonic_weight_enumerator_direct(code, f, orbits17)
        assert assembled == direct


def test_harmonic_duality(q18, orbits17):
    f = invariant_harmonic3(orbits17)
    total = harmonic_weight_enumerator(q18, f, orbits17) + harmonic_weight_enumerator(dual(q18), f, orbits17)
    assert total.is_zero()


def test_harmonic_requires_matching_labels(orbits17):
    plain = LinearCode.from_rows(18, [0b11])
    f = invariant_harmonic3(orbits17)
    with pytest.raises(ValueError):
        harmonic_weight_enumerator(plain, f, orbits17)


def test_scalar_to():
    a = HarmonicWeightEnumerator(3, (Fraction(0), Fraction(2), Fraction(0), Fraction(-4)))
    b = HarmonicWeightEnumerator(3, (Fraction(0), Fraction(1), Fraction(0), Fraction(-2)))
    assert a.scalar_to(b) == 2
    c = HarmonicWeightEnumerator(3, (Fraction(1), Fraction(1), Fraction(0), Fraction(-2)))
    assert c.scalar_to(b) is None


def test_orbit_sum_identity(q18, orbits17, q42, orbits41, q42_jacobis):
    assert orbit_sum_check(weight_distribution(q18), orbits17, *orbit_jacobis(q18, orbits17))
    assert orbit_sum_check(weight_distribution(q42), orbits41, *q42_jacobis)


def test_orbit_sum_over_all_triples_p7():
    # no orbit structure assumed: sum covering counts over every 3-subset
    code = extended_qr_code(7)
    dist = weight_distribution(code)
    triples = list(combinations(code.labels, 3))
    tables = jacobi_many(code, triples)
    for l in range(3, 9):
        assert sum(J.covering_count(l) for J in tables) == dist[l] * comb(l, 3)


def test_duality_sum_independent_of_triple(q18, orbits17):
    D = dual(q18)
    a1, a2 = orbit_jacobis(q18, orbits17)
    b1, b2 = orbit_jacobis(D, orbits17)
    assert a1 + b1 == a2 + b2
    assert not (a1 == a2)
