"""Shared helpers for the test suite.

All random data is produced from explicitly seeded `random.Random`
instances so failures reproduce exactly.
"""

import random
from fractions import Fraction

import pytest

from lorentzkit import (
    QQ,
    FieldDescriptor,
    QuadFieldElem,
    form_from_diagonal,
    form_from_gram,
    parse_element,
)
from lorentzkit.matrices import determinant, from_rows, identity
from lorentzkit.numberfield import Embedding, sign_at, zero as field_zero

K2 = FieldDescriptor(2)
K3 = FieldDescriptor(3)
K5 = FieldDescriptor(5)


def el(text, field=K2):
    """Parse shorthand like '3+2*sqrt(d)' into an element of `field`."""
    s = str(text)
    if field.d is not None:
        s = s.replace("sqrt(d)", f"sqrt({field.d})")
    return parse_element(s, field)


def qel(field, a, b=0):
    return QuadFieldElem(Fraction(a), Fraction(b), field)


def diag(field, *entries):
    return form_from_diagonal(field, [el(e, field) for e in entries])


def gram(field, rows):
    mat = [[el(x, field) for x in row] for row in rows]
    return form_from_gram(field, mat)


def rand_fraction(rng, lo=-6, hi=6, max_den=4):
    return Fraction(rng.randint(lo, hi), rng.randint(1, max_den))


def rand_elem(rng, field, lo=-6, hi=6, max_den=4):
    a = rand_fraction(rng, lo, hi, max_den)
    b = Fraction(0) if field.is_rational else rand_fraction(rng, lo, hi, max_den)
    return QuadFieldElem(a, b, field)


def rand_nonzero_elem(rng, field, lo=-6, hi=6, max_den=4):
    while True:
        x = rand_elem(rng, field, lo, hi, max_den)
        if not x.is_zero():
            return x


def rand_vector(rng, field, n, lo=-4, hi=4, max_den=3):
    return [rand_elem(rng, field, lo, hi, max_den) for _ in range(n)]


def rand_symmetric_rows(rng, field, n, lo=-4, hi=4, max_den=2):
    rows = [[field_zero(field) for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            x = rand_elem(rng, field, lo, hi, max_den)
            rows[i][j] = x
            rows[j][i] = x
    return rows


def rand_invertible_form(rng, field, n, symmetric_tries=200):
    """Random nonsingular symmetric form of dimension n over field."""
    for _ in range(symmetric_tries):
        rows = rand_symmetric_rows(rng, field, n)
        if not determinant(from_rows(rows)).is_zero():
            return form_from_gram(field, rows)
    raise AssertionError("could not sample an invertible symmetric matrix")


def rand_invertible_matrix(rng, field, n, tries=200):
    for _ in range(tries):
        rows = [rand_vector(rng, field, n) for _ in range(n)]
        if not determinant(from_rows(rows)).is_zero():
            return rows
    raise AssertionError("could not sample an invertible matrix")


def rand_spacelike_normal(rng, form, tries=500):
    """Vector v with f(v) > 0 at the identity embedding."""
    from lorentzkit.quadform import evaluate

    for _ in range(tries):
        v = rand_vector(rng, form.field, form.dim, lo=-3, hi=3, max_den=2)
        val = evaluate(form, v)
        if not val.is_zero() and sign_at(val, Embedding.IDENTITY) > 0:
            return v
    raise AssertionError("could not sample a spacelike vector")


def frac_identity_rows(field, n):
    return [list(row) for row in identity(field, n)]


@pytest.fixture
def f2_rational():
    """Signature (2,1) rational form diag(-1,1,1)."""
    return diag(QQ, -1, 1, 1)


@pytest.fixture
def f4_quadratic():
    """Admissible quaternary form diag(-sqrt(2),1,1,1) over Q(sqrt(2))."""
    return diag(K2, "-sqrt(d)", 1, 1, 1)


def atanh_bracket(x: Fraction, terms: int):
    """Certified rational bracket for atanh(x), 0 < x < 1, via the odd series.

    Partial sums underestimate; the geometric tail bound gives the upper end.
    """
    assert 0 < x < 1
    total = Fraction(0)
    for k in range(terms):
        total += x ** (2 * k + 1) / (2 * k + 1)
    tail = x ** (2 * terms + 1) / ((2 * terms + 1) * (1 - x * x))
    return total, total + tail


def ln_bracket(n: int, terms: int = 120):
    """Certified rational bracket for ln(n) using ln(n) = 2*atanh((n-1)/(n+1))."""
    lo, hi = atanh_bracket(Fraction(n - 1, n + 1), terms)
    return 2 * lo, 2 * hi
