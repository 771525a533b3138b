"""Lorentz-model geometry: classification, certified distances, reflections."""

import random
from fractions import Fraction

import pytest

from lorentzkit import (
    Hyperplane,
    ModelPoint,
    PairClass,
    classify_hyperplane_pair,
    hyperplane_distance,
    lorentz_inner,
    point_distance,
    reflection_matrix,
    systole_bound,
)
from lorentzkit.errors import (
    FormMismatchError,
    NormalNotSpacelikeError,
    NotUltraparallelError,
    PointNotInModelError,
)
from lorentzkit.lattice import compose, is_reflection
from lorentzkit.lorentz import separation_invariant

from conftest import (
    K2,
    diag,
    el,
    ln_bracket,
    rand_spacelike_normal,
    rand_vector,
)
from lorentzkit import QQ


def qvec(*xs):
    return [el(x, QQ) for x in xs]


def kvec(*xs):
    return [el(x, K2) for x in xs]


def neg_vec(v):
    return tuple(-x for x in v)


class TestModelObjects:
    def test_point_requires_negative_norm(self, f2_rational):
        ModelPoint(qvec(1, 0, 0), f2_rational)
        with pytest.raises(PointNotInModelError):
            ModelPoint(qvec(0, 1, 0), f2_rational)
        with pytest.raises(PointNotInModelError):
            ModelPoint(qvec(1, 1, 0), f2_rational)  # light cone

    def test_hyperplane_requires_spacelike_normal(self, f2_rational):
        Hyperplane(qvec(0, 1, 0), f2_rational)
        with pytest.raises(NormalNotSpacelikeError):
            Hyperplane(qvec(1, 0, 0), f2_rational)
        with pytest.raises(NormalNotSpacelikeError):
            Hyperplane(qvec(1, 1, 0), f2_rational)

    def test_quadratic_field_spacelike_is_identity_place_only(self, f4_quadratic):
        # f(v) = sqrt(2) is positive at identity, negative at the conjugate
        v = kvec(0, 0, 0, 1)
        scaled = [el("sqrt(d)") * x for x in kvec(1, 1, 0, 0)]
        Hyperplane(v, f4_quadratic)
        # f(w) for w = sqrt(2)*(1,1,0,0) is 2*(1 - sqrt(2)) < 0 at identity
        with pytest.raises(NormalNotSpacelikeError):
            Hyperplane(scaled, f4_quadratic)


class TestLorentzInner:
    def test_values(self, f2_rational):
        assert lorentz_inner(f2_rational, qvec(0, 1, 0), qvec(0, 0, 1)) == 0
        assert lorentz_inner(f2_rational, qvec(1, 0, 0), qvec(1, 0, 0)) == -1
        assert lorentz_inner(
            f2_rational, qvec("1/2", 1, 0), qvec(1, "1/4", 0)
        ) == Fraction(-1, 4)

    def test_symmetric(self, f2_rational):
        x, y = qvec(1, 2, 3), qvec(0, 5, "-1/2")
        assert lorentz_inner(f2_rational, x, y) == lorentz_inner(f2_rational, y, x)


class TestPointDistance:
    def test_cosh_sq_frozen_example(self, f2_rational):
        x = ModelPoint(qvec(1, 0, 0), f2_rational)
        y = ModelPoint(qvec(5, 3, 0), f2_rational)
        dist = point_distance(f2_rational, x, y)
        assert dist.cosh_sq == Fraction(25, 16)

    def test_distance_is_ln2(self, f2_rational):
        # arccosh(5/4) = ln(5/4 + 3/4) = ln 2
        x = ModelPoint(qvec(1, 0, 0), f2_rational)
        y = ModelPoint(qvec(5, 3, 0), f2_rational)
        enc = point_distance(f2_rational, x, y, 160).distance_enclosure
        lo2, hi2 = ln_bracket(2)
        assert enc.lo <= lo2 and hi2 <= enc.hi
        assert enc.width < Fraction(1, 2**160)

    def test_coincident_points(self, f2_rational):
        x = ModelPoint(qvec(1, 0, 0), f2_rational)
        y = ModelPoint(qvec(2, 0, 0), f2_rational)  # same projective point
        dist = point_distance(f2_rational, x, y)
        assert dist.cosh_sq == 1
        assert dist.distance_enclosure.lo == dist.distance_enclosure.hi == 0

    def test_symmetry(self, f2_rational):
        x = ModelPoint(qvec(1, 0, 0), f2_rational)
        y = ModelPoint(qvec(3, 1, 1), f2_rational)
        assert (
            point_distance(f2_rational, x, y).cosh_sq
            == point_distance(f2_rational, y, x).cosh_sq
        )

    def test_scale_invariance(self, f2_rational):
        x = ModelPoint(qvec(1, 0, 0), f2_rational)
        y = ModelPoint(qvec(5, 3, 0), f2_rational)
        y2 = ModelPoint(qvec(-10, -6, 0), f2_rational)
        assert (
            point_distance(f2_rational, x, y).cosh_sq
            == point_distance(f2_rational, x, y2).cosh_sq
        )

    def test_form_mismatch(self, f2_rational, f4_quadratic):
        x = ModelPoint(qvec(1, 0, 0), f2_rational)
        y = ModelPoint(kvec(1, 0, 0, 0), f4_quadratic)
        with pytest.raises(FormMismatchError):
            point_distance(f2_rational, x, y)


class TestClassification:
    def test_three_classes(self, f2_rational):
        h0 = Hyperplane(qvec(0, 1, 0), f2_rational)
        assert (
            classify_hyperplane_pair(h0, Hyperplane(qvec(0, 0, 1), f2_rational))
            is PairClass.INTERSECTING
        )
        assert (
            classify_hyperplane_pair(h0, Hyperplane(qvec(1, 1, 1), f2_rational))
            is PairClass.TANGENT
        )
        assert (
            classify_hyperplane_pair(h0, Hyperplane(qvec(1, 2, 0), f2_rational))
            is PairClass.ULTRAPARALLEL
        )

    def test_separation_invariant_values(self, f2_rational):
        h0 = Hyperplane(qvec(0, 1, 0), f2_rational)
        h1 = Hyperplane(qvec(1, 2, 0), f2_rational)
        assert separation_invariant(h0, h1) == 1
        h2 = Hyperplane(qvec(0, 0, 1), f2_rational)
        assert separation_invariant(h0, h2) == -1

    def test_symmetric_and_scale_invariant(self, f2_rational):
        h0 = Hyperplane(qvec(0, 1, 0), f2_rational)
        h1 = Hyperplane(qvec(1, 2, 0), f2_rational)
        h1s = Hyperplane(qvec(-3, -6, 0), f2_rational)
        assert classify_hyperplane_pair(h0, h1) is classify_hyperplane_pair(h1, h0)
        assert classify_hyperplane_pair(h0, h1s) is PairClass.ULTRAPARALLEL

    def test_self_pair_is_degenerate(self, f2_rational):
        # coincident normals hit the Cauchy-Schwarz equality case: invariant 0
        h0 = Hyperplane(qvec(0, 1, 0), f2_rational)
        assert separation_invariant(h0, h0) == 0
        assert classify_hyperplane_pair(h0, h0) is PairClass.TANGENT

    def test_form_mismatch(self, f2_rational, f4_quadratic):
        h0 = Hyperplane(qvec(0, 1, 0), f2_rational)
        h1 = Hyperplane(kvec(0, 1, 0, 0), f4_quadratic)
        with pytest.raises(FormMismatchError):
            classify_hyperplane_pair(h0, h1)


class TestHyperplaneDistance:
    def closed_form_pair(self, f, t):
        h0 = Hyperplane(qvec(0, 1, 0), f)
        h1 = Hyperplane(qvec(1, t, 0), f)
        return h0, h1

    def test_frozen_example(self, f2_rational):
        h0, h1 = self.closed_form_pair(f2_rational, 2)
        dist = hyperplane_distance(h0, h1)
        assert dist.cosh_sq == Fraction(4, 3)
        assert dist.precision_bits == 128

    def test_half_ln3(self, f2_rational):
        # cosh^2 d = 4/3 means d = arccosh(2/sqrt(3)) = (1/2) ln 3
        h0, h1 = self.closed_form_pair(f2_rational, 2)
        enc = hyperplane_distance(h0, h1).distance_enclosure
        lo3, hi3 = ln_bracket(3)
        assert enc.lo <= lo3 / 2 and hi3 / 2 <= enc.hi

    @pytest.mark.parametrize("t", [2, 3, 4, 8])
    def test_closed_form_family(self, f2_rational, t):
        # For normals (0,1,0) and (1,t,0): cosh^2 d = t^2/(t^2 - 1)
        h0, h1 = self.closed_form_pair(f2_rational, t)
        dist = hyperplane_distance(h0, h1)
        assert dist.cosh_sq == Fraction(t * t, t * t - 1)

    def test_distance_decreases_along_family(self, f2_rational):
        encs = [
            hyperplane_distance(*self.closed_form_pair(f2_rational, t)).distance_enclosure
            for t in (2, 3, 4, 8)
        ]
        for tight, wide in zip(encs[1:], encs):
            assert tight.hi < wide.lo

    def test_quadratic_field_distance(self):
        f = diag(K2, "-sqrt(d)", 1, 1)
        h0 = Hyperplane(kvec(0, 1, 0), f)
        h1 = Hyperplane(kvec(1, "1+sqrt(d)", 0), f)
        dist = hyperplane_distance(h0, h1)
        assert dist.cosh_sq == el("5/7+3/7*sqrt(d)")
        assert dist.distance_enclosure.lo > 0

    def test_rejects_non_ultraparallel(self, f2_rational):
        h0 = Hyperplane(qvec(0, 1, 0), f2_rational)
        with pytest.raises(NotUltraparallelError) as exc:
            hyperplane_distance(h0, Hyperplane(qvec(1, 1, 1), f2_rational))
        assert "TANGENT" in str(exc.value)
        with pytest.raises(NotUltraparallelError) as exc:
            hyperplane_distance(h0, Hyperplane(qvec(0, 0, 1), f2_rational))
        assert "INTERSECTING" in str(exc.value)

    def test_precision_refines(self, f2_rational):
        h0, h1 = self.closed_form_pair(f2_rational, 2)
        a = hyperplane_distance(h0, h1, 64).distance_enclosure
        b = hyperplane_distance(h0, h1, 256).distance_enclosure
        assert b.width < a.width
        assert a.intersects(b)
        assert b.width < Fraction(1, 2**256)

    def test_systole_bound_doubles(self, f2_rational):
        h0, h1 = self.closed_form_pair(f2_rational, 2)
        dist = hyperplane_distance(h0, h1)
        bound = systole_bound(dist)
        assert bound.lo == 2 * dist.distance_enclosure.lo
        assert bound.hi == 2 * dist.distance_enclosure.hi
        # 2 * (1/2) ln 3 = ln 3
        lo3, hi3 = ln_bracket(3)
        assert bound.lo <= lo3 and hi3 <= bound.hi


class TestReflections:
    def test_frozen_matrix(self, f2_rational):
        h = Hyperplane(qvec(0, 1, 1), f2_rational)
        r = reflection_matrix(h)
        expected = [qvec(1, 0, 0), qvec(0, 0, -1), qvec(0, -1, 0)]
        assert [list(row) for row in r.matrix] == expected

    def test_coordinate_reflection(self, f2_rational):
        h = Hyperplane(qvec(0, 1, 0), f2_rational)
        r = reflection_matrix(h)
        assert [list(row) for row in r.matrix] == [
            qvec(1, 0, 0),
            qvec(0, -1, 0),
            qvec(0, 0, 1),
        ]

    def test_negates_normal_fixes_orthogonal(self, f2_rational):
        v = qvec(0, 1, 1)
        h = Hyperplane(v, f2_rational)
        r = reflection_matrix(h)
        assert r.apply(v) == neg_vec(v)
        w = qvec(1, 0, 0)  # orthogonal to v
        assert lorentz_inner(f2_rational, v, w) == 0
        assert r.apply(w) == tuple(w)

    def test_involution_and_det(self, f2_rational, f4_quadratic):
        r3 = reflection_matrix(Hyperplane(qvec(0, 1, 1), f2_rational))
        assert is_reflection(r3)
        r4 = reflection_matrix(Hyperplane(kvec(0, 1, 1, 0), f4_quadratic))
        assert is_reflection(r4)
        assert r4.det == -1

    def test_random_reflection_properties(self, f4_quadratic):
        rng = random.Random(201)
        ident = tuple(
            tuple(el(1 if i == j else 0) for j in range(4)) for i in range(4)
        )
        for _ in range(15):
            v = rand_spacelike_normal(rng, f4_quadratic)
            h = Hyperplane(v, f4_quadratic)
            r = reflection_matrix(h)
            # involution with determinant -1 in even ambient dimension
            assert compose(r, r).matrix == ident
            assert r.det == -1
            # the normal's line is preserved, its complement pointwise fixed
            image = r.apply(v)
            assert image == tuple(v) or image == neg_vec(v)
            sigma = 1 if image == neg_vec(v) else -1
            for _ in range(3):
                x = rand_vector(rng, K2, 4)
                # project x onto the normal's orthogonal complement
                c = lorentz_inner(f4_quadratic, x, v)
                fvv = lorentz_inner(f4_quadratic, v, v)
                w = tuple(xi - (c / fvv) * vi for xi, vi in zip(x, v))
                expected = w if sigma == 1 else neg_vec(w)
                assert r.apply(w) == expected

    def test_reflection_preserves_inner_products(self, f2_rational):
        rng = random.Random(202)
        for _ in range(10):
            v = rand_spacelike_normal(rng, f2_rational)
            r = reflection_matrix(Hyperplane(v, f2_rational))
            x = rand_vector(rng, QQ, 3)
            y = rand_vector(rng, QQ, 3)
            assert lorentz_inner(f2_rational, r.apply(x), r.apply(y)) == lorentz_inner(
                f2_rational, x, y
            )

    def test_product_trace_matches_distance(self, f2_rational):
        # For ultraparallel walls at distance delta, the composed reflection
        # translates by 2*delta and its 3x3 trace is 4 cosh^2(delta) - 1.
        h0 = Hyperplane(qvec(0, 1, 0), f2_rational)
        h1 = Hyperplane(qvec(1, 2, 0), f2_rational)
        g = compose(reflection_matrix(h1), reflection_matrix(h0))
        cosh_sq = hyperplane_distance(h0, h1).cosh_sq
        expected = 4 * Fraction(cosh_sq.a) - 1
        assert g.trace == expected or g.trace == -expected
