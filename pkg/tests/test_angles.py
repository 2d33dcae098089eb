import random
from fractions import Fraction

import pytest

from polysteiner.angles import (
    AngleQuery,
    absorbing_certificate,
    absorbing_oracle,
    angle_contains,
    angle_face_distance,
    fermat_cost,
    is_absorbing,
)
from polysteiner.exactgeom import InputError, neg, scale, sub
from polysteiner.norm import PolytopalNorm, norm_eval
from randgeom import L1_2, LINF_2, random_norm, random_vector

L1 = PolytopalNorm.from_vertices(L1_2)
LINF = PolytopalNorm.from_vertices(LINF_2)


def cost_at(N, x, a, b):
    return norm_eval(N, x) + norm_eval(N, sub(x, a)) + norm_eval(N, sub(x, b))


def test_examples_square():
    assert is_absorbing(LINF, (1, 1), (-1, 1))
    assert angle_face_distance(LINF, (1, 1), (-1, 1))[0] == 0
    assert not is_absorbing(LINF, (1, 0), (0, 1))
    assert angle_face_distance(LINF, (1, 0), (0, 1))[0] == 2


def test_straight_angle_is_absorbing():
    rng = random.Random(1)
    for _ in range(10):
        N = random_norm(rng, rng.choice((2, 3)))
        a = random_vector(rng, N.dim)
        assert is_absorbing(N, a, neg(a))
        assert absorbing_oracle(N, a, neg(a))
        cert = absorbing_certificate(N, a, neg(a))
        assert cert.check(N, a, neg(a))


def test_oracle_examples():
    value, x = fermat_cost(LINF, (1, 0), (0, 1))
    assert value == Fraction(3, 2)
    assert cost_at(LINF, (Fraction(1, 2), Fraction(1, 2)), (1, 0), (0, 1)) == Fraction(3, 2)
    assert cost_at(LINF, x, (1, 0), (0, 1)) == value
    assert not absorbing_oracle(LINF, (1, 0), (0, 1))
    assert fermat_cost(L1, (1, 0), (0, 1))[0] == 2
    assert absorbing_oracle(L1, (1, 0), (0, 1))


def test_certificates():
    cert = absorbing_certificate(LINF, (1, 1), (-1, 1))
    assert cert is not None and cert.check(LINF, (1, 1), (-1, 1))
    assert absorbing_certificate(LINF, (1, 0), (0, 1)) is None


def test_zero_leg_rejected():
    with pytest.raises(InputError):
        is_absorbing(LINF, (0, 0), (1, 0))
    with pytest.raises(InputError):
        AngleQuery.of((1, 0), (1, 0, 0))


@pytest.mark.parametrize("seed", range(40))
def test_face_route_agrees_with_direct_minimization(seed):
    rng = random.Random(seed)
    N = random_norm(rng, 2 if seed < 30 else 3)
    a, b = random_vector(rng, N.dim), random_vector(rng, N.dim)
    verdict = is_absorbing(N, a, b)
    assert verdict == absorbing_oracle(N, a, b)
    value, x = fermat_cost(N, a, b)
    assert cost_at(N, x, a, b) == value
    cert = absorbing_certificate(N, a, b)
    assert (cert is not None) == verdict
    if cert is not None:
        assert cert.check(N, a, b)


@pytest.mark.parametrize("seed", range(30))
def test_ray_invariance_and_symmetry(seed):
    rng = random.Random(1000 + seed)
    N = random_norm(rng, 2)
    a, b = random_vector(rng, 2), random_vector(rng, 2)
    v = is_absorbing(N, a, b)
    lam, mu = Fraction(rng.randint(1, 9), rng.randint(1, 9)), Fraction(rng.randint(1, 9), rng.randint(1, 9))
    assert is_absorbing(N, scale(lam, a), scale(mu, b)) == v
    assert is_absorbing(N, b, a) == v
    assert is_absorbing(N, neg(a), neg(b)) == v


def test_containment_examples():
    q = AngleQuery.of((1, 0), (0, 1))
    assert angle_contains(q, q)
    assert angle_contains(q, AngleQuery.of((1, 1), (1, 2)))
    assert not angle_contains(AngleQuery.of((1, 0), (1, 1)), AngleQuery.of((0, 1), (1, 0)))
    # a straight angle contains everything on its line and nothing off it
    line = AngleQuery.of((1, 0), (-1, 0))
    assert angle_contains(line, AngleQuery.of((2, 0), (-3, 0)))
    assert not angle_contains(line, AngleQuery.of((1, 0), (0, 1)))
    with pytest.raises(InputError):
        angle_contains(AngleQuery.of((1, 0, 0), (0, 1, 0)), q)


@pytest.mark.parametrize("seed", range(30))
def test_widening_an_absorbing_angle_keeps_it_absorbing(seed):
    rng = random.Random(2000 + seed)
    N = random_norm(rng, 2)
    a, b = random_vector(rng, 2), random_vector(rng, 2)
    # widen by moving each leg away from the other inside the plane
    wa = sub(scale(2, a), b) if rng.random() < 0.5 else a
    wb = sub(scale(2, b), a) if rng.random() < 0.5 else b
    if not any(wa) or not any(wb):
        return
    outer, inner = AngleQuery.of(wa, wb), AngleQuery.of(a, b)
    if angle_contains(outer, inner) and is_absorbing(N, a, b):
        assert is_absorbing(N, wa, wb)
