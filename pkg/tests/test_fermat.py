"""Curve points, w-functions, and their phase identities."""

import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tpsi.errors import InvalidModulusError, RegionViolationError, SingularArgumentError
from tpsi.fermat import (
    CyclicSpin,
    FermatPoint,
    apply_O,
    d_eval,
    in_region,
    omega,
    phase_constants,
    phi_tilde,
    primitive_root,
    random_point,
    w_eval,
    w_table,
    w_zero,
    w_zero_alt,
)

MODULI = list(range(2, 8))


def test_cyclic_spin_wraps():
    s = CyclicSpin(5, 3)
    assert s.value == 2
    assert int(s + 2) == 1
    assert int(s - 4) == 1
    assert int(-s) == 1


def test_modulus_guard():
    with pytest.raises(InvalidModulusError):
        omega(1)
    with pytest.raises(InvalidModulusError):
        CyclicSpin(0, 0)


def test_primitive_root_values():
    assert primitive_root(2) == pytest.approx(1j)
    assert primitive_root(3) == pytest.approx(0.5 + 1j * math.sqrt(3) / 2)
    assert primitive_root(4) == pytest.approx(cmath.exp(1j * math.pi / 4))


@pytest.mark.parametrize("n", MODULI)
def test_omega_is_square_of_half_root(n):
    assert omega(n) == pytest.approx(primitive_root(n) ** 2)


@pytest.mark.parametrize("n", MODULI)
def test_d_at_zero_is_one(n):
    assert d_eval(0.0, n) == pytest.approx(1.0)


def test_d_closed_forms():
    # N=2 has the single term exp(log(1+3)/2); N=3 at x=1 is frozen from
    # a direct principal-log evaluation.
    assert d_eval(3.0, 2) == pytest.approx(2.0)
    assert d_eval(1.0, 3) == pytest.approx(complex(1.7057370639048868, 0.30076746636087026))


def test_d_singular_argument():
    with pytest.raises(SingularArgumentError):
        d_eval(-1.0, 2)


def _spec_point():
    x = 0.5 * cmath.exp(-1j * cmath.pi / 2)
    y = cmath.exp(cmath.log(1 - x ** 2) / 2)
    return FermatPoint(x, y, 1.0, 2)


def test_w_zero_frozen_value():
    # Frozen from an independent evaluation of both closed forms.
    want = complex(0.9732489894677301, -0.22975292054736113)
    p = _spec_point()
    assert w_zero(p) == pytest.approx(want, abs=1e-13)
    assert w_zero_alt(p) == pytest.approx(want, abs=1e-13)


@pytest.mark.parametrize("n", MODULI)
def test_w_zero_forms_agree(n):
    rng = np.random.default_rng(7 * n)
    for _ in range(100):
        p = random_point(n, rng)
        a = w_zero(p)
        b = w_zero_alt(p)
        assert abs(a - b) <= 1e-10 * max(abs(a), 1.0)


@pytest.mark.parametrize("n", MODULI)
def test_w_product_is_one(n):
    rng = np.random.default_rng(11 * n)
    for _ in range(50):
        p = random_point(n, rng)
        assert np.prod(w_table(p)) == pytest.approx(1.0, abs=1e-10)


@pytest.mark.parametrize("n", MODULI)
def test_w_recurrence_is_n_periodic(n):
    # The length-N product of y/(z - x omega^s) telescopes to
    # y^N / (z^N - x^N) = 1 on the curve.
    rng = np.random.default_rng(13 * n)
    p = random_point(n, rng)
    om = omega(n)
    prod = np.prod([p.y / (p.z - p.x * om ** s) for s in range(1, n + 1)])
    assert prod == pytest.approx(1.0, abs=1e-10)
    assert w_eval(p, n) == pytest.approx(w_eval(p, 0), abs=1e-10)


def test_w_table_matches_w_eval():
    rng = np.random.default_rng(3)
    p = random_point(5, rng)
    table = w_table(p)
    for a in range(5):
        assert table[a] == pytest.approx(w_eval(p, a))


@pytest.mark.parametrize("n", MODULI)
def test_inversion_identity(n):
    rng = np.random.default_rng(17 * n)
    for _ in range(50):
        p = random_point(n, rng)
        q = apply_O(p)
        for a in range(n):
            val = w_eval(p, a) * w_eval(q, -a) * phi_tilde(a, n)
            assert val == pytest.approx(1.0, abs=1e-10)


def test_apply_O_form_at_n2():
    p = FermatPoint(0.3 - 0.4j, 1.1, 1.0, 2)
    q = apply_O(p)
    assert q.x == pytest.approx(1.0)
    assert q.y == pytest.approx(1j * 1.1)
    assert q.z == pytest.approx(-(0.3 - 0.4j))


@pytest.mark.parametrize("n", MODULI)
def test_apply_O_preserves_curve_and_region(n):
    rng = np.random.default_rng(19 * n)
    for _ in range(100):
        p = random_point(n, rng)
        q = apply_O(p)
        assert q.fermat_residual() <= 1e-12
        assert in_region(q)


def test_phi_tilde_values_n2():
    assert phi_tilde(0, 2) == pytest.approx(cmath.exp(1j * math.pi / 4))
    assert phi_tilde(1, 2) == pytest.approx(cmath.exp(-1j * math.pi / 4))


@pytest.mark.parametrize("n", MODULI)
def test_phi_tilde_product_and_modulus(n):
    vals = [phi_tilde(a, n) for a in range(n)]
    assert np.prod(vals) == pytest.approx(1.0, abs=1e-12)
    assert all(abs(abs(v) - 1.0) < 1e-12 for v in vals)


def test_region_boundaries_are_strict():
    n = 3
    assert not in_region(FermatPoint(1.0, 1.0, 1.0, n))
    p = FermatPoint(cmath.exp(-1j * math.pi / n), 1.0, 1.0, n)
    assert in_region(p)
    with pytest.raises(SingularArgumentError):
        in_region(FermatPoint(0.0, 1.0, 1.0, n))


def test_w_zero_outside_region_raises():
    p = FermatPoint(1.0, 1.0, 1.0, 3)
    with pytest.raises(RegionViolationError):
        w_zero(p)


def test_phase_constants_fields():
    consts = phase_constants(2)
    assert consts.N == 2
    assert consts.phi0 == pytest.approx(1.0)
    assert consts.omega_half == pytest.approx(1j)


@given(st.integers(min_value=2, max_value=7), st.integers(min_value=0, max_value=1000))
@settings(max_examples=60, deadline=None)
def test_random_point_always_on_curve(n, seed):
    rng = np.random.default_rng(seed)
    p = random_point(n, rng)
    assert p.fermat_residual() <= 1e-12
    assert in_region(p)


@given(st.integers(min_value=2, max_value=7), st.integers(min_value=-20, max_value=20))
@settings(max_examples=60, deadline=None)
def test_w_eval_periodic_in_spin(n, a):
    rng = np.random.default_rng(abs(a) + n)
    p = random_point(n, rng)
    assert w_eval(p, a) == pytest.approx(w_eval(p, a % n))
