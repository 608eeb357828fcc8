"""Flat-corner weights, self-duality, and the psi decomposition."""

import cmath
import itertools
import math

import numpy as np
import pytest

from tpsi.errors import DegenerateTrihedronError
from tpsi.geometry import Trihedron
from tpsi.planar import (
    PlanarSpectral,
    decompose_check,
    l_planar,
    n_factor,
    psi_planar,
    psi_planar_table,
    psibar_planar,
    psibar_planar_table,
    r_planar_vertex,
    r_points,
    self_duality_check,
    vu_points,
    w_planar_irc,
)
from tpsi.report import FULL_SWEEP


def test_r_points_closed_form_n2():
    tri = Trihedron.from_planar_pair(math.pi / 4, math.pi / 4)
    # beta0 = pi/2 gives the frozen phase triple.
    r0 = r_points(tri, 2)[0]
    assert r0.x == pytest.approx(cmath.exp(-1j * math.pi / 4))
    assert r0.y == pytest.approx(cmath.exp(1j * math.pi / 4) * math.sqrt(2))
    assert r0.z == pytest.approx(cmath.exp(1j * math.pi / 4))


def test_r_points_zero_excess_degenerates_cleanly(flat_corner):
    # The middle excess of a flat corner vanishes; its point is (1, 0, 1).
    r2 = r_points(flat_corner, 3)[2]
    assert r2.x == pytest.approx(1.0)
    assert abs(r2.y) == pytest.approx(0.0)
    assert r2.z == pytest.approx(1.0)
    assert r2.fermat_residual() <= 1e-12


def test_r_points_on_curve_random():
    rng = np.random.default_rng(2)
    for _ in range(50):
        a1 = rng.uniform(0.1, 1.4)
        a3 = rng.uniform(0.1, math.pi - a1 - 0.1)
        tri = Trihedron.from_planar_pair(a1, a3)
        for r in r_points(tri, 3):
            assert r.fermat_residual() <= 1e-12


def test_r_points_rejects_nonflat(generic_trihedron):
    with pytest.raises(DegenerateTrihedronError):
        r_points(generic_trihedron, 2)


def test_vu_points_properties(flat_corner):
    n = 3
    v, u = vu_points(flat_corner.a[0], flat_corner.a[2], n)
    assert v.fermat_residual() <= 1e-12
    assert u.fermat_residual() <= 1e-12
    assert abs(u.x) == pytest.approx(abs(v.x))
    assert abs(u.y) == pytest.approx(abs(v.y))
    sym_v, _ = vu_points(0.5, 0.5, n)
    assert abs(sym_v.x) == pytest.approx(abs(sym_v.y))
    with pytest.raises(DegenerateTrihedronError):
        vu_points(2.0, 2.0, n)


def test_r_planar_vertex_delta_support(flat_corner):
    n = 3
    data = r_planar_vertex(flat_corner, n).data
    j1, j2, j3, i1, i2, i3 = np.indices((n,) * 6)
    bad = (j2 != (i1 + i3) % n) | (i2 != (j1 + j3) % n)
    assert np.all(data[bad] == 0)
    assert np.any(data != 0)


def test_r_planar_vertex_frozen_value(flat_corner):
    # Frozen from an independent three-w evaluation.
    got = r_planar_vertex(flat_corner, 3).data[1, 0, 2, 2, 0, 1]
    assert got == pytest.approx(
        complex(0.5027922646143598, -0.42189280379669825), abs=1e-12
    )


def test_w_planar_ignores_f_and_c(flat_corner):
    n = 3
    w = w_planar_irc(flat_corner, n)
    base = w(1, 0, 2, 1, 2, 0, 1, 0)
    for f in range(n):
        for c in range(n):
            assert w(1, 0, f, 1, 2, c, 1, 0) == pytest.approx(base)


def test_w_planar_global_shift(flat_corner):
    n = 3
    w = w_planar_irc(flat_corner, n)
    spins = (1, 0, 2, 1, 2, 0, 1, 0)
    base = w(*spins)
    for s in range(1, n):
        assert w(*((x + s) % n for x in spins)) == pytest.approx(base)


def test_w_planar_frozen_value(flat_corner):
    got = w_planar_irc(flat_corner, 3)(1, 0, 2, 1, 2, 0, 1, 0)
    assert got == pytest.approx(
        complex(0.11397375345460443, 0.6463772758806924), abs=1e-12
    )


def test_w_planar_table_matches_callable(flat_corner):
    n = 2
    w = w_planar_irc(flat_corner, n)
    table = w.table()
    for spins in itertools.product(range(n), repeat=8):
        assert table.data[spins] == pytest.approx(w(*spins))


def test_self_duality_zero_spins(flat_corner):
    n = 3
    rt = r_planar_vertex(flat_corner, n).data
    w = w_planar_irc(flat_corner, n)
    assert rt[0, 0, 0, 0, 0, 0] == pytest.approx(w(0, 0, 0, 0, 0, 0, 0, 0))


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_self_duality_full_sweep(flat_corner, n):
    report = self_duality_check(flat_corner, n)
    assert report.mode == FULL_SWEEP
    assert report.rel_diff < 1e-12
    assert report.entries_checked == n ** 7


def test_n_factor_values():
    n = 2
    a = (math.pi / 4, math.pi / 2, math.pi / 4)
    inv = 1.0 / n_factor(1, a, n)
    want = math.sqrt(2) * cmath.exp(1j * math.pi / 8) * 2 ** 0.25
    assert inv == pytest.approx(want)
    # Modulus follows the closed form for every k.
    for k in (1, 2, 3):
        others = [m for m in (1, 2, 3) if m != k]
        ai, aj = (math.sin(a[m - 1]) for m in others)
        ak = math.sin(a[k - 1])
        want_mod = (1 / math.sqrt(n)) * (2 * ai * aj / ak) ** (-(n - 1) / (2 * n))
        assert abs(n_factor(k, a, n)) == pytest.approx(want_mod)
    with pytest.raises(DegenerateTrihedronError):
        n_factor(1, (0.0, 0.5, 0.5), n)


def test_n_factor_phase_constant_n2():
    assert cmath.exp(1j * math.pi * (4 - 1) / (12 * 2)) == pytest.approx(
        cmath.exp(1j * math.pi / 8)
    )


def test_psi_planar_identity_cases(flat_corner):
    n = 3
    pts = PlanarSpectral(flat_corner, n)
    # sigma = 0 and a = b kill every exponent regardless of phase choice.
    for choice in (1, 2):
        assert psi_planar(0, 1, 1, 2, 0, pts, phase_choice=choice) == pytest.approx(
            pts.w_v[0]
        )
    with pytest.raises(ValueError):
        psi_planar(0, 0, 0, 0, 0, pts, phase_choice=3)
    with pytest.raises(ValueError):
        psibar_planar(0, 0, 0, 0, 0, pts, phase_choice=0)


def test_psi_planar_phase_choice_ratio(flat_corner):
    n = 3
    pts = PlanarSpectral(flat_corner, n)
    om = cmath.exp(2j * cmath.pi / n)
    for sg, a, b, c, d in itertools.product(range(n), repeat=5):
        p1 = psi_planar(sg, a, b, c, d, pts, phase_choice=1)
        p2 = psi_planar(sg, a, b, c, d, pts, phase_choice=2)
        assert p1 / p2 == pytest.approx(om ** ((a - b) * (a - c - d + b)))


def test_psi_planar_frozen_values(flat_corner):
    pts = PlanarSpectral(flat_corner, 3)
    assert psi_planar(1, 2, 0, 1, 2, pts) == pytest.approx(
        complex(1.6719966488955131, -0.9657789537497996), abs=1e-12
    )
    assert psibar_planar(2, 1, 2, 0, 1, pts) == pytest.approx(
        complex(-0.3281980680192951, -0.37499205663911467), abs=1e-12
    )


def test_psi_planar_tables_match_evals(flat_corner):
    n = 2
    pts = PlanarSpectral(flat_corner, n)
    for choice in (1, 2):
        pt = psi_planar_table(pts, choice)
        bt = psibar_planar_table(pts, choice)
        for spins in itertools.product(range(n), repeat=5):
            assert pt[spins] == pytest.approx(psi_planar(*spins, pts, choice))
            assert bt[spins] == pytest.approx(psibar_planar(*spins, pts, choice))


def test_decompose_zero_spins_frozen():
    # Both sides at all-zero spins, frozen from an independent sigma-sum.
    tri = Trihedron.from_planar_pair(math.pi / 4, math.pi / 4)
    n = 2
    pts = PlanarSpectral(tri, n)
    n1 = n_factor(1, tri.a, n)
    lhs = n1 * sum(
        psi_planar(s, 0, 0, 0, 0, pts) * psibar_planar(s, 0, 0, 0, 0, pts)
        for s in range(n)
    )
    want = complex(1.4354999727550746, -0.5946035575013601)
    assert lhs == pytest.approx(want, abs=1e-12)
    assert w_planar_irc(tri, n)(0, 0, 0, 0, 0, 0, 0, 0) == pytest.approx(
        want, abs=1e-12
    )


@pytest.mark.parametrize("n", [2, 3])
@pytest.mark.parametrize("choice", [1, 2])
def test_decompose_full_sweep(flat_corner, n, choice):
    report = decompose_check(flat_corner, n, phase_choice=choice)
    assert report.rel_diff < 1e-9
    assert report.entries_checked == n ** 8


def test_l_planar_delta_support_and_value(flat_corner):
    n = 3
    pts = PlanarSpectral(flat_corner, n)
    assert l_planar(0, 1, 1, 2, 0, 2, pts) == 0
    assert l_planar(0, 1, 1, 1, 1, 2, pts) == 0
    got = l_planar(0, 1, 1, 1, 0, 2, pts)
    assert got == pytest.approx(
        complex(0.48885168127649264, 0.09673183605812513), abs=1e-12
    )
