"""Flat-corner weights: self-dual vertex/cube forms and their decomposition.

When a corner flattens out (a2 = a1 + a3) the four spectral points
collapse to phases r_i built from single excess angles, the vertex and
cube weights become the same function read through an index map, and
the cube weight factorizes into a rank-one sum of psi-vectors.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from .bbm import R_LABELS, W_LABELS
from .errors import DegenerateTrihedronError
from .fermat import FermatPoint, apply_O, omega, w_table
from .report import FULL_SWEEP, residual_report
from .tensor import WeightTensor


def r_points(tri, n):
    """Four phase points, one per excess angle of the flat corner.

    The middle excess of a flat corner is zero, so r2 degenerates to
    (1, 0, 1); it is never consumed by the weights.
    """
    if not tri.is_planar_limit:
        raise DegenerateTrihedronError(f"corner {tri.a} is not flat")
    omq = cmath.exp(1j * math.pi / (2 * n))
    pts = []
    for b in tri.beta:
        y = omq * (2.0 * max(math.sin(b), 0.0)) ** (1.0 / n)
        pts.append(FermatPoint(cmath.exp(-1j * b / n), y, cmath.exp(1j * b / n), n))
    return tuple(pts)


def vu_points(a1, a3, n):
    """Decomposition points for the flat corner (a1, a1 + a3, a3)."""
    a2 = a1 + a3
    if not (0 < a1 < math.pi and 0 < a3 < math.pi and 0 < a2 < math.pi):
        raise DegenerateTrihedronError(
            f"flat-corner angles ({a1}, {a3}) outside the valid wedge"
        )
    om = omega(n)
    rx = (math.sin(a3) / math.sin(a2)) ** (1.0 / n)
    ry = (math.sin(a1) / math.sin(a2)) ** (1.0 / n)
    v = FermatPoint(cmath.exp(-1j * a1 / n) * rx,
                    cmath.exp(1j * a3 / n) * ry, 1.0 + 0j, n)
    u = FermatPoint(om ** -1 * cmath.exp(1j * a1 / n) * rx,
                    cmath.exp(-1j * a3 / n) * ry, 1.0 + 0j, n)
    return v, u


class PlanarSpectral:
    """Spectral points and w-tables of one flat corner."""

    def __init__(self, tri, n):
        if not tri.is_planar_limit:
            raise DegenerateTrihedronError(f"corner {tri.a} is not flat")
        self.tri = tri
        self.N = n
        self.r0, self.r1, self.r2, self.r3 = r_points(tri, n)
        self.v, self.u = vu_points(tri.a[0], tri.a[2], n)
        self.w_r1 = w_table(self.r1)
        self.w_r3 = w_table(self.r3)
        self.w_or0 = w_table(apply_O(self.r0))
        self.w_v = w_table(self.v)
        self.w_u = w_table(self.u)


def r_planar_vertex(tri, n, pts=None):
    """Rank-6 flat-corner vertex weight with axes (j1, j2, j3, i1, i2, i3)."""
    pts = pts or PlanarSpectral(tri, n)
    om = omega(n)
    j1, j2, j3, i1, i2, i3 = np.indices((n,) * 6, dtype=np.int64)
    keep = (j2 == (i1 + i3) % n) & (i2 == (j1 + j3) % n)
    data = (
        om ** ((j1 * (i3 - j3)) % n)
        * pts.w_r1[(i3 - j3) % n] * pts.w_r3[(i1 - j1) % n]
        / pts.w_or0[(j2 - i2) % n]
    )
    data[~keep] = 0
    return WeightTensor(n, R_LABELS, data)


class PlanarIrcWeightFn:
    """Flat-corner cube weight; the f and c spins never enter the value."""

    def __init__(self, tri, n, pts=None):
        self.tri = tri
        self.N = n
        self._pts = pts or PlanarSpectral(tri, n)
        self._om = omega(n)
        self._dense = None

    def __call__(self, a, e, f, g, b, c, d, h):
        n = self.N
        p = self._pts
        return (
            self._om ** (((h - e) * (a - d - g + h)) % n)
            * p.w_r1[(a - d - g + h) % n] * p.w_r3[(b - a - h + e) % n]
            / p.w_or0[(b - d - g + e) % n]
        )

    def table(self):
        """Dense tensor over axes (a, e, f, g, b, c, d, h); cached."""
        if self._dense is None:
            n = self.N
            p = self._pts
            a, e, f, g, b, c, d, h = np.indices((n,) * 8, dtype=np.int64)
            data = (
                self._om ** (((h - e) * (a - d - g + h)) % n)
                * p.w_r1[(a - d - g + h) % n] * p.w_r3[(b - a - h + e) % n]
                / p.w_or0[(b - d - g + e) % n]
            )
            self._dense = WeightTensor(n, W_LABELS, data)
        return self._dense


def w_planar_irc(tri, n, pts=None):
    return PlanarIrcWeightFn(tri, n, pts=pts)


def self_duality_check(tri, n):
    """Entrywise identity between the vertex and cube forms.

    The cube value at spins (a|e,f,g|b,c,d|h) must equal the vertex
    entry at (h-e, b-d, g-h; b-a, g-e, a-d).  One spin is gauge-fixed
    to zero; the remaining seven are swept in full.
    """
    pts = PlanarSpectral(tri, n)
    rt = r_planar_vertex(tri, n, pts=pts).data
    wt = w_planar_irc(tri, n, pts=pts).table().data
    a, f, g, b, c, d, h = np.indices((n,) * 7, dtype=np.int64)
    e = np.zeros_like(a)
    lhs = rt[(h - e) % n, (b - d) % n, (g - h) % n,
             (b - a) % n, (g - e) % n, (a - d) % n]
    rhs = wt[a, e, f, g, b, c, d, h]
    return residual_report(lhs, rhs, FULL_SWEEP)


def n_factor(k, a_angles, n):
    """Decomposition normalization n_k; the displayed product is its inverse.

    The paired indices are the complement {i, j} = {1, 2, 3} minus {k}.
    """
    others = [m for m in (1, 2, 3) if m != k]
    ai, aj = (math.sin(a_angles[m - 1]) for m in others)
    ak = math.sin(a_angles[k - 1])
    if min(ai, aj, ak) <= 0:
        raise DegenerateTrihedronError(f"angles {a_angles} have nonpositive sine")
    inv = (
        math.sqrt(n) * cmath.exp(1j * math.pi * (n * n - 1) / (12 * n))
        * (2.0 * ai * aj / ak) ** ((n - 1) / (2 * n))
    )
    return 1.0 / inv


def psi_planar(sigma, a, b, c, d, pts, phase_choice=2):
    """Row vector psi(sigma|a,b,c,d) built on the point v."""
    n = pts.N
    om = omega(n)
    if phase_choice == 2:
        ph = om ** (((a - b) * (d - b)) % n)
    elif phase_choice == 1:
        ph = om ** (((a - b) * (a - c)) % n)
    else:
        raise ValueError(f"phase_choice must be 1 or 2, got {phase_choice}")
    return pts.w_v[(sigma + a - b) % n] * om ** ((sigma * (d - b)) % n) * ph


def psibar_planar(sigma, a, b, c, d, pts, phase_choice=2):
    """Column vector psibar(sigma|a,b,c,d) built on the point u."""
    n = pts.N
    om = omega(n)
    if phase_choice == 2:
        ph = om ** (((a - b) * (c - a)) % n)
    elif phase_choice == 1:
        ph = om ** (((a - b) * (b - d)) % n)
    else:
        raise ValueError(f"phase_choice must be 1 or 2, got {phase_choice}")
    return om ** ((sigma * (c - a)) % n) / pts.w_u[(sigma + a - b) % n] * ph


def psi_planar_table(pts, phase_choice=2):
    """Dense psi values over axes (sigma, a, b, c, d)."""
    n = pts.N
    om = omega(n)
    sg, a, b, c, d = np.indices((n,) * 5, dtype=np.int64)
    if phase_choice == 2:
        ph = om ** (((a - b) * (d - b)) % n)
    elif phase_choice == 1:
        ph = om ** (((a - b) * (a - c)) % n)
    else:
        raise ValueError(f"phase_choice must be 1 or 2, got {phase_choice}")
    return pts.w_v[(sg + a - b) % n] * om ** ((sg * (d - b)) % n) * ph


def psibar_planar_table(pts, phase_choice=2):
    """Dense psibar values over axes (sigma, a, b, c, d)."""
    n = pts.N
    om = omega(n)
    sg, a, b, c, d = np.indices((n,) * 5, dtype=np.int64)
    if phase_choice == 2:
        ph = om ** (((a - b) * (c - a)) % n)
    elif phase_choice == 1:
        ph = om ** (((a - b) * (b - d)) % n)
    else:
        raise ValueError(f"phase_choice must be 1 or 2, got {phase_choice}")
    return om ** ((sg * (c - a)) % n) / pts.w_u[(sg + a - b) % n] * ph


def decompose_check(tri, n, phase_choice=2):
    """Rank-one decomposition of the cube weight into psi and psibar.

    n1 * sum_sigma psi(sigma|e,h,c,d) psibar(sigma|a,b,g,f) must match
    the cube weight times the gauge phase omega^(-(a-b)(d-h)-(a-g)(h-e)).
    Both vectors and the weight live on the same flat corner.  With the
    alternate phase choice the two sides pick up the exact extra factor
    omega^((e-h)(e-c-d+h)+(a-b)(b-f-g+a)) on the right.
    """
    pts = PlanarSpectral(tri, n)
    psi = psi_planar_table(pts, phase_choice)
    psb = psibar_planar_table(pts, phase_choice)
    wt = w_planar_irc(tri, n, pts=pts).table().data
    n1 = n_factor(1, tri.a, n)
    om = omega(n)
    lhs = n1 * np.einsum(
        psi, [0, 1, 2, 3, 4], psb, [0, 5, 6, 7, 8],
        [5, 1, 8, 7, 6, 3, 4, 2], optimize=True,
    )
    a, e, f, g, b, c, d, h = np.indices((n,) * 8, dtype=np.int64)
    gauge = om ** ((-(a - b) * (d - h) - (a - g) * (h - e)) % n)
    rhs = wt * gauge
    if phase_choice == 1:
        rhs = rhs * om ** (((e - h) * (e - c - d + h) + (a - b) * (b - f - g + a)) % n)
    return residual_report(lhs, rhs, FULL_SWEEP)


def l_planar(i1, i2, i3, j1, j2, j3, pts):
    """Sparse vertex form of the flat-corner intertwiner."""
    n = pts.N
    if j1 != (j3 - i2) % n or j1 != (i3 - j2) % n:
        return 0j
    return pts.w_v[(i1 - j1) % n] * omega(n) ** ((j2 * (i1 - j1)) % n)
