"""Cyclic Boltzmann weights on the Fermat curve and their intertwiners.

A corner trihedron fixes four curve points p1..p4; the rank-6 vertex
weight R is a ratio of w-functions over those points.  The eight-spin
cube weight W uses the images q_i of the p_i under the automorphism O
with the middle planar angles swapped.  The psi/psibar vectors use the
q-points of the relabeled triple (a2, pi-a3, pi-a1) and intertwine R
with W.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from .errors import DegenerateTrihedronError
from .fermat import FermatPoint, apply_O, omega, primitive_root, w_table
from .geometry import Trihedron, excesses, psi_arg_swap
from .tensor import WeightTensor

R_LABELS = ("j1", "j2", "j3", "i1", "i2", "i3")
W_LABELS = ("a", "e", "f", "g", "b", "c", "d", "h")


def _positive_root(value, n):
    """Real positive n-th root of a positive real ratio."""
    if value <= 0:
        raise DegenerateTrihedronError(f"ratio {value} not positive")
    return value ** (1.0 / n)


def _p_points_from_angles(a1, a2, a3, n):
    b0, b1, b2, b3 = excesses(a1, a2, a3)
    for b in (b0, b1, b2, b3):
        if math.sin(b) <= 0:
            raise DegenerateTrihedronError(f"excess {b} has nonpositive sine")
    if math.sin(a3) <= 0:
        raise DegenerateTrihedronError(f"angle a3={a3} has nonpositive sine")
    omh = primitive_root(n)
    s = math.sin
    phase3 = cmath.exp(1j * a3 / n)
    p1 = FermatPoint(
        omh ** -1 * phase3 * _positive_root(s(b1) / s(b2), n),
        cmath.exp(1j * b1 / n) * _positive_root(s(a3) / s(b2), n), 1.0 + 0j, n)
    p2 = FermatPoint(
        omh ** -1 * phase3 * _positive_root(s(b2) / s(b1), n),
        cmath.exp(1j * b2 / n) * _positive_root(s(a3) / s(b1), n), 1.0 + 0j, n)
    p3 = FermatPoint(
        omh ** -2 * phase3 * _positive_root(s(b3) / s(b0), n),
        cmath.exp(-1j * b3 / n) * _positive_root(s(a3) / s(b0), n), 1.0 + 0j, n)
    p4 = FermatPoint(
        omh ** -2 * phase3 * _positive_root(s(b0) / s(b3), n),
        cmath.exp(-1j * b0 / n) * _positive_root(s(a3) / s(b3), n), 1.0 + 0j, n)
    return (p1, p2, p3, p4)


def p_points(tri, n):
    """Four curve points of the vertex weight for this trihedron."""
    return _p_points_from_angles(*tri.a, n)


def q_points(tri, n):
    """Cube-weight points: O applied to the p-points of the swapped triple."""
    a1, a2, a3 = tri.a
    return tuple(apply_O(p) for p in _p_points_from_angles(a1, a3, a2, n))


def psi_points(tri, n):
    """Intertwiner points (s, t, s', t') from the relabeled planar triple."""
    m1, m2, m3 = psi_arg_swap(*tri.a)
    q = tuple(apply_O(p) for p in _p_points_from_angles(m1, m3, m2, n))
    return (q[3], q[0], q[2], q[1])


def rho(k, tri, n):
    """Positive normalization (1/N) (sin a_k / (2 prod cos(beta/2)))^((N-1)/N)."""
    denom = 2.0
    for b in tri.beta:
        c = math.cos(b / 2)
        if c <= 0:
            raise DegenerateTrihedronError(f"excess {b} too large for cos(b/2)")
        denom *= c
    ratio = math.sin(tri.a[k - 1]) / denom
    if ratio <= 0:
        raise DegenerateTrihedronError("nonpositive normalization ratio")
    return (1.0 / n) * ratio ** ((n - 1) / n)


class SpectralPoints:
    """All curve points and w-tables a trihedron feeds into the weights."""

    def __init__(self, tri, n):
        self.tri = tri
        self.N = n
        self.p1, self.p2, self.p3, self.p4 = p_points(tri, n)
        self.q1, self.q2, self.q3, self.q4 = q_points(tri, n)
        self.s, self.t, self.sp, self.tp = psi_points(tri, n)
        self.w_p = [w_table(p) for p in (self.p1, self.p2, self.p3, self.p4)]
        self.w_q = [w_table(q) for q in (self.q1, self.q2, self.q3, self.q4)]
        self.w_s = w_table(self.s)
        self.w_t = w_table(self.t)
        self.w_sp = w_table(self.sp)
        self.w_tp = w_table(self.tp)

    def all_points(self):
        return (self.p1, self.p2, self.p3, self.p4,
                self.q1, self.q2, self.q3, self.q4,
                self.s, self.t, self.sp, self.tp)


def r_vertex(tri, n, pts=None):
    """Rank-6 vertex weight tensor with axes (j1, j2, j3, i1, i2, i3)."""
    pts = pts or SpectralPoints(tri, n)
    w1, w2, w3, w4 = pts.w_p
    om = omega(n)
    j1, j2, j3, i1, i2, i3 = np.indices((n,) * 6, dtype=np.int64)
    delta = ((j2 + j3) % n == (i2 + i3) % n)
    data = (
        om ** ((j3 * (j1 - i1)) % n)
        * w1[(i1 - i2) % n] * w2[(j1 - j2) % n]
        / (w3[(i1 - j2) % n] * w4[(j1 - i2) % n])
    )
    data *= rho(3, tri, n)
    data[~delta] = 0
    return WeightTensor(n, R_LABELS, data)


class IrcWeightFn:
    """Eight-spin cube weight W(a|e,f,g|b,c,d|h) as a callable."""

    def __init__(self, tri, n, pts=None):
        self.tri = tri
        self.N = n
        pts = pts or SpectralPoints(tri, n)
        self._w1, self._w2, self._w3, self._w4 = pts.w_q
        self._rho = rho(2, tri, n)
        self._om = omega(n)
        self._dense = None

    def __call__(self, a, e, f, g, b, c, d, h):
        n = self.N
        total = 0j
        for s in range(n):
            total += (
                self._w4[(f - a + s) % n] * self._w3[(h - c + s) % n]
                / (self._w1[(d - e + s) % n] * self._w2[(b - g + s) % n])
                * self._om ** ((s * (e + g - a - c)) % n)
            )
        return self._rho * total

    def table(self):
        """Dense tensor over axes (a, e, f, g, b, c, d, h); cached."""
        if self._dense is None:
            n = self.N
            a, e, f, g, b, c, d, h = np.indices((n,) * 8, dtype=np.int64)
            acc = np.zeros((n,) * 8, dtype=complex)
            for s in range(n):
                acc += (
                    self._w4[(f - a + s) % n] * self._w3[(h - c + s) % n]
                    / (self._w1[(d - e + s) % n] * self._w2[(b - g + s) % n])
                    * self._om ** ((s * (e + g - a - c)) % n)
                )
            self._dense = WeightTensor(n, W_LABELS, self._rho * acc)
        return self._dense


def w_irc(tri, n, pts=None):
    return IrcWeightFn(tri, n, pts=pts)


class BbWeight:
    """The same cube weight under the relabeled-spin convention.

    Calls are forwarded with (e,f,g) -> (f,g,e) and (b,c,d) -> (c,d,b);
    the matching dihedral triple is (theta3, theta1, theta2).
    """

    def __init__(self, base):
        self.base = base
        self.N = base.N

    @property
    def theta(self):
        t1, t2, t3 = self.base.tri.theta
        return (t3, t1, t2)

    def __call__(self, a, e, f, g, b, c, d, h):
        return self.base(a, f, g, e, c, d, b, h)


class BbWeightInverse:
    """Inverse relabeling; composing with BbWeight is the identity."""

    def __init__(self, base):
        self.base = base
        self.N = base.N

    def __call__(self, a, e, f, g, b, c, d, h):
        return self.base(a, g, e, f, d, b, c, h)


def to_bb_convention(w):
    return BbWeight(w)


def from_bb_convention(w):
    return BbWeightInverse(w)


def psi_eval(sigma, e, h, c, d, pts):
    """psi(sigma|e,h,c,d) = w(s|sigma+e-c) / w(t|sigma+d-h) * omega^(sigma(h-c))."""
    n = pts.N
    om = omega(n)
    return (
        pts.w_s[(sigma + e - c) % n] / pts.w_t[(sigma + d - h) % n]
        * om ** ((sigma * (h - c)) % n)
    )


def psibar_eval(sigma, a, b, g, f, pts):
    """psibar(sigma|a,b,g,f) = w(s'|sigma+f-b) / w(t'|sigma+a-g) * omega^(sigma(g-b))."""
    n = pts.N
    om = omega(n)
    return (
        pts.w_sp[(sigma + f - b) % n] / pts.w_tp[(sigma + a - g) % n]
        * om ** ((sigma * (g - b)) % n)
    )


def psi_table(pts):
    """Dense psi values over axes (sigma, e, h, c, d)."""
    n = pts.N
    om = omega(n)
    sg, e, h, c, d = np.indices((n,) * 5, dtype=np.int64)
    return (
        pts.w_s[(sg + e - c) % n] / pts.w_t[(sg + d - h) % n]
        * om ** ((sg * (h - c)) % n)
    )


def psibar_table(pts):
    """Dense psibar values over axes (sigma, a, b, g, f)."""
    n = pts.N
    om = omega(n)
    sg, a, b, g, f = np.indices((n,) * 5, dtype=np.int64)
    return (
        pts.w_sp[(sg + f - b) % n] / pts.w_tp[(sg + a - g) % n]
        * om ** ((sg * (g - b)) % n)
    )


def l_irc(a, e, f, g, b, c, d, h, tri, n, pts=None):
    """Cube-type intertwiner product rho1 sum_sigma psi psibar."""
    pts = pts or SpectralPoints(tri, n)
    total = 0j
    for s in range(n):
        total += psi_eval(s, e, h, c, d, pts) * psibar_eval(s, a, b, g, f, pts)
    return rho(1, tri, n) * total


def l_vertex(i, j, e, h, c, d, tri, n, pts=None):
    """Vertex-type intertwiner rho1 psi(i|e,h,c,d) psibar(j|e,h,c,d).

    As a rank-6 tensor it is supported on index combinations
    (i, c-e, e-d; j, h-d, c-h); the value depends on (e,h,c,d) only
    through those differences.
    """
    pts = pts or SpectralPoints(tri, n)
    return (
        rho(1, tri, n)
        * psi_eval(i, e, h, c, d, pts)
        * psibar_eval(j, e, h, c, d, pts)
    )
