"""Trihedron and tetrahedron angle bookkeeping.

A trihedron is described either by its three dihedral angles theta or by
the three planar angles a of its faces; the two descriptions are tied by
spherical trigonometry (the planar angles are the sides of the spherical
triangle whose angles are the dihedral angles).  A tetrahedron supplies
six dihedral angles which feed four corner trihedra; two fixed edges
enter through their supplements (see SPECTRAL_FLIPS).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateTrihedronError, SamplingFailureError

EDGE_NAMES = ("AB", "AC", "AD", "BC", "BD", "CD")
EDGES = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))

# Orientation convention for feeding raw interior dihedral angles into the
# four-corner angle scheme: the angles at edges BC and BD are replaced by
# their supplements, the other four are used as measured.  Exactly this
# pattern (out of the 64 possible supplement choices) makes all four corner
# triples realizable for every tetrahedron and zeroes the vertex
# consistency residual; verify.convention_search reproduces the evidence.
SPECTRAL_FLIPS = (False, False, False, True, True, False)

_REALIZABLE_MARGIN = 1e-12


def excesses(a1, a2, a3):
    """Linear excesses (b0, b1, b2, b3) of a planar angle triple; sum is pi."""
    b0 = math.pi - (a1 + a2 + a3) / 2
    b1 = (a2 + a3 - a1) / 2
    b2 = (a1 + a3 - a2) / 2
    b3 = (a1 + a2 - a3) / 2
    return (b0, b1, b2, b3)


def planar_from_dihedral(theta1, theta2, theta3):
    """Planar angles from dihedral angles via the spherical cosine rule."""
    th = (theta1, theta2, theta3)
    for t in th:
        if not 0 < t < math.pi:
            raise DegenerateTrihedronError(f"dihedral angle {t} outside (0, pi)")
    out = []
    for i in range(3):
        j, k = (m for m in range(3) if m != i)
        c = (math.cos(th[i]) + math.cos(th[j]) * math.cos(th[k])) / (
            math.sin(th[j]) * math.sin(th[k])
        )
        if not -1 + _REALIZABLE_MARGIN < c < 1 - _REALIZABLE_MARGIN:
            raise DegenerateTrihedronError(
                f"dihedral triple {th} is not realizable (cos a = {c:.6g})"
            )
        out.append(math.acos(c))
    return tuple(out)


def dihedral_from_planar(a1, a2, a3):
    """Dihedral angles from planar angles via the dual cosine rule."""
    aa = (a1, a2, a3)
    out = []
    for i in range(3):
        j, k = (m for m in range(3) if m != i)
        c = (math.cos(aa[i]) - math.cos(aa[j]) * math.cos(aa[k])) / (
            math.sin(aa[j]) * math.sin(aa[k])
        )
        out.append(math.acos(min(1.0, max(-1.0, c))))
    return tuple(out)


@dataclass(frozen=True)
class Trihedron:
    """Spectral angle data: dihedral theta, planar a, excesses beta."""

    theta: tuple
    a: tuple
    beta: tuple

    @classmethod
    def from_dihedral(cls, theta1, theta2, theta3):
        a = planar_from_dihedral(theta1, theta2, theta3)
        return cls(theta=(theta1, theta2, theta3), a=a, beta=excesses(*a))

    @classmethod
    def from_planar(cls, a1, a2, a3):
        return cls(theta=dihedral_from_planar(a1, a2, a3), a=(a1, a2, a3),
                   beta=excesses(a1, a2, a3))

    @classmethod
    def from_planar_pair(cls, a1, a3):
        """Exact flat-corner trihedron with a2 = a1 + a3 (theta = (0, pi, 0))."""
        a2 = a1 + a3
        if not (0 < a1 < math.pi and 0 < a3 < math.pi and a2 < math.pi):
            raise DegenerateTrihedronError(
                f"flat-corner angles ({a1}, {a3}) outside the valid wedge"
            )
        return cls(theta=(0.0, math.pi, 0.0), a=(a1, a2, a3),
                   beta=excesses(a1, a2, a3))

    @property
    def is_static(self):
        return abs(sum(self.theta) - math.pi) < 1e-9

    @property
    def is_planar_limit(self):
        return abs(self.a[1] - self.a[0] - self.a[2]) < 1e-9

    def valid_for_weights(self, margin=0.0):
        """True when all excesses clear the margin (sines stay positive)."""
        return min(self.beta) > margin and 0 < self.a[2] < math.pi


def is_static_triple(theta1, theta2, theta3, tol=1e-9):
    return abs(theta1 + theta2 + theta3 - math.pi) < tol


def is_planar_triple(a1, a2, a3, tol=1e-9):
    return abs(a2 - a1 - a3) < tol


@dataclass(frozen=True)
class TetrahedronAngles:
    """Six interior dihedral angles in edge order AB, AC, AD, BC, BD, CD."""

    theta: tuple
    vertices: np.ndarray | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if len(self.theta) != 6:
            raise DegenerateTrihedronError("need exactly six dihedral angles")
        for t in self.theta:
            if not 0 < t < math.pi:
                raise DegenerateTrihedronError(
                    f"dihedral angle {t} outside (0, pi)"
                )


def dihedral_angle(p, q, r, s):
    """Interior dihedral along edge pq between the half-planes toward r and s."""
    p, q, r, s = (np.asarray(v, dtype=float) for v in (p, q, r, s))
    e = q - p
    e = e / np.linalg.norm(e)
    u = (r - p) - np.dot(r - p, e) * e
    v = (s - p) - np.dot(s - p, e) * e
    nu, nv = np.linalg.norm(u), np.linalg.norm(v)
    if nu < 1e-14 or nv < 1e-14:
        raise DegenerateTrihedronError("edge degenerate with a face vertex")
    c = np.dot(u, v) / (nu * nv)
    return float(np.arccos(np.clip(c, -1.0, 1.0)))


def tetrahedron_from_vertices(vertices):
    """Dihedral angles of the tetrahedron on four vertices, fixed edge order."""
    pts = np.asarray(vertices, dtype=float)
    if pts.shape != (4, 3):
        raise DegenerateTrihedronError("need four 3d vertices")
    theta = []
    for v0, v1 in EDGES:
        rest = [m for m in range(4) if m not in (v0, v1)]
        theta.append(dihedral_angle(pts[v0], pts[v1], pts[rest[0]], pts[rest[1]]))
    return TetrahedronAngles(theta=tuple(theta), vertices=pts)


def regular_tetrahedron():
    verts = np.array(
        [[1.0, 1.0, 1.0], [1.0, -1.0, -1.0], [-1.0, 1.0, -1.0], [-1.0, -1.0, 1.0]]
    )
    return tetrahedron_from_vertices(verts)


def apply_flips(theta, flips=SPECTRAL_FLIPS):
    """Replace flagged angles by their supplements."""
    return tuple(math.pi - t if f else t for t, f in zip(theta, flips))


def te_triples(theta):
    """Four ordered spectral triples of the corner scheme."""
    t1, t2, t3, t4, t5, t6 = theta
    return (
        (t1, t2, t3),
        (t1, t4, t5),
        (math.pi - t2, t4, t6),
        (t3, math.pi - t5, t6),
    )


def te_weight_angles(t, flips=SPECTRAL_FLIPS):
    """Four corner Trihedra of a tetrahedron, in weight order."""
    spectral = apply_flips(t.theta, flips)
    return [Trihedron.from_dihedral(*triple) for triple in te_triples(spectral)]


def psi_weight_angles(t, flips=SPECTRAL_FLIPS):
    """The three intertwiner Trihedra (corner triples two to four)."""
    return te_weight_angles(t, flips)[1:]


def psi_arg_swap(a1, a2, a3):
    """Planar-angle relabeling (a1, a2, a3) -> (a2, pi - a3, pi - a1)."""
    return (a2, math.pi - a3, math.pi - a1)


def sample_tetrahedron(seed, max_tries=100):
    """Random nondegenerate tetrahedron whose four corner triples are usable.

    Vertices are drawn from a unit normal; a draw is rejected when the
    volume is below 1e-3 of the cubed diameter or when any corner
    trihedron is unrealizable or closer than 1e-3 to a vanishing excess.
    """
    rng = np.random.default_rng(seed)
    for _ in range(max_tries):
        pts = rng.normal(size=(4, 3))
        vol = abs(np.linalg.det(pts[1:] - pts[0])) / 6.0
        scale = max(
            np.linalg.norm(pts[i] - pts[j]) for i, j in itertools.combinations(range(4), 2)
        )
        if vol < 1e-3 * scale ** 3:
            continue
        t = tetrahedron_from_vertices(pts)
        try:
            corners = te_weight_angles(t)
        except DegenerateTrihedronError:
            continue
        if all(tri.valid_for_weights(margin=1e-3) for tri in corners):
            return t
    raise SamplingFailureError(f"no valid tetrahedron after {max_tries} draws")


def _ray_angle(origin, first, second):
    u = first - origin
    v = second - origin
    c = np.dot(u, v) / (np.linalg.norm(u) * np.linalg.norm(v))
    return float(np.arccos(np.clip(c, -1.0, 1.0)))


def _is_convex_quadrilateral(pts):
    crosses = []
    for i in range(4):
        p, q, r = pts[i], pts[(i + 1) % 4], pts[(i + 2) % 4]
        u = q - p
        v = r - q
        crosses.append(u[0] * v[1] - u[1] * v[0])
    return all(c > 0 for c in crosses) or all(c < 0 for c in crosses)


def planar_trihedra_from_quadrilateral(points):
    """Four flat-corner Trihedra read off a convex quadrilateral A, B, C, D.

    The corners reuse the spatial orientation convention: at each vertex the
    planar pair (a1, a3) mixes interior ray angles and their supplements so
    that every corner satisfies a2 = a1 + a3 exactly.  Convexity in the
    given vertex order is required; without it the betweenness relations
    behind a2 = a1 + a3 break and the corners stop being mutually
    consistent.
    """
    pts = np.asarray(points, dtype=float)
    if pts.shape != (4, 2):
        raise DegenerateTrihedronError("need four 2d vertices")
    if not _is_convex_quadrilateral(pts):
        raise DegenerateTrihedronError("quadrilateral is not convex")
    a_, b_, c_, d_ = pts
    pairs = [
        (_ray_angle(a_, c_, d_), _ray_angle(a_, b_, c_)),
        (_ray_angle(b_, c_, d_), math.pi - _ray_angle(b_, a_, c_)),
        (math.pi - _ray_angle(c_, b_, d_), _ray_angle(c_, a_, b_)),
        (_ray_angle(d_, b_, c_), _ray_angle(d_, a_, b_)),
    ]
    return [Trihedron.from_planar_pair(x, y) for x, y in pairs]


def sample_planar_spectral(seed, max_tries=100, margin=0.02):
    """Random convex quadrilateral turned into four flat-corner Trihedra."""
    rng = np.random.default_rng(seed)
    for _ in range(max_tries):
        ang = np.sort(rng.uniform(0.0, 2 * math.pi, size=4))
        gaps = np.diff(np.concatenate([ang, [ang[0] + 2 * math.pi]]))
        if gaps.min() < 0.3:
            continue
        rad = rng.uniform(0.5, 1.5, size=4)
        pts = np.stack([rad * np.cos(ang), rad * np.sin(ang)], axis=1)
        try:
            tris = planar_trihedra_from_quadrilateral(pts)
        except DegenerateTrihedronError:
            continue
        if all(
            margin < tri.a[0] < math.pi - margin
            and margin < tri.a[2] < math.pi - margin
            and margin < tri.a[1] < math.pi - margin
            for tri in tris
        ):
            return tris
    raise SamplingFailureError(f"no valid quadrilateral after {max_tries} draws")
