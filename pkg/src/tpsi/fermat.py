"""Arithmetic on the Fermat curve x^N + y^N = z^N.

Everything downstream is built from the cyclic w-functions defined here.
A point p = (x, y, z) carries its modulus N; spins live in Z_N.  All
complex powers and logarithms use the principal branch with
Im(log) in (-pi, pi], which fixes every phase convention in the package.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .errors import (
    InvalidModulusError,
    RegionViolationError,
    SingularArgumentError,
)

_SINGULAR_TOL = 1e-13


def _check_modulus(n):
    if not isinstance(n, (int, np.integer)) or n < 2:
        raise InvalidModulusError(f"modulus must be an integer >= 2, got {n!r}")


@dataclass(frozen=True)
class CyclicSpin:
    """Residue mod N with canonical representative in 0..N-1."""

    value: int
    N: int

    def __post_init__(self):
        _check_modulus(self.N)
        object.__setattr__(self, "value", int(self.value) % self.N)

    def __add__(self, other):
        return CyclicSpin(self.value + int(other), self.N)

    def __sub__(self, other):
        return CyclicSpin(self.value - int(other), self.N)

    def __neg__(self):
        return CyclicSpin(-self.value, self.N)

    def __int__(self):
        return self.value


def primitive_root(n):
    """Half root of unity omega^(1/2) = exp(i pi / N)."""
    _check_modulus(n)
    return cmath.exp(1j * cmath.pi / n)


def omega(n):
    """Full root of unity omega = exp(2 i pi / N)."""
    _check_modulus(n)
    return cmath.exp(2j * cmath.pi / n)


@dataclass(frozen=True)
class PhaseConstants:
    """Unit phases attached to a modulus: omega^(1/2) and phi0."""

    omega_half: complex
    phi0: complex
    N: int


def phase_constants(n):
    _check_modulus(n)
    phi0 = cmath.exp(1j * cmath.pi * (n - 1) * (n - 2) / (6 * n))
    return PhaseConstants(omega_half=primitive_root(n), phi0=phi0, N=n)


@dataclass(frozen=True)
class FermatPoint:
    """Point (x, y, z) with x^N + y^N = z^N."""

    x: complex
    y: complex
    z: complex
    N: int

    def __post_init__(self):
        _check_modulus(self.N)

    def fermat_residual(self):
        """Relative defect of the curve equation."""
        xn, yn, zn = self.x ** self.N, self.y ** self.N, self.z ** self.N
        scale = max(abs(xn), abs(yn), abs(zn), 1e-300)
        return abs(xn + yn - zn) / scale

    def on_curve(self, tol=1e-10):
        return self.fermat_residual() <= tol


def in_region(p):
    """Strict branch-region test: -2pi/N < Arg(x/z) < 0 and |Arg(y/z)| < pi/N."""
    if abs(p.x) < _SINGULAR_TOL or abs(p.z) < _SINGULAR_TOL:
        raise SingularArgumentError("region test undefined for zero x or z")
    ax = cmath.phase(p.x / p.z)
    ay = cmath.phase(p.y / p.z)
    n = p.N
    return (-2 * cmath.pi / n < ax < 0) and (-cmath.pi / n < ay < cmath.pi / n)


def _require_region(p):
    if not in_region(p):
        raise RegionViolationError(
            f"point ({p.x:.6g}, {p.y:.6g}, {p.z:.6g}) outside the branch region"
        )


def d_eval(x, n):
    """d(x) = exp sum_{a=1}^{N-1} (a/N) log(1 - x omega^a), principal logs."""
    _check_modulus(n)
    om = omega(n)
    total = 0j
    for a in range(1, n):
        factor = 1 - x * om ** a
        if abs(factor) < _SINGULAR_TOL:
            raise SingularArgumentError(f"1 - x*omega^{a} vanished at x={x!r}")
        total += (a / n) * cmath.log(factor)
    return cmath.exp(total)


def _half_power(base, n):
    """base^((N-1)/2) through the principal logarithm."""
    if abs(base) < _SINGULAR_TOL:
        raise SingularArgumentError("half power of zero")
    return cmath.exp(((n - 1) / 2) * cmath.log(base))


def w_zero(p):
    """w(p|0) = (y/z)^((N-1)/2) / d(omega x / z) on the branch region."""
    _require_region(p)
    om = omega(p.N)
    return _half_power(p.y / p.z, p.N) / d_eval(om * p.x / p.z, p.N)


def w_zero_alt(p):
    """Equivalent closed form (x/y)^((N-1)/2) phi0^(-1) d(z/x)."""
    _require_region(p)
    consts = phase_constants(p.N)
    return _half_power(p.x / p.y, p.N) / consts.phi0 * d_eval(p.z / p.x, p.N)


def w_table(p):
    """All N values w(p|0..N-1) via the ratio recurrence from w(p|0)."""
    n = p.N
    om = omega(n)
    out = np.empty(n, dtype=complex)
    out[0] = w_zero(p)
    for a in range(1, n):
        denom = p.z - p.x * om ** a
        if abs(denom) < _SINGULAR_TOL:
            raise SingularArgumentError(f"z - x*omega^{a} vanished")
        out[a] = out[a - 1] * p.y / denom
    return out


def w_eval(p, a):
    """w(p|a) for a spin a taken by its canonical residue."""
    n = p.N
    a = int(a) % n
    om = omega(n)
    val = w_zero(p)
    for s in range(1, a + 1):
        denom = p.z - p.x * om ** s
        if abs(denom) < _SINGULAR_TOL:
            raise SingularArgumentError(f"z - x*omega^{s} vanished")
        val *= p.y / denom
    return val


def apply_O(p):
    """Automorphism (x, y, z) -> (z, omega^(1/2) y, omega x); preserves the region."""
    omh = primitive_root(p.N)
    return FermatPoint(p.z, omh * p.y, omh ** 2 * p.x, p.N)


def phi_tilde(a, n):
    """Inversion phase omega^(a(a-N)/2) exp(i pi (N^2-1)/(6N))."""
    _check_modulus(n)
    a = int(a) % n
    omh = primitive_root(n)
    return omh ** (a * (a - n)) * cmath.exp(1j * cmath.pi * (n * n - 1) / (6 * n))


def random_point(n, rng):
    """Random curve point inside the branch region, z normalized to 1.

    The x phase is drawn inside the open Arg window and y is the principal
    N-th root of z^N - x^N, which lands in the y window for every such x.
    """
    _check_modulus(n)
    while True:
        arg = rng.uniform(-2 * np.pi / n + 1e-6, -1e-6)
        mod = rng.uniform(0.2, 1.4)
        x = mod * cmath.exp(1j * arg)
        target = 1 - x ** n
        if abs(target) < 1e-6:
            continue
        y = cmath.exp(cmath.log(target) / n)
        p = FermatPoint(x, y, 1.0 + 0j, n)
        if in_region(p):
            return p
