"""Named verification suites assembled into JSON-ready reports.

Every check contributes a dict with a "residual" entry; a run passes
when every residual stays at or below the configured tolerance.
Negative controls are deliberately excluded here (they are meant to
fail) and live in the test suite instead.
"""

from __future__ import annotations

import math
import time

import numpy as np

from . import fermat, verify
from .errors import DegenerateTrihedronError
from .geometry import (
    Trihedron,
    TetrahedronAngles,
    dihedral_from_planar,
    regular_tetrahedron,
    sample_planar_spectral,
    sample_tetrahedron,
    te_weight_angles,
)
from .planar import decompose_check, self_duality_check

SUITES = (
    "fermat",
    "geometry",
    "vertex-te",
    "irc-te",
    "psi",
    "psibar",
    "planar-dual",
    "planar-decompose",
)

SCHEMA_VERSION = 1


def _corner_dict(tri):
    return {
        "theta": [float(x) for x in tri.theta],
        "a": [float(x) for x in tri.a],
        "beta": [float(x) for x in tri.beta],
    }


def _tetra_dict(t):
    return {
        "theta": [float(x) for x in t.theta],
        "corners": [_corner_dict(tri) for tri in te_weight_angles(t)],
    }


def _scalar_check(name, residual, tolerance, entries):
    return {
        "name": name,
        "residual": float(residual),
        "entries_checked": int(entries),
        "mode": "full-sweep",
        "passed": bool(residual <= tolerance),
    }


def _report_check(name, report, tolerance):
    out = {"name": name, "residual": report.rel_diff}
    out.update(report.to_dict())
    out["passed"] = bool(report.rel_diff <= tolerance)
    return out


def _suite_shell(name, n, seed, tolerance, checks, extra=None):
    out = {
        "suite": name,
        "n": n,
        "seed": seed,
        "tolerance": tolerance,
        "checks": checks,
        "passed": all(c["passed"] for c in checks),
    }
    if extra:
        out.update(extra)
    return out


def suite_fermat(n, seed, tolerance, points=200):
    rng = np.random.Generator(np.random.Philox(key=seed))
    pts = [fermat.random_point(n, rng) for _ in range(points)]
    on_curve = max(p.fermat_residual() for p in pts)
    cyclic = 0.0
    inversion = 0.0
    forms = 0.0
    for p in pts:
        table = fermat.w_table(p)
        cyclic = max(cyclic, abs(np.prod(table) - 1.0))
        op = fermat.apply_O(p)
        op_table = fermat.w_table(op)
        for a in range(n):
            val = table[a] * op_table[(-a) % n] * fermat.phi_tilde(a, n)
            inversion = max(inversion, abs(val - 1.0))
        w0 = fermat.w_zero(p)
        forms = max(forms, abs(w0 - fermat.w_zero_alt(p)) / abs(w0))
    phase = abs(np.prod([fermat.phi_tilde(a, n) for a in range(n)]) - 1.0)
    checks = [
        _scalar_check("point-on-curve", on_curve, tolerance, points),
        _scalar_check("cyclic-product", cyclic, tolerance, points),
        _scalar_check("inversion", inversion, tolerance, points * n),
        _scalar_check("normalization-forms", forms, tolerance, points),
        _scalar_check("phase-product", phase, tolerance, 1),
    ]
    return _suite_shell("fermat", n, seed, tolerance, checks)


def suite_geometry(n, seed, tolerance, triples=100):
    rng = np.random.Generator(np.random.Philox(key=seed))
    excess_sum = 0.0
    round_trip = 0.0
    count = 0
    while count < triples:
        theta = rng.uniform(0.05, math.pi - 0.05, size=3)
        try:
            tri = Trihedron.from_dihedral(*theta)
        except DegenerateTrihedronError:
            continue
        if not tri.valid_for_weights(1e-6):
            continue
        count += 1
        excess_sum = max(excess_sum, abs(sum(tri.beta) - math.pi))
        back = dihedral_from_planar(*tri.a)
        round_trip = max(round_trip, max(abs(x - y) for x, y in zip(theta, back)))
    reg = regular_tetrahedron()
    target = math.acos(1.0 / 3.0)
    regular = max(abs(x - target) for x in reg.theta)
    checks = [
        _scalar_check("excess-sum", excess_sum, tolerance, triples),
        _scalar_check("round-trip", round_trip, tolerance, triples),
        _scalar_check("regular-tetrahedron", regular, tolerance, 6),
    ]
    return _suite_shell("geometry", n, seed, tolerance, checks)


def resolved_tetrahedron(angles, seed):
    if angles is not None:
        return TetrahedronAngles(tuple(float(x) for x in angles))
    return sample_tetrahedron(seed)


def suite_vertex_te(n, seed, tolerance, samples, angles=None, threads=None):
    t = resolved_tetrahedron(angles, seed)
    mode = "full" if n <= 2 else "sampled"
    report = verify.te_vertex_residual(
        t, n, mode=mode, samples=samples, seed=seed, threads=threads
    )
    checks = [_report_check("vertex-te", report, tolerance)]
    return _suite_shell("vertex-te", n, seed, tolerance, checks,
                        extra={"angles": _tetra_dict(t)})


def suite_irc_te(n, seed, tolerance, samples, angles=None, threads=None):
    t = resolved_tetrahedron(angles, seed)
    mode = "full" if n <= 2 else "sampled"
    report = verify.te_irc_residual(
        t, n, mode=mode, samples=samples, seed=seed, threads=threads
    )
    checks = [_report_check("irc-te", report, tolerance)]
    return _suite_shell("irc-te", n, seed, tolerance, checks,
                        extra={"angles": _tetra_dict(t)})


def _psi_like_suite(name, fn, n, seed, tolerance, samples, angles, threads):
    t = resolved_tetrahedron(angles, seed)
    bbm_mode = "full" if n <= 2 else "sampled"
    planar_mode = "full" if n <= 3 else "sampled"
    bbm_report = fn(t, n, model="bbm", mode=bbm_mode, samples=samples,
                    seed=seed, threads=threads)
    planar_report = fn(n=n, model="planar", mode=planar_mode, samples=samples,
                       seed=seed, threads=threads)
    planar_corners = [_corner_dict(tri) for tri in sample_planar_spectral(seed)]
    checks = [
        _report_check(f"{name}-bbm", bbm_report, tolerance),
        _report_check(f"{name}-planar", planar_report, tolerance),
    ]
    return _suite_shell(name, n, seed, tolerance, checks,
                        extra={"angles": _tetra_dict(t),
                               "planar_corners": planar_corners})


def suite_psi(n, seed, tolerance, samples, angles=None, threads=None):
    return _psi_like_suite("psi", verify.psi_eq_residual, n, seed, tolerance,
                           samples, angles, threads)


def suite_psibar(n, seed, tolerance, samples, angles=None, threads=None):
    return _psi_like_suite("psibar", verify.psibar_eq_residual, n, seed,
                           tolerance, samples, angles, threads)


def suite_planar_dual(n, seed, tolerance):
    tris = sample_planar_spectral(seed)
    report = self_duality_check(tris[0], n)
    checks = [_report_check("planar-dual", report, tolerance)]
    return _suite_shell("planar-dual", n, seed, tolerance, checks,
                        extra={"planar_corners": [_corner_dict(tris[0])]})


def suite_planar_decompose(n, seed, tolerance, phase_choice=2):
    tris = sample_planar_spectral(seed)
    report = decompose_check(tris[0], n, phase_choice=phase_choice)
    checks = [_report_check("planar-decompose", report, tolerance)]
    return _suite_shell("planar-decompose", n, seed, tolerance, checks,
                        extra={"planar_corners": [_corner_dict(tris[0])],
                               "phase_choice": phase_choice})


def run_suite(name, n=2, seed=0, tolerance=1e-8, samples=10000, angles=None,
              threads=None):
    if name == "fermat":
        return suite_fermat(n, seed, tolerance)
    if name == "geometry":
        return suite_geometry(n, seed, tolerance)
    if name == "vertex-te":
        return suite_vertex_te(n, seed, tolerance, samples, angles, threads)
    if name == "irc-te":
        return suite_irc_te(n, seed, tolerance, samples, angles, threads)
    if name == "psi":
        return suite_psi(n, seed, tolerance, samples, angles, threads)
    if name == "psibar":
        return suite_psibar(n, seed, tolerance, samples, angles, threads)
    if name == "planar-dual":
        return suite_planar_dual(n, seed, tolerance)
    if name == "planar-decompose":
        return suite_planar_decompose(n, seed, tolerance)
    raise ValueError(f"unknown suite {name!r}")


def run_report(suite="all", n=2, seed=0, tolerance=1e-8, samples=10000,
               angles=None, threads=None):
    """Full JSON-ready report for one run configuration."""
    names = SUITES if suite == "all" else (suite,)
    start = time.monotonic()
    results = [
        run_suite(name, n=n, seed=seed, tolerance=tolerance, samples=samples,
                  angles=angles, threads=threads)
        for name in names
    ]
    report = {
        "schema": SCHEMA_VERSION,
        "suite": suite,
        "n": n,
        "seed": seed,
        "tolerance": tolerance,
        "samples": samples,
        "suites": results,
        "passed": all(r["passed"] for r in results),
        "wall_time_s": time.monotonic() - start,
    }
    return report
