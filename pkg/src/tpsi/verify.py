"""Residual checks for the corner-weight consistency identities.

Four checks are implemented: the rank-6 vertex consistency equation,
the eight-spin cube consistency equation (summed over one interior
spin, swept over fourteen outer spins), and the two intertwining
equations tying the vertex weight to the cube weight through psi and
psibar vectors.  Each runs either as a full sweep over all outer spin
assignments or as a seeded random sample, and returns a
ResidualReport.  Negative controls and a convention search over
supplement patterns guard against silently-vacuous wiring.
"""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import bbm, planar
from .errors import DegenerateTrihedronError
from .geometry import (
    SPECTRAL_FLIPS,
    Trihedron,
    sample_planar_spectral,
    te_weight_angles,
)
from .report import FULL_SWEEP, SAMPLED, ResidualReport, residual_report
from .tensor import WeightTensor, contract

CHUNK_ROWS = 1024
CHUNK_TERMS = 2048

OUT_LABELS = ("j1", "j2", "j3", "j4", "j5", "j6",
              "i1", "i2", "i3", "i4", "i5", "i6")

# Axis labels of the four vertex weights on each side of the identity;
# a left fold contracts k1, then (k2, k4), then (k3, k5, k6).
VERTEX_LHS = (
    ("k1", "k2", "k3", "i1", "i2", "i3"),
    ("j1", "k4", "k5", "k1", "i4", "i5"),
    ("j2", "j4", "k6", "k2", "k4", "i6"),
    ("j3", "j5", "j6", "k3", "k5", "k6"),
)
VERTEX_RHS = (
    ("k3", "k5", "k6", "i3", "i5", "i6"),
    ("k2", "k4", "j6", "i2", "i4", "k6"),
    ("k1", "j4", "j5", "i1", "k4", "k5"),
    ("j1", "j2", "j3", "k1", "k2", "k3"),
)


def resolve_threads(threads=None):
    if threads is not None:
        return max(1, int(threads))
    env = os.environ.get("TPSI_THREADS")
    if env:
        return max(1, int(env))
    return 1


def sample_assignments(seed, samples, width, n):
    """Deterministic (samples, width) spin matrix from a counter-based RNG."""
    gen = np.random.Generator(np.random.Philox(key=seed))
    return gen.integers(0, n, size=(samples, width), dtype=np.int64)


def _run_chunks(eval_chunk, rows, threads):
    """Evaluate fixed-size row chunks; results keep chunk order regardless of threads."""
    chunks = [rows[i:i + CHUNK_ROWS] for i in range(0, len(rows), CHUNK_ROWS)]
    workers = resolve_threads(threads)
    if workers == 1 or len(chunks) == 1:
        parts = [eval_chunk(c) for c in chunks]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(eval_chunk, chunks))
    lhs = np.concatenate([p[0] for p in parts])
    rhs = np.concatenate([p[1] for p in parts])
    return lhs, rhs


def vertex_tensors(t, n, flips=SPECTRAL_FLIPS):
    return [bbm.r_vertex(tri, n) for tri in te_weight_angles(t, flips)]


def te_vertex_residual(t, n, mode="full", samples=10000, seed=0, threads=None,
                       flips=SPECTRAL_FLIPS, tensors=None):
    """Vertex consistency identity: fold four rank-6 weights both ways."""
    rs = tensors if tensors is not None else vertex_tensors(t, n, flips)
    if mode == "full":
        lhs = contract([r.relabel(lab) for r, lab in zip(rs, VERTEX_LHS)])
        rhs_order = [rs[3], rs[2], rs[1], rs[0]]
        rhs = contract([r.relabel(lab) for r, lab in zip(rhs_order, VERTEX_RHS)])
        return residual_report(
            lhs.transpose(OUT_LABELS).data,
            rhs.transpose(OUT_LABELS).data,
            FULL_SWEEP,
        )
    if mode != "sampled":
        raise ValueError(f"mode must be 'full' or 'sampled', got {mode!r}")
    rows = sample_assignments(seed, samples, 12, n)
    r0, r1, r2, r3 = (r.data for r in rs)
    kg = np.indices((n,) * 6, dtype=np.int64).reshape(6, -1)

    def eval_chunk(chunk):
        i = [chunk[:, c, None] for c in range(6)]
        j = [chunk[:, 6 + c, None] for c in range(6)]
        out_l = np.zeros(len(chunk), dtype=complex)
        out_r = np.zeros(len(chunk), dtype=complex)
        for lo in range(0, kg.shape[1], CHUNK_TERMS):
            k = [kg[c, None, lo:lo + CHUNK_TERMS] for c in range(6)]
            out_l += (
                r0[k[0], k[1], k[2], i[0], i[1], i[2]]
                * r1[j[0], k[3], k[4], k[0], i[3], i[4]]
                * r2[j[1], j[3], k[5], k[1], k[3], i[5]]
                * r3[j[2], j[4], j[5], k[2], k[4], k[5]]
            ).sum(axis=1)
            out_r += (
                r3[k[2], k[4], k[5], i[2], i[4], i[5]]
                * r2[k[1], k[3], j[5], i[1], i[3], k[5]]
                * r1[k[0], j[3], j[4], i[0], k[3], k[4]]
                * r0[j[0], j[1], j[2], k[0], k[1], k[2]]
            ).sum(axis=1)
        return out_l, out_r

    lhs, rhs = _run_chunks(eval_chunk, rows, threads)
    return residual_report(lhs, rhs, SAMPLED)


def _irc_tables(t, n, flips=SPECTRAL_FLIPS):
    return [bbm.w_irc(tri, n).table().data for tri in te_weight_angles(t, flips)]


# Cube-identity spin labels for the einsum wiring below:
# 0..3 a1..a4, 4..7 b1..b4, 8 c12, 9 c13, 10 c14, 11 c23, 12 c24,
# 13 c34 (gauge-fixed), 14 d (summed).
IRC_LHS = (
    (0, 8, 9, 10, 5, 6, 7, 14),
    (8, 1, 7, 6, 14, 12, 11, 4),
    (7, 11, 9, 14, 5, 4, 2, 13),
    (14, 4, 5, 6, 10, 12, 13, 3),
)
IRC_RHS = (
    (7, 11, 9, 8, 0, 1, 2, 14),
    (8, 1, 0, 6, 10, 12, 14, 3),
    (0, 14, 9, 10, 5, 3, 2, 13),
    (14, 1, 2, 3, 13, 12, 11, 4),
)
IRC_OUTER = tuple(range(13))


def _irc_side(tables, spec):
    """One side of the cube identity with the c34 spin sliced to zero."""
    operands = []
    for tbl, labels in zip(tables, spec):
        if 13 in labels:
            axis = labels.index(13)
            idx = [slice(None)] * 8
            idx[axis] = 0
            tbl = tbl[tuple(idx)]
            labels = tuple(lab for lab in labels if lab != 13)
        operands.extend([tbl, list(labels)])
    return np.einsum(*operands, list(IRC_OUTER), optimize=True)


def te_irc_residual(t, n, mode="full", samples=10000, seed=0, threads=None,
                    flips=SPECTRAL_FLIPS, tables=None):
    """Cube consistency identity, summed over the interior spin d."""
    ws = tables if tables is not None else _irc_tables(t, n, flips)
    if mode == "full":
        lhs = _irc_side([ws[0], ws[1], ws[2], ws[3]], IRC_LHS)
        rhs = _irc_side([ws[3], ws[2], ws[1], ws[0]], IRC_RHS)
        return residual_report(lhs, rhs, FULL_SWEEP)
    if mode != "sampled":
        raise ValueError(f"mode must be 'full' or 'sampled', got {mode!r}")
    rows = sample_assignments(seed, samples, 14, n)
    w0, w1, w2, w3 = ws
    dg = np.arange(n, dtype=np.int64)[None, :]

    def eval_chunk(chunk):
        (a1, a2, a3, a4, b1, b2, b3, b4,
         c12, c13, c14, c23, c24, c34) = (chunk[:, c, None] for c in range(14))
        lhs = (
            w0[a1, c12, c13, c14, b2, b3, b4, dg]
            * w1[c12, a2, b4, b3, dg, c24, c23, b1]
            * w2[b4, c23, c13, dg, b2, b1, a3, c34]
            * w3[dg, b1, b2, b3, c14, c24, c34, a4]
        ).sum(axis=1)
        rhs = (
            w3[b4, c23, c13, c12, a1, a2, a3, dg]
            * w2[c12, a2, a1, b3, c14, c24, dg, a4]
            * w1[a1, dg, c13, c14, b2, a4, a3, c34]
            * w0[dg, a2, a3, a4, c34, c24, c23, b1]
        ).sum(axis=1)
        return lhs, rhs

    lhs, rhs = _run_chunks(eval_chunk, rows, threads)
    return residual_report(lhs, rhs, SAMPLED)


def _psi_inputs(t, n, model, seed, phase_choice, planar_pairs, flips):
    """R tensor, W table and the three psi corners for either model."""
    if model == "bbm":
        if t is None:
            raise ValueError("the bbm model needs explicit tetrahedron angles")
        tris = te_weight_angles(t, flips)
        r = bbm.r_vertex(tris[0], n).data
        w = bbm.w_irc(tris[0], n).table().data
        corners = [bbm.SpectralPoints(tri, n) for tri in tris[1:]]
        psis = [bbm.psi_table(c) for c in corners]
        psibars = [bbm.psibar_table(c) for c in corners]
        return r, w, psis, psibars
    if model == "planar":
        if planar_pairs is not None:
            tris = [Trihedron.from_planar_pair(a1, a3) for a1, a3 in planar_pairs]
        else:
            tris = sample_planar_spectral(seed)
        pts = [planar.PlanarSpectral(tri, n) for tri in tris]
        r = planar.r_planar_vertex(tris[0], n, pts=pts[0]).data
        w = planar.w_planar_irc(tris[0], n, pts=pts[0]).table().data
        psis = [planar.psi_planar_table(p, phase_choice) for p in pts[1:]]
        psibars = [planar.psibar_planar_table(p, phase_choice) for p in pts[1:]]
        return r, w, psis, psibars
    raise ValueError(f"model must be 'bbm' or 'planar', got {model!r}")


# psi-identity einsum labels: 0..2 free vector spins, 3..9 face spins
# (e, h, c, d, b, f, g), 10..12 summed spins.
def _psi_full(r, w, p1, p2, p3):
    lhs = np.einsum(
        r, [10, 11, 12, 0, 1, 2],
        p1, [10, 3, 4, 5, 6],
        p2, [11, 6, 7, 4, 8],
        p3, [12, 4, 9, 5, 7],
        [0, 1, 2, 3, 4, 5, 6, 7, 8, 9], optimize=True,
    )
    rhs = np.einsum(
        p1, [0, 10, 7, 9, 8],
        p2, [1, 3, 9, 5, 10],
        p3, [2, 6, 10, 3, 8],
        w, [10, 3, 8, 9, 7, 5, 6, 4],
        [0, 1, 2, 3, 4, 5, 6, 7, 8, 9], optimize=True,
    )
    return lhs, rhs


def _psibar_full(r, w, b1, b2, b3):
    lhs = np.einsum(
        w, [3, 4, 5, 6, 7, 8, 9, 10],
        b1, [0, 4, 10, 8, 9],
        b2, [1, 9, 7, 10, 5],
        b3, [2, 10, 6, 8, 7],
        [0, 1, 2, 3, 4, 5, 6, 7, 8, 9], optimize=True,
    )
    rhs = np.einsum(
        b1, [10, 3, 7, 6, 5],
        b2, [11, 4, 6, 8, 3],
        b3, [12, 9, 3, 4, 5],
        r, [0, 1, 2, 10, 11, 12],
        [0, 1, 2, 3, 4, 5, 6, 7, 8, 9], optimize=True,
    )
    return lhs, rhs


def psi_eq_residual(t=None, n=2, model="bbm", mode="full", samples=10000,
                    seed=0, threads=None, phase_choice=2, planar_pairs=None,
                    flips=SPECTRAL_FLIPS):
    """Intertwining identity moving three psi vectors through the weights."""
    r, w, psis, _ = _psi_inputs(t, n, model, seed, phase_choice,
                                planar_pairs, flips)
    p1, p2, p3 = psis
    if mode == "full":
        return residual_report(*_psi_full(r, w, p1, p2, p3), FULL_SWEEP)
    if mode != "sampled":
        raise ValueError(f"mode must be 'full' or 'sampled', got {mode!r}")
    rows = sample_assignments(seed, samples, 10, n)
    kg = np.indices((n,) * 3, dtype=np.int64).reshape(3, -1)
    ag = np.arange(n, dtype=np.int64)[None, :]

    def eval_chunk(chunk):
        i1, i2, i3, e, h, c, d, b, f, g = (chunk[:, col, None] for col in range(10))
        k1, k2, k3 = (kg[col, None, :] for col in range(3))
        lhs = (
            r[k1, k2, k3, i1, i2, i3]
            * p1[k1, e, h, c, d] * p2[k2, d, b, h, f] * p3[k3, h, g, c, b]
        ).sum(axis=1)
        rhs = (
            p1[i1, ag, b, g, f] * p2[i2, e, g, c, ag] * p3[i3, d, ag, e, f]
            * w[ag, e, f, g, b, c, d, h]
        ).sum(axis=1)
        return lhs, rhs

    lhs, rhs = _run_chunks(eval_chunk, rows, threads)
    return residual_report(lhs, rhs, SAMPLED)


def psibar_eq_residual(t=None, n=2, model="bbm", mode="full", samples=10000,
                       seed=0, threads=None, phase_choice=2, planar_pairs=None,
                       flips=SPECTRAL_FLIPS):
    """Mirror identity for the psibar vectors (cube-spin sum on the left)."""
    r, w, _, psibars = _psi_inputs(t, n, model, seed, phase_choice,
                                   planar_pairs, flips)
    b1, b2, b3 = psibars
    if mode == "full":
        return residual_report(*_psibar_full(r, w, b1, b2, b3), FULL_SWEEP)
    if mode != "sampled":
        raise ValueError(f"mode must be 'full' or 'sampled', got {mode!r}")
    rows = sample_assignments(seed, samples, 10, n)
    kg = np.indices((n,) * 3, dtype=np.int64).reshape(3, -1)
    hg = np.arange(n, dtype=np.int64)[None, :]

    def eval_chunk(chunk):
        j1, j2, j3, a, e, f, g, b, c, d = (chunk[:, col, None] for col in range(10))
        k1, k2, k3 = (kg[col, None, :] for col in range(3))
        lhs = (
            w[a, e, f, g, b, c, d, hg]
            * b1[j1, e, hg, c, d] * b2[j2, d, b, hg, f] * b3[j3, hg, g, c, b]
        ).sum(axis=1)
        rhs = (
            b1[k1, a, b, g, f] * b2[k2, e, g, c, a] * b3[k3, d, a, e, f]
            * r[j1, j2, j3, k1, k2, k3]
        ).sum(axis=1)
        return lhs, rhs

    lhs, rhs = _run_chunks(eval_chunk, rows, threads)
    return residual_report(lhs, rhs, SAMPLED)


def te_vertex_negative(t, n, seed=0):
    """Control: the identity must break when one weight is random noise."""
    rs = vertex_tensors(t, n)
    gen = np.random.Generator(np.random.Philox(key=seed))
    shape = (n,) * 6
    noise = gen.standard_normal(shape) + 1j * gen.standard_normal(shape)
    rs[3] = WeightTensor(n, rs[3].labels, noise)
    return te_vertex_residual(t, n, tensors=rs)


def te_irc_negative(t, n):
    """Control: swapping two spin slots in one operand must break it."""
    ws = _irc_tables(t, n)
    bad = list(IRC_LHS)
    first = list(bad[0])
    first[4], first[5] = first[5], first[4]
    bad[0] = tuple(first)
    lhs = _irc_side([ws[0], ws[1], ws[2], ws[3]], tuple(bad))
    rhs = _irc_side([ws[3], ws[2], ws[1], ws[0]], IRC_RHS)
    return residual_report(lhs, rhs, FULL_SWEEP)


def psi_eq_negative(t, n):
    """Control: feeding all psi vectors the weight corner must break it."""
    tris = te_weight_angles(t)
    r = bbm.r_vertex(tris[0], n).data
    w = bbm.w_irc(tris[0], n).table().data
    wrong = bbm.psi_table(bbm.SpectralPoints(tris[0], n))
    return residual_report(*_psi_full(r, w, wrong, wrong, wrong), FULL_SWEEP)


def convention_search(t, n=2, patterns=None):
    """Residual of every supplement pattern over the six dihedral angles.

    Candidate 0 is the identity pattern (no angle replaced by its
    supplement).  Unrealizable patterns (some corner has no planar
    triple) are reported with a null residual.  The returned list is
    sorted by residual, ties broken by candidate index.
    """
    if patterns is None:
        patterns = list(itertools.product((False, True), repeat=6))
    entries = []
    for idx, pattern in enumerate(patterns):
        try:
            report = te_vertex_residual(t, n, flips=tuple(pattern))
            entries.append({
                "candidate": idx,
                "flips": [bool(f) for f in pattern],
                "realizable": True,
                "rel_diff": report.rel_diff,
            })
        except DegenerateTrihedronError:
            entries.append({
                "candidate": idx,
                "flips": [bool(f) for f in pattern],
                "realizable": False,
                "rel_diff": None,
            })
    entries.sort(key=lambda entry: (
        entry["rel_diff"] if entry["rel_diff"] is not None else float("inf"),
        entry["candidate"],
    ))
    return entries
