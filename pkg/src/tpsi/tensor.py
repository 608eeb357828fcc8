"""Dense complex tensors with named axes, contraction, and binary dumps.

Axis labels drive contraction: a label shared by two tensors is summed
over, labels appearing once survive into the result.  A contraction plan
is a sequence of pairwise steps; the naive all-at-once summation is kept
as an independent oracle for the fast einsum path.
"""

from __future__ import annotations

import io
import itertools
import struct
from dataclasses import dataclass

import numpy as np

from .errors import PlanError

MAGIC = b"TPSI"
FORMAT_VERSION = 1


@dataclass(frozen=True)
class WeightTensor:
    """Complex array over (Z_N)^rank with one unique name per axis."""

    N: int
    labels: tuple
    data: np.ndarray

    def __post_init__(self):
        if len(set(self.labels)) != len(self.labels):
            raise PlanError(f"duplicate axis labels {self.labels}")
        if self.data.shape != (self.N,) * len(self.labels):
            raise PlanError(
                f"data shape {self.data.shape} does not match "
                f"N={self.N}, rank={len(self.labels)}"
            )

    @property
    def rank(self):
        return len(self.labels)

    def relabel(self, labels):
        return WeightTensor(self.N, tuple(labels), self.data)

    def transpose(self, labels):
        """Reorder axes to the given label order (same label set)."""
        labels = tuple(labels)
        if sorted(labels) != sorted(self.labels):
            raise PlanError(f"cannot transpose {self.labels} to {labels}")
        perm = [self.labels.index(lab) for lab in labels]
        return WeightTensor(self.N, labels, np.transpose(self.data, perm))


def delta_tensor(n, labels):
    """Rank-2 identity over the two given labels."""
    if len(labels) != 2:
        raise PlanError("delta tensor takes exactly two labels")
    return WeightTensor(n, tuple(labels), np.eye(n, dtype=complex))


def _contract_pair(a, b):
    shared = [lab for lab in a.labels if lab in b.labels]
    if a.N != b.N:
        raise PlanError(f"modulus mismatch {a.N} vs {b.N}")
    codes = {}
    for lab in itertools.chain(a.labels, b.labels):
        codes.setdefault(lab, len(codes))
    out_labels = tuple(
        lab for lab in itertools.chain(a.labels, b.labels)
        if lab not in shared
    )
    result = np.einsum(
        a.data, [codes[lab] for lab in a.labels],
        b.data, [codes[lab] for lab in b.labels],
        [codes[lab] for lab in out_labels],
        optimize=True,
    )
    return WeightTensor(a.N, out_labels, result)


def contract(tensors, plan=None):
    """Fold a list of tensors into one by pairwise label contraction.

    plan is a sequence of (i, j) index pairs into the current working
    list; each step replaces the two operands by their contraction
    (appended at the end).  Defaults to a left fold.
    """
    work = list(tensors)
    if not work:
        raise PlanError("nothing to contract")
    if plan is None:
        plan = [(0, 1)] * (len(work) - 1)
    for i, j in plan:
        if i == j or not (0 <= i < len(work)) or not (0 <= j < len(work)):
            raise PlanError(f"plan step ({i}, {j}) out of range")
        first, second = work[i], work[j]
        for idx in sorted((i, j), reverse=True):
            work.pop(idx)
        work.append(_contract_pair(first, second))
    if len(work) != 1:
        raise PlanError("plan did not reduce to a single tensor")
    return work[0]


def naive_contract(tensors):
    """All-at-once summation oracle with identical label semantics."""
    n = tensors[0].N
    order = []
    counts = {}
    for t in tensors:
        if t.N != n:
            raise PlanError("modulus mismatch")
        for lab in t.labels:
            if lab not in counts:
                order.append(lab)
            counts[lab] = counts.get(lab, 0) + 1
    free = [lab for lab in order if counts[lab] == 1]
    out = np.zeros((n,) * len(free), dtype=complex)
    positions = [
        [order.index(lab) for lab in t.labels] for t in tensors
    ]
    free_pos = [order.index(lab) for lab in free]
    for assign in itertools.product(range(n), repeat=len(order)):
        term = 1.0 + 0j
        for t, pos in zip(tensors, positions):
            term *= t.data[tuple(assign[p] for p in pos)]
        out[tuple(assign[p] for p in free_pos)] += term
    return WeightTensor(n, tuple(free), out)


def dump_tensor(tensor, target):
    """Write the binary dump format; target is a path or binary stream."""
    header = bytearray()
    header += MAGIC
    header += struct.pack("<III", FORMAT_VERSION, tensor.N, tensor.rank)
    for lab in tensor.labels:
        raw = lab.encode("utf-8")
        header += struct.pack("<I", len(raw)) + raw
    payload = np.ascontiguousarray(tensor.data, dtype="<c16").tobytes()
    if hasattr(target, "write"):
        target.write(bytes(header) + payload)
    else:
        with open(target, "wb") as fh:
            fh.write(bytes(header) + payload)


def load_tensor(source):
    """Read a tensor written by dump_tensor."""
    if hasattr(source, "read"):
        blob = source.read()
    else:
        with open(source, "rb") as fh:
            blob = fh.read()
    stream = io.BytesIO(blob)
    if stream.read(4) != MAGIC:
        raise PlanError("bad magic")
    version, n, rank = struct.unpack("<III", stream.read(12))
    if version != FORMAT_VERSION:
        raise PlanError(f"unsupported format version {version}")
    labels = []
    for _ in range(rank):
        (length,) = struct.unpack("<I", stream.read(4))
        labels.append(stream.read(length).decode("utf-8"))
    count = n ** rank
    data = np.frombuffer(stream.read(16 * count), dtype="<c16").astype(complex)
    return WeightTensor(n, tuple(labels), data.reshape((n,) * rank))
