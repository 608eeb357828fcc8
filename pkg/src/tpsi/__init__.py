"""Cyclic weight functions on the Fermat curve, tetrahedron-equation
weights built from them, and numerical verification of the identities
they satisfy at small modulus.

Layout:

- ``fermat``: the curve, its distinguished region, and the w-functions.
- ``geometry``: dihedral angles, trihedra, spherical-excess bookkeeping.
- ``bbm``: vertex and face weights, psi vectors, L-operators.
- ``planar``: solvable-limit weights, self-duality, psi decomposition.
- ``tensor``: labeled dense tensors, contraction engine, binary dumps.
- ``verify``: residual sweeps for every identity, full and sampled.
- ``suites`` / ``service`` / ``cli``: JSON reports over HTTP and shell.
"""

from ._version import __version__
from .bbm import (
    BbWeight,
    BbWeightInverse,
    IrcWeightFn,
    SpectralPoints,
    from_bb_convention,
    l_irc,
    l_vertex,
    p_points,
    psi_eval,
    psibar_eval,
    q_points,
    r_vertex,
    rho,
    to_bb_convention,
    w_irc,
)
from .errors import (
    DegenerateTrihedronError,
    InvalidModulusError,
    PlanError,
    RegionViolationError,
    SamplingFailureError,
    SingularArgumentError,
    TpsiError,
)
from .fermat import (
    CyclicSpin,
    FermatPoint,
    apply_O,
    d_eval,
    omega,
    phase_constants,
    phi_tilde,
    w_eval,
    w_table,
    w_zero,
)
from .geometry import (
    TetrahedronAngles,
    Trihedron,
    dihedral_angle,
    planar_trihedra_from_quadrilateral,
    regular_tetrahedron,
    sample_planar_spectral,
    sample_tetrahedron,
    tetrahedron_from_vertices,
)
from .planar import (
    PlanarIrcWeightFn,
    PlanarSpectral,
    decompose_check,
    l_planar,
    n_factor,
    psi_planar,
    psibar_planar,
    r_planar_vertex,
    r_points,
    self_duality_check,
    w_planar_irc,
)
from .report import ResidualReport, residual_report
from .suites import run_report, run_suite
from .tensor import WeightTensor, contract, dump_tensor, load_tensor, naive_contract
from .verify import (
    convention_search,
    psi_eq_residual,
    psibar_eq_residual,
    te_irc_residual,
    te_vertex_residual,
)

__all__ = [
    "BbWeight",
    "BbWeightInverse",
    "CyclicSpin",
    "DegenerateTrihedronError",
    "FermatPoint",
    "InvalidModulusError",
    "IrcWeightFn",
    "PlanError",
    "PlanarIrcWeightFn",
    "PlanarSpectral",
    "RegionViolationError",
    "ResidualReport",
    "SamplingFailureError",
    "SingularArgumentError",
    "SpectralPoints",
    "TetrahedronAngles",
    "TpsiError",
    "Trihedron",
    "WeightTensor",
    "apply_O",
    "contract",
    "convention_search",
    "d_eval",
    "decompose_check",
    "dihedral_angle",
    "dump_tensor",
    "from_bb_convention",
    "l_irc",
    "l_planar",
    "l_vertex",
    "load_tensor",
    "n_factor",
    "naive_contract",
    "omega",
    "p_points",
    "phase_constants",
    "phi_tilde",
    "planar_trihedra_from_quadrilateral",
    "psi_eq_residual",
    "psi_eval",
    "psi_planar",
    "psibar_eq_residual",
    "psibar_eval",
    "psibar_planar",
    "q_points",
    "r_planar_vertex",
    "r_points",
    "r_vertex",
    "regular_tetrahedron",
    "residual_report",
    "rho",
    "run_report",
    "run_suite",
    "sample_planar_spectral",
    "sample_tetrahedron",
    "self_duality_check",
    "te_irc_residual",
    "te_vertex_residual",
    "tetrahedron_from_vertices",
    "to_bb_convention",
    "w_eval",
    "w_irc",
    "w_planar_irc",
    "w_table",
    "w_zero",
]
