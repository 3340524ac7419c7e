"""Quasiparticle oscillation dynamics and topological invariants.

Small multi-band lattice / continuum models, exact center-of-mass
oscillation trajectories, rotation-sense classification at high-symmetry
points, and invariant reconstruction (Chern, 3D winding, Z2) with
independent global cross-checks.
"""

from .errors import GaplessError, NotHighSymmetryError
from .spectral import SpectralDecomposition, hermitian_eig, evolve
from .generators import GeneratorSet, spin_matrices, gell_mann, adjacent_amplitude
from .models import (
    BlochModel,
    evaluate,
    gradient,
    decompose,
    spin_j_continuum,
    maxwell_lattice,
    kane_mele,
    kane_mele_spin_sector,
    chiral_ti_3d,
    chiral_symmetry,
)
from .dynamics import (
    Trajectory,
    ZBClosedForm,
    ZBSpectrum,
    WavePacket,
    SelectionRuleReport,
    zb_time_grid,
    pcm_trajectory_exact,
    closed_form_spin1,
    closed_form_chiral,
    wavepacket_trajectory,
    rotation_index,
    zb_spectrum,
    selection_rule_check,
)
from .invariants import (
    HSPLinearization,
    InvariantReport,
    linearize_at_hsp,
    chern_from_hsp,
    chern_plaquette,
    winding_from_hsp,
    winding_numerical,
    z2_kane_mele,
    z2_spin_chern_parity,
    z2_fu_kane_parity,
    rashba_gap_ramp,
    compute_invariants,
)

__version__ = "0.1.0"
