"""Local high-symmetry-point indices and global topological invariants.

Two independent routes exist for every invariant: the sign-count over
high-symmetry points (local, exact) and a zone integral (global, gauge
free).  The lattice field-strength (plaquette) sum plays the global role
in 2D, a unit-vector degree integral in 3D, and the decoupled-sector Chern
parity / inversion-parity products for the honeycomb model.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import GaplessError, NotHighSymmetryError
from .models import (
    BlochModel,
    evaluate,
    gradient,
    kane_mele,
    kane_mele_spin_sector,
)

__all__ = [
    "HSPLinearization",
    "InvariantReport",
    "linearize_at_hsp",
    "chern_from_hsp",
    "chern_plaquette",
    "winding_from_hsp",
    "winding_numerical",
    "z2_kane_mele",
    "z2_spin_chern_parity",
    "z2_fu_kane_parity",
    "rashba_gap_ramp",
    "compute_invariants",
]

MASS_FLOOR = 1e-9
PROJECTION_TOL = 1e-8
PLAQUETTE_GAP_FLOOR = 1e-6

# Orientation of the plaquette field-strength sum and of the 3D degree
# integral.  Both signs are pinned once so that the global integrals and
# the high-symmetry-point sign formulas quote invariants in the same
# convention; the agreement at every other parameter value is then a real
# cross-check.
PLAQUETTE_ORIENTATION = -1.0
DEGREE_ORIENTATION = -1.0


@dataclass(frozen=True)
class HSPLinearization:
    """Local expansion data H(K + p) ~ sum_d v_d p_d G_d + m G_mass.

    In 2D ``nu`` = sgn(v_x v_y m) (the rotation sense of the local
    oscillation); in 3D the stored pair is (sgn(v_x v_y v_z), sgn(m)) and
    ``nu`` is their product, the quantity summed by the winding formula.
    """

    hsp: tuple
    velocities: tuple
    mass: float
    nu: int
    sign_velocity: int
    sign_mass: int


def _project_onto(generators, matrix, context):
    """Hilbert-Schmidt coefficients of `matrix` on the generator set."""
    coeffs = np.array(
        [np.trace(g @ matrix).real / np.trace(g @ g).real for g in generators]
    )
    residual = float(np.max(np.abs(matrix - np.einsum("g,gij->ij", coeffs, generators))))
    if residual > PROJECTION_TOL:
        raise NotHighSymmetryError(
            f"{context} is not in the generator span (residual {residual:.3e})"
        )
    return coeffs


def linearize_at_hsp(model: BlochModel, K) -> HSPLinearization:
    """Extract the velocities, mass and local index at one high-symmetry point.

    Coefficients come from Hilbert-Schmidt projections of H(K) and each
    dH/dk_d(K) onto the model's generator set; H(K) must be proportional
    to the declared mass generator and the gap must be open.
    """
    if model.mass_generator is None:
        raise NotHighSymmetryError(
            f"model '{model.name}' does not declare a mass generator"
        )
    K = np.atleast_1d(np.asarray(K, dtype=float))
    gens = model.generators.matrices
    ham = evaluate(model, K)
    c_h = _project_onto(gens, ham, f"H at K={tuple(K)}")
    others = np.delete(np.abs(c_h), model.mass_generator)
    if others.size and others.max() > PROJECTION_TOL:
        raise NotHighSymmetryError(
            f"H at K={tuple(K)} is not proportional to the mass generator "
            f"(max off-mass coefficient {others.max():.3e})"
        )
    mass = float(c_h[model.mass_generator])
    if abs(mass) < MASS_FLOOR:
        raise GaplessError(
            f"gapless high-symmetry point K={tuple(K)}: |m| = {abs(mass):.3e}"
        )

    dh = gradient(model, K)
    velocities = []
    for d in range(model.momentum_dim):
        c_g = _project_onto(gens, dh[d], f"dH/dk_{d} at K={tuple(K)}")
        velocities.append(float(c_g[model.velocity_generators[d]]))
    if any(abs(v) < 1e-12 for v in velocities):
        raise NotHighSymmetryError(
            f"vanishing velocity at K={tuple(K)}: {velocities}"
        )

    sign_v = int(np.sign(np.prod(velocities)))
    sign_m = int(np.sign(mass))
    return HSPLinearization(
        hsp=tuple(float(x) for x in K),
        velocities=tuple(velocities),
        mass=mass,
        nu=sign_v * sign_m,
        sign_velocity=sign_v,
        sign_mass=sign_m,
    )


def chern_from_hsp(model: BlochModel, j):
    """Band Chern number from the four local indices: -j * sum_K nu_K.

    ``j`` is the band's spin index (-J .. J counted from the lowest band).
    The sum of four signs is always even, so the result is integral even
    for half-integer j; integral values are returned as int.
    """
    if model.momentum_dim != 2 or len(model.hsps) != 4:
        raise ValueError(
            "the four-point index formula needs a 2D lattice model with four "
            "high-symmetry points"
        )
    total = sum(linearize_at_hsp(model, K).nu for K in model.hsps)
    value = -j * total
    if abs(value - round(value)) < 1e-12:
        return int(round(value))
    return float(value)


def _fhs_sum(model: BlochModel, band: int, n_grid: int) -> float:
    """Lattice field-strength sum over the zone for one band, in units of 2*pi."""
    axes = 2 * np.pi * np.arange(n_grid) / n_grid
    mesh = np.stack(np.meshgrid(axes, axes, indexing="ij"), axis=-1)
    w, v = np.linalg.eigh(evaluate(model, mesh))
    gap = np.full(w.shape[:2], np.inf)
    if band > 0:
        gap = np.minimum(gap, w[..., band] - w[..., band - 1])
    if band < model.band_count - 1:
        gap = np.minimum(gap, w[..., band + 1] - w[..., band])
    if gap.min() < PLAQUETTE_GAP_FLOOR:
        i, jj = np.unravel_index(int(np.argmin(gap)), gap.shape)
        raise GaplessError(
            f"band {band} touches a neighbour near k = "
            f"({axes[i]:.6f}, {axes[jj]:.6f}): gap {gap.min():.3e}"
        )
    u = v[..., :, band]
    link_x = np.einsum("xyn,xyn->xy", u.conj(), np.roll(u, -1, axis=0))
    link_y = np.einsum("xyn,xyn->xy", u.conj(), np.roll(u, -1, axis=1))
    plaq = link_x * np.roll(link_y, -1, axis=0) * np.conj(np.roll(link_x, -1, axis=1)) * np.conj(link_y)
    return PLAQUETTE_ORIENTATION * float(np.angle(plaq).sum()) / (2 * np.pi)


def chern_plaquette(model: BlochModel, band: int, grid: int = 64) -> int:
    """Gauge-invariant plaquette Chern number of one band.

    The grid is doubled (up to 512 per side) until two successive sizes
    agree on the rounded integer; each value must sit within 1e-6 of an
    integer.  Bands touching a neighbour anywhere on the grid are refused.
    """
    if model.momentum_dim != 2:
        raise ValueError("plaquette Chern numbers are defined for 2D models")
    if not 0 <= band < model.band_count:
        raise ValueError(f"band {band} outside 0..{model.band_count - 1}")
    previous = None
    n = grid
    while n <= 512:
        raw = _fhs_sum(model, band, n)
        rounded = int(round(raw))
        good = abs(raw - rounded) < 1e-6
        if good and previous == rounded:
            return rounded
        previous = rounded if good else None
        n *= 2
    raise ValueError(
        f"plaquette sum did not stabilize on an integer up to grid 512 (last {raw!r})"
    )


def winding_from_hsp(model: BlochModel) -> int:
    """3D winding number: half the sum of sgn(v_x v_y v_z) sgn(m) over the
    eight corner points."""
    if model.momentum_dim != 3 or len(model.hsps) != 8:
        raise ValueError("the eight-point winding formula needs a 3D model")
    total = sum(linearize_at_hsp(model, K).nu for K in model.hsps)
    if total % 2 != 0:
        raise ValueError(f"odd index sum {total}: inconsistent linearization")
    return total // 2


def _fft_derivative(values, axis):
    n = values.shape[axis]
    harmonics = np.fft.fftfreq(n, d=1.0 / n)
    if n % 2 == 0:
        harmonics[n // 2] = 0.0
    shape = [1] * values.ndim
    shape[axis] = n
    mult = (1j * harmonics).reshape(shape)
    return np.real(np.fft.ifft(mult * np.fft.fft(values, axis=axis), axis=axis))


def winding_numerical(model: BlochModel, grid: int = 40):
    """3D winding number as the degree of the unit coefficient vector.

    The four generator coefficients d(k) are normalized to a unit vector n
    on S^3 and the degree integral (1/2 pi^2) int det[n, dn/dk1, dn/dk2,
    dn/dk3] d^3k is evaluated with spectral derivatives.  Returns the
    rounded integer and the residual distance from it.
    """
    if model.momentum_dim != 3:
        raise ValueError("the winding integral needs a 3D model")
    if len(model.generators) != 4:
        raise ValueError("the winding integral expects a four-generator chiral model")
    axes = 2 * np.pi * np.arange(grid) / grid
    mesh = np.stack(np.meshgrid(axes, axes, axes, indexing="ij"), axis=-1)
    d_vec = model.coeff(mesh)
    norms = np.linalg.norm(d_vec, axis=-1)
    if norms.min() < PLAQUETTE_GAP_FLOOR:
        loc = np.unravel_index(int(np.argmin(norms)), norms.shape)
        raise GaplessError(
            f"spectrum gap closes near k = {tuple(float(axes[i]) for i in loc)}"
        )
    n_hat = d_vec / norms[..., None]
    derivs = [_fft_derivative(n_hat, axis) for axis in range(3)]
    jac = np.stack([n_hat] + derivs, axis=-2)
    total = np.linalg.det(jac).sum() * (2 * np.pi / grid) ** 3
    raw = DEGREE_ORIENTATION * total / (2 * np.pi**2)
    value = int(round(raw))
    return value, float(abs(raw - value))


# ----------------------------------------------------------------------
# honeycomb model invariants
# ----------------------------------------------------------------------

_KM_K = np.array([2 * np.pi / 3, 4 * np.pi / 3])
_KM_KPRIME = np.array([4 * np.pi / 3, 2 * np.pi / 3])


def _km_params(model: BlochModel) -> dict:
    if model.name != "kane_mele":
        raise ValueError(f"expected the honeycomb model, got '{model.name}'")
    return model.params


def _km_valley_masses(model: BlochModel):
    """Per-valley spin-up masses from the sublattice-spin mass projection.

    The projector tr[(sz x P_up) H]/2 ignores the Rashba block entirely,
    which is exactly the Rashba-free reduction used to classify the phase;
    its validity is guarded by gap tracking, not assumed.
    """
    proj = np.kron(np.diag([1.0, -1.0]), np.diag([1.0, 0.0])).astype(complex)
    masses = []
    for kpt in (_KM_K, _KM_KPRIME):
        ham = evaluate(model, kpt)
        w = np.linalg.eigvalsh(ham)
        if w[2] - w[1] < MASS_FLOOR:
            raise GaplessError(
                f"honeycomb gap closed at valley k = {tuple(kpt)}: "
                f"gap {w[2] - w[1]:.3e}"
            )
        mass = float(np.einsum("ij,ji->", proj, ham).real) / 2.0
        if abs(mass) < MASS_FLOOR:
            raise GaplessError(f"vanishing valley mass at k = {tuple(kpt)}")
        masses.append(mass)
    return masses


def z2_kane_mele(model: BlochModel) -> int:
    """Z2 index from the valley mass-sign rule: 1 iff the spin-up masses at
    the two valleys have opposite signs."""
    m_k, m_kp = _km_valley_masses(model)
    return 1 if m_k * m_kp < 0 else 0


def z2_spin_chern_parity(model: BlochModel, grid: int = 32) -> int:
    """Z2 as the parity of one decoupled sector's Chern number (lambda_r = 0)."""
    params = _km_params(model)
    if params["lambda_r"] != 0.0:
        raise ValueError("the decoupled-sector parity oracle needs lambda_r = 0")
    sector = kane_mele_spin_sector(
        params["t"], params["lambda_so"], params["lambda_v"], +1
    )
    return abs(chern_plaquette(sector, 0, grid)) % 2


def z2_fu_kane_parity(model: BlochModel) -> int:
    """Z2 from parity products at the four time-reversal-invariant momenta.

    Defined only on the inversion-symmetric slice lambda_v = 0 (and
    lambda_r = 0), where sublattice exchange commutes with H at those
    momenta; each occupied Kramers doublet contributes one parity sign.
    """
    params = _km_params(model)
    if params["lambda_v"] != 0.0 or params["lambda_r"] != 0.0:
        raise ValueError(
            "the parity oracle needs the inversion-symmetric slice "
            "lambda_v = 0, lambda_r = 0"
        )
    parity_op = np.kron(np.array([[0, 1], [1, 0]], dtype=complex), np.eye(2))
    pi = np.pi
    product = 1
    for trim in (np.array([0.0, 0.0]), np.array([pi, 0.0]), np.array([0.0, pi]), np.array([pi, pi])):
        w, v = np.linalg.eigh(evaluate(model, trim))
        if w[2] - w[1] < MASS_FLOOR:
            raise GaplessError(f"gap closed at the invariant momentum {tuple(trim)}")
        occ = v[:, :2]
        block = occ.conj().T @ parity_op @ occ
        xi = block.trace().real / 2.0
        if abs(abs(xi) - 1.0) > 1e-6 or np.max(np.abs(block - xi * np.eye(2))) > 1e-6:
            raise ValueError(
                f"occupied doublet at {tuple(trim)} is not a parity eigenspace"
            )
        product *= int(np.sign(xi))
    return (1 - product) // 2


def rashba_gap_ramp(t: float, lambda_so: float, lambda_v: float,
                    lambda_r_max: float, steps: int = 6, grid: int = 33):
    """Track the bulk gap and the Z2 index along a Rashba ramp 0 -> lambda_r_max.

    Returns a list of (lambda_r, min bulk gap, z2).  The grid includes the
    valley momenta exactly when it is a multiple of 3.
    """
    axes = 2 * np.pi * np.arange(grid) / grid
    mesh = np.stack(np.meshgrid(axes, axes, indexing="ij"), axis=-1)
    out = []
    for lam_r in np.linspace(0.0, lambda_r_max, steps):
        model = kane_mele(t, lambda_so, float(lam_r), lambda_v)
        w = np.linalg.eigvalsh(evaluate(model, mesh))
        gap = float((w[..., 2] - w[..., 1]).min())
        out.append((float(lam_r), gap, z2_kane_mele(model)))
    return out


# ----------------------------------------------------------------------
# aggregated reports
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class InvariantReport:
    """Everything the invariant pipeline knows about one model instance."""

    model: str
    params: dict
    hsp: tuple
    chern_hsp: tuple | None
    chern_plaquette: tuple | None
    winding: int | None
    winding_residual: float | None
    z2: int | None

    def to_dict(self) -> dict:
        return {
            "model": self.model,
            "params": dict(self.params),
            "hsp": [
                {
                    "k": list(lin.hsp),
                    "v": list(lin.velocities),
                    "m": lin.mass,
                    "nu": lin.nu,
                }
                for lin in self.hsp
            ],
            "chern_hsp": list(self.chern_hsp) if self.chern_hsp is not None else None,
            "chern_plaquette": (
                list(self.chern_plaquette) if self.chern_plaquette is not None else None
            ),
            "winding": self.winding,
            "winding_residual": self.winding_residual,
            "z2": self.z2,
        }


def compute_invariants(model: BlochModel, plaquette_grid: int = 64,
                       winding_grid: int = 40) -> InvariantReport:
    """Run every invariant that applies to the given model."""
    lins = ()
    chern_local = None
    chern_global = None
    winding = None
    winding_residual = None
    z2 = None

    if model.name == "kane_mele":
        z2 = z2_kane_mele(model)
    elif model.momentum_dim == 2 and model.mass_generator is not None:
        lins = tuple(linearize_at_hsp(model, K) for K in model.hsps)
        if len(model.hsps) == 4:
            spin_j = (model.band_count - 1) / 2.0
            js = [band - spin_j for band in range(model.band_count)]
            chern_local = tuple(chern_from_hsp(model, j) for j in js)
            if model.periodic:
                chern_global = tuple(
                    chern_plaquette(model, band, plaquette_grid)
                    for band in range(model.band_count)
                )
    elif model.momentum_dim == 3:
        lins = tuple(linearize_at_hsp(model, K) for K in model.hsps)
        winding = winding_from_hsp(model)
        w_num, winding_residual = winding_numerical(model, winding_grid)
        if w_num != winding:
            raise ValueError(
                f"winding cross-check failed: corner formula {winding}, "
                f"integral {w_num}"
            )
    return InvariantReport(
        model=model.name,
        params=dict(model.params),
        hsp=lins,
        chern_hsp=chern_local,
        chern_plaquette=chern_global,
        winding=winding,
        winding_residual=winding_residual,
        z2=z2,
    )
