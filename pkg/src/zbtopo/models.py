"""Bloch and continuum Hamiltonians used throughout the package.

Every model writes H(k) = sum_G c_G(k) G over a fixed Hermitian generator
set with real, analytically differentiable coefficients.  Momenta are
dimensionless (hbar = 1, lattice constant = 1); lattice models are
2*pi-periodic per axis.  The honeycomb model uses reduced coordinates on
the triangular reciprocal basis so that exact periodicity holds there too.

Initial internal states ("spinors") are always expressed in the eigenbasis
of the model's mass generator, columns ordered by ascending eigenvalue:

* spin-1 lattice / cartesian spin-1 continuum:  Jz eigenvectors
  (1,-i,0)/sqrt2, (0,0,1), (1,i,0)/sqrt2 for eigenvalues -1, 0, +1;
* three-band chiral model: fourth-generator eigenvectors (0,1,-i)/sqrt2,
  (1,0,0), (0,1,i)/sqrt2;
* ladder spin-J: the computational basis in reversed order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .generators import GeneratorSet, gell_mann, spin_matrices
from .spectral import SpectralDecomposition, hermitian_eig

__all__ = [
    "BlochModel",
    "evaluate",
    "gradient",
    "decompose",
    "spin_j_continuum",
    "maxwell_lattice",
    "kane_mele",
    "kane_mele_spin_sector",
    "chiral_ti_3d",
    "chiral_symmetry",
]

SQ2 = np.sqrt(2.0)

# Jz eigenbasis of the cartesian spin-1 representation (columns: -1, 0, +1).
_SPIN1_MASS_BASIS = np.array(
    [
        [1 / SQ2, 0, 1 / SQ2],
        [-1j / SQ2, 0, 1j / SQ2],
        [0, 1, 0],
    ],
    dtype=complex,
)

# Eigenbasis of the chiral model's mass generator (columns: -1, 0, +1).
_CHIRAL_MASS_BASIS = np.array(
    [
        [0, 1, 0],
        [1 / SQ2, 0, 1 / SQ2],
        [-1j / SQ2, 0, 1j / SQ2],
    ],
    dtype=complex,
)


@dataclass(frozen=True)
class BlochModel:
    """A momentum-space Hamiltonian H(k) = sum_G coeff_G(k) * G.

    ``coeff`` maps (..., momentum_dim) momenta to (..., n_generators) real
    coefficients; ``coeff_grad`` returns the (..., n_generators,
    momentum_dim) analytic gradient.  ``velocity_generators[d]`` names the
    generator whose coefficient carries the axis-d velocity at a
    high-symmetry point, ``mass_generator`` the one carrying the local gap.
    """

    name: str
    momentum_dim: int
    band_count: int
    generators: GeneratorSet
    coeff: Callable[[np.ndarray], np.ndarray]
    coeff_grad: Callable[[np.ndarray], np.ndarray]
    hsps: tuple
    params: dict
    periodic: bool
    mass_generator: int | None = None
    velocity_generators: tuple[int, ...] = ()
    mass_basis: np.ndarray | None = None
    momentum_cutoff: float | None = None
    sweep_parameter: str | None = None
    critical_values: tuple[float, ...] = ()

    def mass_eigenbasis(self) -> np.ndarray:
        if self.mass_basis is None:
            return np.eye(self.band_count, dtype=complex)
        return self.mass_basis


def _check_momenta(model: BlochModel, k) -> np.ndarray:
    k = np.atleast_1d(np.asarray(k, dtype=float))
    if k.shape[-1] != model.momentum_dim:
        raise ValueError(
            f"momentum dimension mismatch: got {k.shape[-1]}, "
            f"model '{model.name}' expects {model.momentum_dim}"
        )
    return k


def evaluate(model: BlochModel, k) -> np.ndarray:
    """Hamiltonian at momentum k; broadcasts over leading axes of k."""
    k = _check_momenta(model, k)
    c = model.coeff(k)
    return np.einsum("...g,gij->...ij", c, model.generators.matrices)


def gradient(model: BlochModel, k) -> np.ndarray:
    """Analytic dH/dk_d, shape (..., momentum_dim, n, n)."""
    k = _check_momenta(model, k)
    dc = model.coeff_grad(k)
    return np.einsum("...gd,gij->...dij", dc, model.generators.matrices)


def decompose(model: BlochModel, k) -> SpectralDecomposition:
    """Spectral decomposition at one momentum with group velocities filled in."""
    k = _check_momenta(model, k)
    if k.ndim != 1:
        raise ValueError("decompose expects a single momentum")
    dec = hermitian_eig(evaluate(model, k))
    dh = gradient(model, k)
    vel = np.zeros((len(dec.levels), 3))
    for g, (proj, size) in enumerate(zip(dec.projectors, dec.group_sizes)):
        for d in range(model.momentum_dim):
            vel[g, d] = np.trace(proj @ dh[d]).real / size
    return dec.with_velocities(vel)


# ----------------------------------------------------------------------
# continuum spin-J model
# ----------------------------------------------------------------------

def spin_j_continuum(j, v_x: float, v_y: float, m: float, basis: str = "ladder") -> BlochModel:
    """H(p) = v_x p_x Jx + v_y p_y Jy + m Jz for a spin-j quasiparticle.

    The single high-symmetry point sits at p = 0 where the spectrum is
    m * (-j .. j).  ``basis='cartesian'`` (j = 1 only) uses the adjoint
    representation so spinors match the spin-1 lattice model convention.
    """
    gens = spin_matrices(j, basis)
    dim = gens.dim
    grad_const = np.array([[v_x, 0.0], [0.0, v_y], [0.0, 0.0]])

    def coeff(k, _vx=v_x, _vy=v_y, _m=m):
        out = np.empty(k.shape[:-1] + (3,))
        out[..., 0] = _vx * k[..., 0]
        out[..., 1] = _vy * k[..., 1]
        out[..., 2] = _m
        return out

    def coeff_grad(k, _g=grad_const):
        return np.broadcast_to(_g, k.shape[:-1] + (3, 2)).copy()

    if basis == "cartesian":
        mass_basis = _SPIN1_MASS_BASIS
    else:
        mass_basis = np.eye(dim, dtype=complex)[:, ::-1]  # ascending Jz order

    return BlochModel(
        name="spin_j",
        momentum_dim=2,
        band_count=dim,
        generators=gens,
        coeff=coeff,
        coeff_grad=coeff_grad,
        hsps=(np.zeros(2),),
        params={"j": float(j), "v_x": v_x, "v_y": v_y, "m": m, "basis": basis},
        periodic=False,
        mass_generator=2,
        velocity_generators=(0, 1),
        mass_basis=mass_basis,
        momentum_cutoff=10.0,
        sweep_parameter="m",
        critical_values=(0.0,),
    )


# ----------------------------------------------------------------------
# spin-1 square-lattice model
# ----------------------------------------------------------------------

def maxwell_lattice(t_h: float, M: float) -> BlochModel:
    """Three-band spin-1 lattice model h(k) = J . d(k).

    d = 2 t_h (sin kx, sin ky, M - cos kx - cos ky) on the square lattice,
    with band inversions at the four corner points (0,0), (0,pi), (pi,0),
    (pi,pi) as M crosses 2, 0, 0, -2 respectively.
    """
    if t_h == 0.0:
        raise ValueError("t_h must be nonzero")
    gens = spin_matrices(1, "cartesian")

    def coeff(k, _t=t_h, _M=M):
        out = np.empty(k.shape[:-1] + (3,))
        out[..., 0] = 2 * _t * np.sin(k[..., 0])
        out[..., 1] = 2 * _t * np.sin(k[..., 1])
        out[..., 2] = 2 * _t * (_M - np.cos(k[..., 0]) - np.cos(k[..., 1]))
        return out

    def coeff_grad(k, _t=t_h):
        out = np.zeros(k.shape[:-1] + (3, 2))
        out[..., 0, 0] = 2 * _t * np.cos(k[..., 0])
        out[..., 1, 1] = 2 * _t * np.cos(k[..., 1])
        out[..., 2, 0] = 2 * _t * np.sin(k[..., 0])
        out[..., 2, 1] = 2 * _t * np.sin(k[..., 1])
        return out

    pi = np.pi
    return BlochModel(
        name="maxwell",
        momentum_dim=2,
        band_count=3,
        generators=gens,
        coeff=coeff,
        coeff_grad=coeff_grad,
        hsps=(
            np.array([0.0, 0.0]),
            np.array([0.0, pi]),
            np.array([pi, 0.0]),
            np.array([pi, pi]),
        ),
        params={"t_h": t_h, "M": M},
        periodic=True,
        mass_generator=2,
        velocity_generators=(0, 1),
        mass_basis=_SPIN1_MASS_BASIS,
        sweep_parameter="M",
        critical_values=(-2.0, 0.0, 2.0),
    )


# ----------------------------------------------------------------------
# honeycomb model with spin-orbit coupling (sublattice (x) spin ordering)
# ----------------------------------------------------------------------

_S0 = np.eye(2, dtype=complex)
_SX = np.array([[0, 1], [1, 0]], dtype=complex)
_SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
_SZ = np.array([[1, 0], [0, -1]], dtype=complex)

# Unit vectors of the three nearest-neighbour bonds (A -> B), bond j taken
# with the lattice offset R_j in {0, a1, a2}; a1 = (1, 0), a2 = (1/2, s3/2).
_BOND_HATS = np.array(
    [
        [np.sqrt(3.0) / 2, 0.5],
        [-np.sqrt(3.0) / 2, 0.5],
        [0.0, -1.0],
    ]
)


def _km_generators() -> GeneratorSet:
    mats = [np.kron(_SX, _S0), np.kron(_SY, _S0), np.kron(_SZ, _SZ), np.kron(_SZ, _S0)]
    labels = ["sx_s0", "sy_s0", "sz_sz", "sz_s0"]
    for jbond, (hx, hy) in enumerate(_BOND_HATS):
        spin_part = hy * _SX - hx * _SY  # in-plane spin (x) bond-direction cross product
        mats.append(np.kron(_SX, spin_part))
        mats.append(np.kron(_SY, spin_part))
        labels.append(f"sx_m{jbond}")
        labels.append(f"sy_m{jbond}")
    return GeneratorSet(labels=tuple(labels), matrices=np.stack(mats))


def _km_haldane_phase(k1, k2):
    # Next-nearest-neighbour loop factor; sign alternates with sublattice.
    return np.sin(k1) - np.sin(k2) - np.sin(k1 - k2)


def kane_mele(t: float, lambda_so: float, lambda_r: float, lambda_v: float) -> BlochModel:
    """Honeycomb lattice with intrinsic + Rashba spin-orbit terms and a
    staggered sublattice potential, in reduced momentum coordinates.

    Bloch matrix (sublattice blocks, each 2x2 in spin):

        H_AA =  lambda_v * s0 + 2 lambda_so g(k) * sz
        H_BB = -lambda_v * s0 - 2 lambda_so g(k) * sz
        H_AB =  t (1 + e^{-i k1} + e^{-i k2}) * s0
              + i lambda_r sum_j (sx hy_j - sy hx_j) e^{-i k . R_j}

    with g(k) = sin k1 - sin k2 - sin(k1 - k2), bond offsets R_j in
    {0, a1, a2} and unit bond vectors h_j as in ``_BOND_HATS``.  At
    lambda_r = 0 the model splits into two opposite-mass Haldane sectors.
    t = 0 is allowed so the pure staggered-potential limit stays testable.
    """
    gens = _km_generators()

    def coeff(k, _t=t, _so=lambda_so, _r=lambda_r, _v=lambda_v):
        k1, k2 = k[..., 0], k[..., 1]
        out = np.empty(k.shape[:-1] + (10,))
        out[..., 0] = _t * (1 + np.cos(k1) + np.cos(k2))
        out[..., 1] = _t * (np.sin(k1) + np.sin(k2))
        out[..., 2] = 2 * _so * _km_haldane_phase(k1, k2)
        out[..., 3] = _v
        out[..., 4] = 0.0        # sin of zero bond phase
        out[..., 5] = -_r
        out[..., 6] = _r * np.sin(k1)
        out[..., 7] = -_r * np.cos(k1)
        out[..., 8] = _r * np.sin(k2)
        out[..., 9] = -_r * np.cos(k2)
        return out

    def coeff_grad(k, _t=t, _so=lambda_so, _r=lambda_r):
        k1, k2 = k[..., 0], k[..., 1]
        out = np.zeros(k.shape[:-1] + (10, 2))
        out[..., 0, 0] = -_t * np.sin(k1)
        out[..., 0, 1] = -_t * np.sin(k2)
        out[..., 1, 0] = _t * np.cos(k1)
        out[..., 1, 1] = _t * np.cos(k2)
        out[..., 2, 0] = 2 * _so * (np.cos(k1) - np.cos(k1 - k2))
        out[..., 2, 1] = 2 * _so * (-np.cos(k2) + np.cos(k1 - k2))
        out[..., 6, 0] = _r * np.cos(k1)
        out[..., 7, 0] = _r * np.sin(k1)
        out[..., 8, 1] = _r * np.cos(k2)
        out[..., 9, 1] = _r * np.sin(k2)
        return out

    pi = np.pi
    return BlochModel(
        name="kane_mele",
        momentum_dim=2,
        band_count=4,
        generators=gens,
        coeff=coeff,
        coeff_grad=coeff_grad,
        hsps=(
            np.array([0.0, 0.0]),                  # Gamma
            np.array([2 * pi / 3, 4 * pi / 3]),    # K
            np.array([4 * pi / 3, 2 * pi / 3]),    # K'
            np.array([pi, 0.0]),                   # M
            np.array([0.0, pi]),                   # M'
            np.array([pi, pi]),                    # M''
        ),
        params={
            "t": t,
            "lambda_so": lambda_so,
            "lambda_r": lambda_r,
            "lambda_v": lambda_v,
        },
        periodic=True,
    )


def kane_mele_spin_sector(t: float, lambda_so: float, lambda_v: float, spin: int) -> BlochModel:
    """One decoupled 2x2 spin sector of the honeycomb model at lambda_r = 0."""
    if spin not in (+1, -1):
        raise ValueError("spin must be +1 or -1")
    gens = GeneratorSet(labels=("sx", "sy", "sz"), matrices=np.stack([_SX, _SY, _SZ]))

    def coeff(k, _t=t, _so=lambda_so, _v=lambda_v, _s=spin):
        k1, k2 = k[..., 0], k[..., 1]
        out = np.empty(k.shape[:-1] + (3,))
        out[..., 0] = _t * (1 + np.cos(k1) + np.cos(k2))
        out[..., 1] = _t * (np.sin(k1) + np.sin(k2))
        out[..., 2] = _v + _s * 2 * _so * _km_haldane_phase(k1, k2)
        return out

    def coeff_grad(k, _t=t, _so=lambda_so, _s=spin):
        k1, k2 = k[..., 0], k[..., 1]
        out = np.zeros(k.shape[:-1] + (3, 2))
        out[..., 0, 0] = -_t * np.sin(k1)
        out[..., 0, 1] = -_t * np.sin(k2)
        out[..., 1, 0] = _t * np.cos(k1)
        out[..., 1, 1] = _t * np.cos(k2)
        out[..., 2, 0] = _s * 2 * _so * (np.cos(k1) - np.cos(k1 - k2))
        out[..., 2, 1] = _s * 2 * _so * (-np.cos(k2) + np.cos(k1 - k2))
        return out

    pi = np.pi
    return BlochModel(
        name="kane_mele_sector",
        momentum_dim=2,
        band_count=2,
        generators=gens,
        coeff=coeff,
        coeff_grad=coeff_grad,
        hsps=(np.array([2 * pi / 3, 4 * pi / 3]), np.array([4 * pi / 3, 2 * pi / 3])),
        params={"t": t, "lambda_so": lambda_so, "lambda_v": lambda_v, "spin": spin},
        periodic=True,
    )


# ----------------------------------------------------------------------
# three-band chiral model on the cubic lattice
# ----------------------------------------------------------------------

def chiral_ti_3d(M: float) -> BlochModel:
    """h(k) = sin kx l4 + sin ky l5 + sin kz l6 + (M - sum cos) l7.

    Three bands (+|q|, 0, -|q|) protected by the chiral operator returned
    by ``chiral_symmetry``; the eight corner points of the cubic zone carry
    the local data that fixes the integer winding.
    """
    full = gell_mann()
    gens = GeneratorSet(labels=full.labels[3:7], matrices=full.matrices[3:7].copy())

    def coeff(k, _M=M):
        out = np.empty(k.shape[:-1] + (4,))
        out[..., 0] = np.sin(k[..., 0])
        out[..., 1] = np.sin(k[..., 1])
        out[..., 2] = np.sin(k[..., 2])
        out[..., 3] = _M - np.cos(k[..., 0]) - np.cos(k[..., 1]) - np.cos(k[..., 2])
        return out

    def coeff_grad(k):
        out = np.zeros(k.shape[:-1] + (4, 3))
        for d in range(3):
            out[..., d, d] = np.cos(k[..., d])
            out[..., 3, d] = np.sin(k[..., d])
        return out

    pi = np.pi
    corners = tuple(
        np.array([a, b, c])
        for a in (0.0, pi)
        for b in (0.0, pi)
        for c in (0.0, pi)
    )
    return BlochModel(
        name="chiral_ti",
        momentum_dim=3,
        band_count=3,
        generators=gens,
        coeff=coeff,
        coeff_grad=coeff_grad,
        hsps=corners,
        params={"M": M},
        periodic=True,
        mass_generator=3,
        velocity_generators=(0, 1, 2),
        mass_basis=_CHIRAL_MASS_BASIS,
        sweep_parameter="M",
        critical_values=(-3.0, -1.0, 1.0, 3.0),
    )


def chiral_symmetry(model: BlochModel) -> np.ndarray:
    """Hermitian unitary S with S H(k) S = -H(k), found by solving the
    anticommutation system {G, S} = 0 over the model's generator set."""
    gens = model.generators.matrices
    n = gens.shape[-1]
    # Real basis of Hermitian n x n matrices.
    basis = []
    for i in range(n):
        e = np.zeros((n, n), dtype=complex)
        e[i, i] = 1.0
        basis.append(e)
    for i in range(n):
        for k in range(i + 1, n):
            e = np.zeros((n, n), dtype=complex)
            e[i, k] = e[k, i] = 1.0
            basis.append(e / SQ2)
            e = np.zeros((n, n), dtype=complex)
            e[i, k] = -1j
            e[k, i] = 1j
            basis.append(e / SQ2)
    basis = np.stack(basis)
    rows = []
    for g in gens:
        anti = np.einsum("ij,bjk->bik", g, basis) + np.einsum("bij,jk->bik", basis, g)
        rows.append(anti.reshape(len(basis), -1))
    system = np.concatenate([np.concatenate([r.real, r.imag], axis=1) for r in rows], axis=1)
    gram = system @ system.T
    svals, vecs = np.linalg.eigh(gram)
    null = vecs[:, 0]
    if svals[0] > 1e-12 * max(svals[-1], 1.0):
        raise ValueError(f"no chiral symmetry operator found (min eigenvalue {svals[0]:.3e})")
    s = np.einsum("b,bij->ij", null, basis)
    # Normalize eigenvalues to exactly +-1 and pin the overall sign.
    w, v = np.linalg.eigh(s)
    s = v @ np.diag(np.sign(w)) @ v.conj().T
    if np.trace(s).real < 0:
        s = -s
    return s
