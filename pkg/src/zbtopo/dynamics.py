"""Center-of-mass oscillation dynamics.

The exact route evaluates the projector double sum

    r_o(t) = i sum_{m != n} e^{i (E_m - E_n) t} <Q_m dH/dp Q_n> / (E_n - E_m)

for the expectation in a fixed initial spinor; degenerate level pairs are
excluded by the projector grouping of :mod:`zbtopo.spectral` (their cross
term has no oscillation to contribute).  Closed forms for the spin-1 and
the three-band chiral families provide an independent second route; both
are checked against each other in the test suite.

Conventions: the constant r(0) offset is dropped, so trajectories carry
only the oscillatory part (plus ``t * <velocity>`` when drift is enabled).
Time grids are uniform, sampled at >= 4 points per fastest oscillation
period and spanning >= 4 periods of the slowest one present.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import GaplessError
from .models import BlochModel, evaluate, gradient, spin_j_continuum
from .spectral import hermitian_eig

__all__ = [
    "Trajectory",
    "ZBClosedForm",
    "ZBSpectrum",
    "WavePacket",
    "SelectionRuleReport",
    "zb_time_grid",
    "pcm_trajectory_exact",
    "closed_form_spin1",
    "closed_form_chiral",
    "wavepacket_trajectory",
    "rotation_index",
    "zb_spectrum",
    "selection_rule_check",
]

MIN_SAMPLES_PER_PERIOD = 4
MIN_SPAN_PERIODS = 4
AMPLITUDE_FLOOR = 1e-12


@dataclass
class Trajectory:
    """Uniformly sampled center-of-mass track.

    ``pcm[i]`` is the 3-vector (<x>, <y>, <z>) at ``times[i]``.  Metadata
    records how it was generated (model, momentum or packet, spinor, drift
    flag) plus ``zb_scale``, the predicted oscillation amplitude scale used
    by :func:`rotation_index` to tell real rotation from numerical noise.
    """

    times: np.ndarray
    pcm: np.ndarray
    metadata: dict = field(default_factory=dict)

    @property
    def span(self) -> float:
        return float(self.times[-1] - self.times[0])

    @property
    def dt(self) -> float:
        return float(self.times[1] - self.times[0])


@dataclass(frozen=True)
class ZBClosedForm:
    """Per-component amplitude/phase of one oscillating pair.

    Components oscillate as amplitude * cos(omega t + phase); ``omega`` is
    the (positive) energy gap of the generating level pair.
    """

    amplitude: np.ndarray
    phase: np.ndarray
    omega: float


@dataclass(frozen=True)
class ZBSpectrum:
    """Fourier content of a trajectory.

    ``power[b, c]`` is the squared transform magnitude of component c at
    ``omegas[b]``, normalized so the global maximum is 1.  ``peaks`` holds
    (frequency, relative power) for every local maximum above 1e-10 of the
    global one, frequency refined by parabolic interpolation, strongest
    first.  ``resolution`` is the transform bin width 2*pi/span.
    """

    omegas: np.ndarray
    power: np.ndarray
    peaks: tuple
    resolution: float


@dataclass(frozen=True)
class WavePacket:
    """Gaussian packet of width d centered at k0 with a fixed internal spinor.

    Momentum weights are |g(k)|^2 ~ exp(-d^2 |k - k0|^2).  ``spinor`` is
    either an array of mass-basis coefficients shared by every k or an
    integer band index meaning "the band eigenstate at each k".
    """

    width: float
    center: np.ndarray
    spinor: object

    def __post_init__(self):
        if not self.width > 0:
            raise ValueError(f"packet width must be positive, got {self.width}")


def zb_time_grid(omega_fast: float, omega_slow: float | None = None,
                 samples_per_period: int = 64, periods: int = 8) -> np.ndarray:
    """Uniform grid resolving omega_fast and spanning ``periods`` of omega_slow."""
    omega_fast = abs(float(omega_fast))
    if omega_fast == 0.0:
        raise ValueError("omega_fast must be nonzero")
    omega_slow = omega_fast if omega_slow is None else abs(float(omega_slow))
    dt = 2 * np.pi / (omega_fast * samples_per_period)
    span = periods * 2 * np.pi / omega_slow
    n = int(round(span / dt))
    return np.arange(n) * dt


def _check_uniform(times) -> np.ndarray:
    times = np.asarray(times, dtype=float)
    if times.ndim != 1 or times.size < 2:
        raise ValueError("times must be a 1-D grid with at least two samples")
    steps = np.diff(times)
    if steps[0] <= 0 or np.max(np.abs(steps - steps[0])) > 1e-9 * abs(steps[0]):
        raise ValueError("non-uniform time grid")
    return times


def _validate_sampling(times, omegas_present):
    """Enforce >= 4 samples per fastest period and >= 4 periods of the slowest."""
    times = _check_uniform(times)
    omegas = np.abs(np.asarray(omegas_present, dtype=float))
    omegas = omegas[omegas > 0]
    if omegas.size == 0:
        return times
    dt = times[1] - times[0]
    span = times[-1] - times[0]
    t_fast = 2 * np.pi / omegas.max()
    t_slow = 2 * np.pi / omegas.min()
    if dt > t_fast / MIN_SAMPLES_PER_PERIOD * (1 + 1e-9):
        raise ValueError(
            f"time step {dt:.3g} undersamples the fastest period {t_fast:.3g} "
            f"(need >= {MIN_SAMPLES_PER_PERIOD} samples per period)"
        )
    if span < MIN_SPAN_PERIODS * t_slow * (1 - 1e-9) - dt:
        raise ValueError(
            f"time span {span:.3g} covers fewer than {MIN_SPAN_PERIODS} periods "
            f"of the slowest oscillation ({t_slow:.3g})"
        )
    return times


def _resolve_spinor(model: BlochModel, spinor, k=None) -> np.ndarray:
    """Mass-basis coefficients (or a band index) -> computational-basis state."""
    if isinstance(spinor, (int, np.integer)):
        dec = hermitian_eig(evaluate(model, k))
        return dec.states[:, int(spinor)]
    coeffs = np.asarray(spinor, dtype=complex)
    if coeffs.shape != (model.band_count,):
        raise ValueError(
            f"spinor has {coeffs.shape} components, model '{model.name}' "
            f"needs {model.band_count}"
        )
    norm = float(np.linalg.norm(coeffs))
    if abs(norm - 1.0) > 1e-10:
        raise ValueError(f"spinor is not normalized: |coeffs| = {norm:.12g}")
    return model.mass_eigenbasis() @ coeffs


def _pair_data(ham, grad_mats, psi):
    """Level-pair oscillation amplitudes and the band-diagonal drift velocity.

    Returns (omegas (P,), amps (P, 3) complex, drift (3,)) where pair p of
    levels g < h oscillates as (2 / omega_p) Im(amps_p e^{i omega_p t}) with
    omega_p = E_g - E_h.
    """
    dec = hermitian_eig(ham)
    dh = np.zeros((3,) + ham.shape, dtype=complex)
    dh[: grad_mats.shape[0]] = grad_mats
    proj_psi = np.einsum("gij,j->gi", dec.projectors, psi)
    mat = np.einsum("gi,dij,hj->ghd", proj_psi.conj(), dh, proj_psi)
    drift = np.einsum("ggd->d", mat).real
    n_lvl = len(dec.levels)
    omegas, amps = [], []
    for g in range(n_lvl):
        for h in range(g + 1, n_lvl):
            omegas.append(dec.levels[g] - dec.levels[h])
            amps.append(mat[g, h])
    return np.array(omegas), np.array(amps).reshape(-1, 3), drift


def _present_mask(amps):
    mags = np.max(np.abs(amps), axis=1) if amps.size else np.zeros(0)
    scale = mags.max() if mags.size else 0.0
    return mags > 1e-12 * (1.0 + scale)


def _oscillation(times, omegas, amps):
    """sum_p (2 / omega_p) Im(amps_p e^{i omega_p t}) as a (T, 3) array."""
    if omegas.size == 0:
        return np.zeros((len(times), 3))
    arg = np.outer(times, omegas)
    re_part = (2.0 / omegas)[:, None] * amps.real
    im_part = (2.0 / omegas)[:, None] * amps.imag
    return np.sin(arg) @ re_part + np.cos(arg) @ im_part


def pcm_trajectory_exact(model: BlochModel, k, spinor, times=None,
                         include_drift: bool = False, *,
                         samples_per_period: int = 64, periods: int = 8) -> Trajectory:
    """Oscillatory center-of-mass trajectory from the projector double sum.

    ``spinor`` holds coefficients in the model's mass eigenbasis (or a band
    index for an energy eigenstate, which yields an identically zero
    oscillation).  With ``include_drift`` the band-diagonal velocity term
    ``t * <dH/dp>_diag`` is added.  ``times=None`` builds the default grid
    from the oscillation frequencies actually present.
    """
    k = np.atleast_1d(np.asarray(k, dtype=float))
    psi = _resolve_spinor(model, spinor, k)
    omegas, amps, drift = _pair_data(evaluate(model, k), gradient(model, k), psi)
    mask = _present_mask(amps)
    if times is None:
        if mask.any():
            times = zb_time_grid(np.abs(omegas[mask]).max(), np.abs(omegas[mask]).min(),
                                 samples_per_period, periods)
        else:
            times = zb_time_grid(1.0, samples_per_period=samples_per_period, periods=periods)
    times = _validate_sampling(times, omegas[mask])
    pcm = _oscillation(times, omegas[mask], amps[mask])
    if include_drift:
        pcm = pcm + np.outer(times, drift)
    present = np.sort(np.abs(omegas[mask]))
    scale = _amp_scale(omegas[mask], amps[mask])
    meta = {
        "model": model.name,
        "momentum": tuple(float(x) for x in k),
        "spinor": _spinor_tag(spinor),
        "include_drift": include_drift,
        "zb_scale": scale,
        "present_frequencies": tuple(float(w) for w in present),
    }
    return Trajectory(times=times, pcm=pcm, metadata=meta)


def _amp_scale(omegas, amps) -> float:
    if omegas.size == 0:
        return 0.0
    return float(np.max(2.0 * np.abs(amps) / np.abs(omegas)[:, None]))


def _spinor_tag(spinor):
    if isinstance(spinor, (int, np.integer)):
        return f"eigenstate:{int(spinor)}"
    return tuple(complex(c) for c in np.asarray(spinor, dtype=complex))


# ----------------------------------------------------------------------
# closed forms
# ----------------------------------------------------------------------

def _polar(w):
    r = abs(w)
    return r, (float(np.angle(w)) if r > 0 else 0.0)


def _closed_traj(times, comps, omegas_present, metadata):
    """Components given as (complex amplitude, omega): value = Re(C e^{i w t})."""
    times = _validate_sampling(times, omegas_present)
    pcm = np.zeros((len(times), 3))
    for c, (amp, omega) in enumerate(comps):
        if amp != 0:
            pcm[:, c] = np.real(amp * np.exp(1j * omega * times))
    return Trajectory(times=times, pcm=pcm, metadata=metadata)


def closed_form_spin1(v_x: float, v_y: float, m: float, spinor, times=None):
    """Closed-form in-plane trajectory of the spin-1 model at its band-inversion point.

    ``spinor`` = (a, b, c) in the cartesian-Jz eigenbasis.  With
    R = sqrt2 Re[(a - c) b*], I = sqrt2 Im[(a + c) b*] and theta = atan2(I, R):

        <x> =            (v_x/|m|) sqrt(R^2+I^2) sin(|m| t + sgn(m) theta)
        <y> = -sgn(m) *  (v_y/|m|) sqrt(R^2+I^2) cos(|m| t + sgn(m) theta)

    so the sense of rotation flips with the sign of v_x v_y m.  Returns the
    trajectory plus the (amplitude, phase, omega) summary.
    """
    if abs(m) < 1e-12:
        raise GaplessError("mass m = 0: the gap is closed and the oscillation amplitude diverges")
    a, b, c = _unit_spinor(spinor, 3)
    big_r = np.sqrt(2.0) * ((a - c) * np.conj(b)).real
    big_i = np.sqrt(2.0) * ((a + c) * np.conj(b)).imag
    mag = float(np.hypot(big_r, big_i))
    theta = float(np.arctan2(big_i, big_r)) if mag > 0 else 0.0
    sgn = 1.0 if m > 0 else -1.0
    omega = abs(m)

    cx = (v_x / omega) * mag * np.exp(1j * (sgn * theta - np.pi / 2))
    cy = -sgn * (v_y / omega) * mag * np.exp(1j * sgn * theta)
    if times is None:
        times = zb_time_grid(omega)
    present = [omega] if mag > 0 else []
    meta = {
        "model": "spin1_closed_form",
        "params": {"v_x": v_x, "v_y": v_y, "m": m},
        "spinor": _spinor_tag(spinor),
        "include_drift": False,
        "zb_scale": mag * max(abs(v_x), abs(v_y)) / omega,
    }
    traj = _closed_traj(times, [(cx, omega), (cy, omega), (0.0, omega)], present, meta)
    form = ZBClosedForm(
        amplitude=np.array([abs(cx), abs(cy), 0.0]),
        phase=np.array([_polar(cx)[1], _polar(cy)[1], 0.0]),
        omega=omega,
    )
    return traj, form


def closed_form_chiral(v_x: float, v_y: float, v_z: float, m: float, spinor, times=None):
    """Closed-form trajectory of the three-band chiral model at a corner point.

    ``spinor`` = (a, b, c) in the mass-generator eigenbasis.  Two branches
    are supported: c = 0 rotates in-plane at |m|,

        <x> = -sqrt2 (v_x/m) R2 cos(m t + th2),  <y> = -sqrt2 (v_y/m) R2 sin(m t + th2)

    with R2 e^{i th2} = a b*; b = 0 oscillates along z at 2|m|,

        <z> = -(v_z/m) R3 cos(2 m t + th3),  R3 e^{i th3} = a c*.

    Mixed spinors must use :func:`pcm_trajectory_exact`.
    """
    if abs(m) < 1e-12:
        raise GaplessError("mass m = 0: the gap is closed and the oscillation amplitude diverges")
    a, b, c = _unit_spinor(spinor, 3)
    if abs(b) > 1e-12 and abs(c) > 1e-12:
        raise ValueError(
            "spinor mixes both closed-form branches (b != 0 and c != 0); "
            "use pcm_trajectory_exact for general spinors"
        )
    sgn = 1.0 if m > 0 else -1.0
    if abs(c) <= 1e-12:
        r2, th2 = _polar(a * np.conj(b))
        omega = abs(m)
        cx = -np.sqrt(2.0) * (v_x / m) * r2 * np.exp(1j * sgn * th2)
        cy = -np.sqrt(2.0) * (v_y / abs(m)) * r2 * np.exp(1j * (sgn * th2 - np.pi / 2))
        comps = [(cx, omega), (cy, omega), (0.0, omega)]
        scale = np.sqrt(2.0) * r2 * max(abs(v_x), abs(v_y)) / abs(m)
        mag = r2
    else:
        r3, th3 = _polar(a * np.conj(c))
        omega = 2 * abs(m)
        cz = -(v_z / m) * r3 * np.exp(1j * sgn * th3)
        comps = [(0.0, omega), (0.0, omega), (cz, omega)]
        scale = r3 * abs(v_z) / abs(m)
        mag = r3
    if times is None:
        times = zb_time_grid(omega)
    meta = {
        "model": "chiral_closed_form",
        "params": {"v_x": v_x, "v_y": v_y, "v_z": v_z, "m": m},
        "spinor": _spinor_tag(spinor),
        "include_drift": False,
        "zb_scale": scale,
    }
    traj = _closed_traj(times, comps, [omega] if mag > 0 else [], meta)
    form = ZBClosedForm(
        amplitude=np.array([abs(cc) for cc, _ in comps]),
        phase=np.array([_polar(cc)[1] if cc != 0 else 0.0 for cc, _ in comps]),
        omega=omega,
    )
    return traj, form


def _unit_spinor(spinor, dim):
    coeffs = np.asarray(spinor, dtype=complex)
    if coeffs.shape != (dim,):
        raise ValueError(f"expected a {dim}-component spinor, got shape {coeffs.shape}")
    norm = float(np.linalg.norm(coeffs))
    if abs(norm - 1.0) > 1e-10:
        raise ValueError(f"spinor is not normalized: |coeffs| = {norm:.12g}")
    return coeffs


# ----------------------------------------------------------------------
# Gaussian packets
# ----------------------------------------------------------------------

def wavepacket_trajectory(model: BlochModel, packet: WavePacket, grid_spec=None,
                          times=None, include_drift: bool = True, *,
                          samples_per_period: int = 64, periods: int = 8) -> Trajectory:
    """Momentum-averaged trajectory of a Gaussian packet.

    Per-momentum expectations are weighted by the normalized Gaussian
    |g(k)|^2 ~ exp(-d^2 |k - k0|^2) on a uniform grid.  ``grid_spec`` is an
    optional (half_width, points_per_axis) pair; the default covers
    |k - k0| <= 5/d with enough points for eight samples inside two
    standard deviations per axis.  As d grows the result converges to
    :func:`pcm_trajectory_exact` at k0.
    """
    center = _check_center(model, packet.center)
    d = packet.width
    half_width, n_pts = _packet_grid(model, d, grid_spec)

    axes = [center[i] + np.linspace(-half_width, half_width, n_pts) for i in range(model.momentum_dim)]
    mesh = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, model.momentum_dim)
    weights = np.exp(-d * d * np.sum((mesh - center) ** 2, axis=1))
    weights /= weights.sum()

    fixed_psi = None
    band = None
    if isinstance(packet.spinor, (int, np.integer)):
        band = int(packet.spinor)
    else:
        fixed_psi = _resolve_spinor(model, packet.spinor)

    hams = evaluate(model, mesh)
    grads = gradient(model, mesh)
    all_omegas, all_amps = [], []
    drift = np.zeros(3)
    scale = 0.0
    for idx in range(mesh.shape[0]):
        if band is not None:
            psi = hermitian_eig(hams[idx]).states[:, band]
        else:
            psi = fixed_psi
        omegas, amps, dvec = _pair_data(hams[idx], grads[idx], psi)
        mask = _present_mask(amps)
        all_omegas.append(omegas[mask])
        all_amps.append(weights[idx] * amps[mask])
        drift += weights[idx] * dvec
        scale += weights[idx] * _amp_scale(omegas[mask], amps[mask])

    omegas = np.concatenate(all_omegas) if all_omegas else np.zeros(0)
    amps = np.concatenate(all_amps).reshape(-1, 3) if all_omegas else np.zeros((0, 3))
    if times is None:
        if omegas.size:
            times = zb_time_grid(np.abs(omegas).max(), np.abs(omegas).min(),
                                 samples_per_period, periods)
        else:
            times = zb_time_grid(1.0, samples_per_period=samples_per_period, periods=periods)
    times = _validate_sampling(times, omegas)
    pcm = _oscillation(times, omegas, amps)
    if include_drift:
        pcm = pcm + np.outer(times, drift)
    meta = {
        "model": model.name,
        "packet": {"width": d, "center": tuple(float(x) for x in center)},
        "spinor": _spinor_tag(packet.spinor),
        "include_drift": include_drift,
        "grid": {"half_width": half_width, "points": n_pts},
        "zb_scale": scale,
    }
    return Trajectory(times=times, pcm=pcm, metadata=meta)


def _check_center(model, center):
    center = np.atleast_1d(np.asarray(center, dtype=float))
    if center.shape != (model.momentum_dim,):
        raise ValueError(
            f"packet center has shape {center.shape}, model '{model.name}' "
            f"expects ({model.momentum_dim},)"
        )
    return center


def _packet_grid(model, d, grid_spec):
    if grid_spec is None:
        half_width, n_pts = 5.0 / d, None
    else:
        half_width, n_pts = grid_spec
    if model.momentum_cutoff is not None:
        half_width = min(half_width, model.momentum_cutoff)
    sigma = 1.0 / (np.sqrt(2.0) * d)
    if n_pts is None:
        # spacing <= sigma/2 gives >= 8 points inside |dk| <= 2 sigma
        n_pts = int(np.ceil(2 * half_width / (sigma / 2))) + 1
        if n_pts % 2 == 0:
            n_pts += 1
        n_pts = max(n_pts, 9)
    spacing = 2 * half_width / (n_pts - 1)
    if int(4 * sigma / spacing) + 1 < 8:
        raise ValueError(
            f"momentum grid too coarse: {int(4 * sigma / spacing) + 1} points per axis "
            "inside two standard deviations (need >= 8)"
        )
    return half_width, n_pts


# ----------------------------------------------------------------------
# trajectory analysis
# ----------------------------------------------------------------------

def _detrended(traj: Trajectory):
    """Mean-free signal; a fitted drift line is removed only when the
    trajectory carries one (fitting a line to a pure oscillation on a
    discrete grid would itself leak power into every bin)."""
    if traj.metadata.get("include_drift"):
        t = traj.times
        basis = np.stack([np.ones_like(t), t], axis=1)
        coef, *_ = np.linalg.lstsq(basis, traj.pcm, rcond=None)
        return traj.pcm - basis @ coef
    return traj.pcm - traj.pcm.mean(axis=0)


def rotation_index(traj: Trajectory, plane=(0, 1), scale: float | None = None) -> int:
    """Sense of rotation in a coordinate plane: +1 counterclockwise, -1 clockwise.

    The signed area integral (x dy - y dx)/2 is accumulated over an integer
    number of periods of the dominant oscillation (trapezoidal rule).
    Returns 0 when the peak oscillation amplitude is below 1e-9 of the
    expected amplitude scale (metadata ``zb_scale`` unless overridden).
    """
    times = _check_uniform(traj.times)
    clean = _detrended(traj)
    x = clean[:, plane[0]]
    y = clean[:, plane[1]]
    amp = float(np.max(np.hypot(x, y)))
    if scale is None:
        scale = traj.metadata.get("zb_scale") or 1.0
    if amp < 1e-9 * max(scale, AMPLITUDE_FLOOR):
        return 0

    power = np.abs(np.fft.rfft(x)) ** 2 + np.abs(np.fft.rfft(y)) ** 2
    power[0] = 0.0
    dom_bin = int(np.argmax(power))
    if dom_bin < 1 or power[dom_bin] == 0.0:
        return 0
    n = len(times)
    dt = times[1] - times[0]
    span = n * dt
    mags = np.sqrt(power)
    shift = 0.0
    if 1 <= dom_bin < len(mags) - 1:
        denom = mags[dom_bin - 1] - 2 * mags[dom_bin] + mags[dom_bin + 1]
        if denom != 0:
            shift = 0.5 * (mags[dom_bin - 1] - mags[dom_bin + 1]) / denom
    omega_dom = 2 * np.pi * (dom_bin + shift) / span
    full_periods = int(np.floor(span * omega_dom / (2 * np.pi)))
    if full_periods < 1:
        raise ValueError("trajectory spans less than one period of its dominant oscillation")
    n_window = min(n, max(2, int(round(full_periods * (2 * np.pi / omega_dom) / dt))))
    xs, ys = x[:n_window], y[:n_window]
    area = 0.5 * float(np.sum(xs * np.roll(ys, -1) - np.roll(xs, -1) * ys))
    if abs(area) < 1e-12 * np.pi * amp * amp * max(full_periods, 1):
        return 0
    return int(np.sign(area))


def zb_spectrum(traj: Trajectory) -> ZBSpectrum:
    """Per-component Fourier magnitude spectrum with interpolated peak list.

    The mean and any linear drift are removed before the transform.  Raises
    if the sampling is non-uniform or spans fewer than four cycles of the
    dominant oscillation.
    """
    times = _check_uniform(traj.times)
    clean = _detrended(traj)
    n = len(times)
    dt = times[1] - times[0]
    spec = np.fft.rfft(clean, axis=0)
    omegas = 2 * np.pi * np.fft.rfftfreq(n, d=dt)
    power = np.abs(spec) ** 2
    top = power.max()
    resolution = 2 * np.pi / (n * dt)
    if top == 0.0:
        return ZBSpectrum(omegas=omegas, power=power, peaks=(), resolution=resolution)
    power = power / top

    peaks = []
    for comp in range(power.shape[1]):
        p = power[:, comp]
        for b in range(1, len(p) - 1):
            if p[b] >= 1e-10 and p[b] > p[b - 1] and p[b] >= p[b + 1]:
                mag = np.sqrt(p[b - 1 : b + 2])
                denom = mag[0] - 2 * mag[1] + mag[2]
                shift = 0.5 * (mag[0] - mag[2]) / denom if denom != 0 else 0.0
                peaks.append(((b + shift) * resolution, float(p[b])))
    if peaks:
        dom = max(peaks, key=lambda pk: pk[1])
        if dom[0] / resolution < MIN_SPAN_PERIODS:
            raise ValueError(
                "sampling too short: fewer than four cycles of the dominant oscillation"
            )
    peaks = _merge_peaks(peaks, resolution)
    return ZBSpectrum(omegas=omegas, power=power, peaks=tuple(peaks), resolution=resolution)


def _merge_peaks(peaks, resolution):
    merged = []
    for freq, pw in sorted(peaks, key=lambda pk: -pk[1]):
        if all(abs(freq - f0) > resolution for f0, _ in merged):
            merged.append((float(freq), pw))
    return merged


@dataclass(frozen=True)
class SelectionRuleReport:
    """Outcome of the adjacent-pair frequency check for one spin value."""

    j: float
    mass: float
    trials: int
    max_spurious_power: float
    max_frequency_error: float
    passed: bool


def selection_rule_check(j, m: float, trials: int = 100, seed: int = 1234,
                         spurious_tol: float = 1e-10) -> SelectionRuleReport:
    """Verify that random spinors of a spin-j system oscillate only at |m|.

    For each trial the exact trajectory at p = 0 is transformed and every
    Fourier bin away from the |m| line is compared against the main peak;
    the worst relative power over all trials is reported.
    """
    if j > 3.5:
        raise ValueError("selection-rule check supports j <= 7/2")
    model = spin_j_continuum(j, 1.0, 1.0, m)
    omega = abs(m)
    times = zb_time_grid(omega)
    rng = np.random.default_rng(seed)
    origin = np.zeros(2)

    worst_power = 0.0
    worst_freq_err = 0.0
    ok = True
    dim = model.band_count
    for _ in range(trials):
        raw = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
        spinor = raw / np.linalg.norm(raw)
        traj = pcm_trajectory_exact(model, origin, spinor, times)
        spec = zb_spectrum(traj)
        if not spec.peaks:
            continue
        main_bin = int(round(omega / spec.resolution))
        freq, _ = max(spec.peaks, key=lambda pk: pk[1])
        worst_freq_err = max(worst_freq_err, abs(freq - omega))
        if abs(freq - omega) > spec.resolution:
            ok = False
        away = np.ones(spec.power.shape[0], dtype=bool)
        away[: 1] = False
        lo = max(0, main_bin - 2)
        away[lo : main_bin + 3] = False
        spurious = float(spec.power[away].max()) if away.any() else 0.0
        worst_power = max(worst_power, spurious)
    return SelectionRuleReport(
        j=float(j),
        mass=m,
        trials=trials,
        max_spurious_power=worst_power,
        max_frequency_error=worst_freq_err,
        passed=ok and worst_power < spurious_tol,
    )
