import numpy as np
import pytest

from zbtopo import (
    GaplessError,
    Trajectory,
    WavePacket,
    chiral_ti_3d,
    closed_form_chiral,
    closed_form_spin1,
    maxwell_lattice,
    pcm_trajectory_exact,
    rotation_index,
    selection_rule_check,
    spin_j_continuum,
    wavepacket_trajectory,
    zb_spectrum,
    zb_time_grid,
)

SQ2 = np.sqrt(2.0)
ORIGIN2 = np.zeros(2)
ORIGIN3 = np.zeros(3)


def random_spinor(rng, dim):
    raw = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return raw / np.linalg.norm(raw)


# ---------------------------------------------------------------- exact route

def test_eigenstate_gives_zero_oscillation():
    model = maxwell_lattice(1.0, 1.0)
    traj = pcm_trajectory_exact(model, ORIGIN2, 0, zb_time_grid(2.0))
    assert np.max(np.abs(traj.pcm)) == 0.0
    assert rotation_index(traj) == 0


def test_exact_matches_spin1_closed_form():
    model = maxwell_lattice(1.0, 1.0)  # m = -2, v = 2 at the origin
    spinor = np.array([1.0, 1.0, 0.0]) / SQ2
    times = zb_time_grid(2.0)
    exact = pcm_trajectory_exact(model, ORIGIN2, spinor, times)
    closed, form = closed_form_spin1(2.0, 2.0, -2.0, spinor, times)
    assert np.max(np.abs(exact.pcm - closed.pcm)) < 1e-10
    assert abs(form.omega - 2.0) < 1e-10


def test_spin_half_amplitude_and_single_frequency():
    # (1,1)/sqrt2 at p = 0: x oscillates with amplitude v_x/(2|m|) at |m|
    model = spin_j_continuum(0.5, 1.0, 1.0, 1.0)
    spinor = np.array([1.0, 1.0]) / SQ2
    traj = pcm_trajectory_exact(model, ORIGIN2, spinor, zb_time_grid(1.0))
    assert abs(np.max(np.abs(traj.pcm[:, 0])) - 0.5) < 1e-10
    peaks = zb_spectrum(traj).peaks
    assert len(peaks) == 1
    assert abs(peaks[0][0] - 1.0) < 1e-6


def test_exact_rejects_unnormalized_spinor():
    model = maxwell_lattice(1.0, 1.0)
    with pytest.raises(ValueError, match="not normalized"):
        pcm_trajectory_exact(model, ORIGIN2, np.array([1.0, 1.0, 0.0]), zb_time_grid(2.0))


def test_exact_rejects_undersampled_times():
    model = maxwell_lattice(1.0, 1.0)
    spinor = np.array([1.0, 1.0, 0.0]) / SQ2
    coarse = np.linspace(0.0, 50.0, 8)  # far fewer than 4 samples per period
    with pytest.raises(ValueError, match="undersamples"):
        pcm_trajectory_exact(model, ORIGIN2, spinor, coarse)
    short = zb_time_grid(2.0)[:32]  # half a period
    with pytest.raises(ValueError, match="fewer than"):
        pcm_trajectory_exact(model, ORIGIN2, spinor, short)


# ---------------------------------------------------------------- closed forms

def test_spin1_no_middle_component_means_no_oscillation():
    traj, form = closed_form_spin1(2.0, 2.0, -2.0, np.array([0.6, 0.0, 0.8]), zb_time_grid(2.0))
    assert np.max(np.abs(traj.pcm)) == 0.0
    assert np.max(form.amplitude) == 0.0


def test_spin1_reference_values():
    # (a,b,c) = (1,1,0)/sqrt2, v = 2, m = -2: R = sqrt2/2, I = 0, theta = 0,
    # so <x> = (sqrt2/2) sin(2t) and <y> = +(sqrt2/2) cos(2t) (sign -sgn(m))
    spinor = np.array([1.0, 1.0, 0.0]) / SQ2
    times = zb_time_grid(2.0)
    traj, form = closed_form_spin1(2.0, 2.0, -2.0, spinor, times)
    assert np.allclose(traj.pcm[:, 0], (SQ2 / 2) * np.sin(2 * times), atol=1e-12)
    assert np.allclose(traj.pcm[:, 1], (SQ2 / 2) * np.cos(2 * times), atol=1e-12)
    assert np.allclose(np.abs(form.amplitude[:2]), SQ2 / 2, atol=1e-12)
    assert np.max(np.abs(traj.pcm[:, 2])) == 0.0


def test_spin1_gapless_rejected():
    with pytest.raises(GaplessError):
        closed_form_spin1(1.0, 1.0, 0.0, np.array([1.0, 0.0, 0.0]))


def test_spin1_reversal_identity():
    rng = np.random.default_rng(21)
    times = zb_time_grid(2.0)
    for _ in range(100):
        spinor = random_spinor(rng, 3)
        fwd, _ = closed_form_spin1(2.0, 2.0, 2.0, spinor, times)
        rev, _ = closed_form_spin1(2.0, 2.0, -2.0, spinor, -times[::-1])
        assert np.max(np.abs(rev.pcm[::-1] + fwd.pcm)) < 1e-10


def test_rotation_flips_under_mass_sign():
    rng = np.random.default_rng(22)
    times = zb_time_grid(1.5)
    flips = 0
    for _ in range(50):
        spinor = random_spinor(rng, 3)
        plus, _ = closed_form_spin1(1.0, 1.0, 1.5, spinor, times)
        minus, _ = closed_form_spin1(1.0, 1.0, -1.5, spinor, times)
        a, b = rotation_index(plus), rotation_index(minus)
        if a != 0 or b != 0:
            assert a == -b
            flips += 1
    assert flips > 40  # generic spinors do oscillate


def test_chiral_eigenstate_zero():
    traj, _ = closed_form_chiral(1.0, 1.0, 1.0, 1.0, np.array([1.0, 0.0, 0.0]))
    assert np.max(np.abs(traj.pcm)) == 0.0


def test_chiral_in_plane_reference():
    spinor = np.array([1.0, 1.0, 0.0]) / SQ2
    times = zb_time_grid(1.0)
    traj, form = closed_form_chiral(1.0, 1.0, 1.0, 1.0, spinor, times)
    assert np.allclose(traj.pcm[:, 0], -(SQ2 / 2) * np.cos(times), atol=1e-12)
    assert np.max(np.abs(traj.pcm[:, 2])) == 0.0
    assert abs(form.omega - 1.0) < 1e-12


def test_chiral_axial_reference():
    spinor = np.array([1.0, 0.0, 1.0]) / SQ2
    times = zb_time_grid(2.0)
    traj, form = closed_form_chiral(1.0, 1.0, 1.0, 1.0, spinor, times)
    assert np.allclose(traj.pcm[:, 2], -0.5 * np.cos(2 * times), atol=1e-12)
    assert np.max(np.abs(traj.pcm[:, :2])) == 0.0
    assert abs(form.omega - 2.0) < 1e-12


def test_chiral_mixed_branch_rejected():
    spinor = np.array([0.6, 0.6, np.sqrt(1.0 - 0.72)])
    with pytest.raises(ValueError, match="branch"):
        closed_form_chiral(1.0, 1.0, 1.0, 1.0, spinor)


def test_chiral_gapless_rejected():
    with pytest.raises(GaplessError):
        closed_form_chiral(1.0, 1.0, 1.0, 0.0, np.array([1.0, 0.0, 0.0]))


@pytest.mark.parametrize("mass,model_m", [(-2.0, 1.0), (2.0, 3.0)])
def test_oracle_equivalence_spin1(mass, model_m):
    model = maxwell_lattice(1.0, model_m)
    rng = np.random.default_rng(int(10 + mass))
    times = zb_time_grid(abs(mass))
    for _ in range(50):
        spinor = random_spinor(rng, 3)
        closed, _ = closed_form_spin1(2.0, 2.0, mass, spinor, times)
        exact = pcm_trajectory_exact(model, ORIGIN2, spinor, times)
        assert np.max(np.abs(closed.pcm - exact.pcm)) < 1e-8


@pytest.mark.parametrize("branch", ["in_plane", "axial"])
def test_oracle_equivalence_chiral(branch):
    mass = -1.0
    model = chiral_ti_3d(2.0)
    rng = np.random.default_rng(33)
    omega = abs(mass) if branch == "in_plane" else 2 * abs(mass)
    times = zb_time_grid(omega, omega)
    for _ in range(50):
        pair = random_spinor(rng, 2)
        if branch == "in_plane":
            spinor = np.array([pair[0], pair[1], 0.0])
        else:
            spinor = np.array([pair[0], 0.0, pair[1]])
        closed, _ = closed_form_chiral(1.0, 1.0, 1.0, mass, spinor, times)
        exact = pcm_trajectory_exact(model, ORIGIN3, spinor, times)
        assert np.max(np.abs(closed.pcm - exact.pcm)) < 1e-8


# ---------------------------------------------------------------- packets

def test_packet_wide_limit_matches_point_trajectory():
    model = maxwell_lattice(1.0, 1.0)
    spinor = np.array([1.0, 1.0, 0.0]) / SQ2
    packet = WavePacket(width=1000.0, center=ORIGIN2, spinor=spinor)
    traj = wavepacket_trajectory(model, packet)
    point = pcm_trajectory_exact(model, ORIGIN2, spinor, traj.times)
    rel = np.max(np.abs(traj.pcm - point.pcm)) / np.max(np.abs(point.pcm))
    assert rel < 1e-4


def test_packet_finite_width_decays_within_envelope():
    model = maxwell_lattice(1.0, 1.9)
    spinor = np.array([1.0, 1.0, 0.0]) / SQ2
    packet = WavePacket(width=20.0, center=ORIGIN2, spinor=spinor)
    traj = wavepacket_trajectory(model, packet)

    # the oscillating part (drift removed) dephases as the packet spreads
    basis = np.stack([np.ones_like(traj.times), traj.times], axis=1)
    coef, *_ = np.linalg.lstsq(basis, traj.pcm, rcond=None)
    osc = traj.pcm - basis @ coef
    radius = np.hypot(osc[:, 0], osc[:, 1])
    quarter = len(radius) // 4
    assert radius[-quarter:].max() < 0.8 * radius[:quarter].max()

    # pointwise bound: ideal point amplitude plus the worst group-velocity drift
    _, form = closed_form_spin1(2.0, 2.0, 2 * (1.9 - 2.0), spinor, traj.times)
    ideal = np.hypot(form.amplitude[0], form.amplitude[1])
    from zbtopo.models import decompose

    half, npts = traj.metadata["grid"]["half_width"], traj.metadata["grid"]["points"]
    axes = np.linspace(-half, half, npts)
    vmax = max(
        np.max(np.abs(decompose(model, np.array([kx, ky])).group_velocities))
        for kx in axes[:: npts // 4]
        for ky in axes[:: npts // 4]
    )
    total = np.linalg.norm(traj.pcm, axis=1)
    assert np.all(total <= ideal + traj.times * vmax + 1e-9)


def test_packet_eigenstate_is_pure_drift():
    model = maxwell_lattice(1.0, 1.0)
    packet = WavePacket(width=20.0, center=np.array([0.3, 0.1]), spinor=0)
    traj = wavepacket_trajectory(model, packet)
    # pure drift: r(t) exactly linear in t
    slope = traj.pcm[-1] / traj.times[-1]
    assert np.max(np.abs(traj.pcm - np.outer(traj.times, slope))) < 1e-12


def test_packet_grid_too_coarse_rejected():
    model = maxwell_lattice(1.0, 1.0)
    packet = WavePacket(width=20.0, center=ORIGIN2, spinor=0)
    with pytest.raises(ValueError, match="too coarse"):
        wavepacket_trajectory(model, packet, grid_spec=(0.25, 5))


def test_packet_width_must_be_positive():
    with pytest.raises(ValueError, match="width"):
        WavePacket(width=0.0, center=ORIGIN2, spinor=0)


@pytest.mark.parametrize("m_param,expected", [(3.0, 1), (1.0, -1)])
def test_packet_rotation_signs(m_param, expected):
    model = maxwell_lattice(1.0, m_param)
    spinor = np.array([1.0, 1.0, 0.0]) / SQ2
    packet = WavePacket(width=20.0, center=ORIGIN2, spinor=spinor)
    assert rotation_index(wavepacket_trajectory(model, packet)) == expected


# ---------------------------------------------------------------- analysis

def test_rotation_index_circles():
    t = np.linspace(0.0, 8 * np.pi, 512, endpoint=False)
    ccw = np.stack([np.cos(t), np.sin(t), np.zeros_like(t)], axis=1)
    cw = np.stack([np.cos(t), -np.sin(t), np.zeros_like(t)], axis=1)
    assert rotation_index(Trajectory(t, ccw)) == 1
    assert rotation_index(Trajectory(t, cw)) == -1


def test_rotation_index_amplitude_floor():
    t = np.linspace(0.0, 8 * np.pi, 512, endpoint=False)
    tiny = 1e-13 * np.stack([np.cos(t), np.sin(t), np.zeros_like(t)], axis=1)
    assert rotation_index(Trajectory(t, tiny, {"zb_scale": 1.0})) == 0


def test_rotation_index_needs_uniform_grid():
    t = np.linspace(0.0, 8 * np.pi, 512, endpoint=False).copy()
    t[100] += 0.01
    pcm = np.stack([np.cos(t), np.sin(t), np.zeros_like(t)], axis=1)
    with pytest.raises(ValueError, match="non-uniform"):
        rotation_index(Trajectory(t, pcm))


def test_spectrum_pure_tone():
    times = zb_time_grid(2.0)
    pcm = np.zeros((len(times), 3))
    pcm[:, 0] = np.cos(2.0 * times)
    spec = zb_spectrum(Trajectory(times, pcm))
    assert len(spec.peaks) == 1
    freq, power = spec.peaks[0]
    assert abs(freq - 2.0) <= spec.resolution
    assert power == 1.0


def test_spectrum_too_short_rejected():
    t = np.linspace(0.0, 2 * np.pi, 256, endpoint=False)  # 2 cycles of omega=2
    pcm = np.zeros((len(t), 3))
    pcm[:, 0] = np.cos(2.0 * t)
    with pytest.raises(ValueError, match="too short"):
        zb_spectrum(Trajectory(t, pcm))


def test_spectrum_spin_five_half_single_line():
    model = spin_j_continuum(2.5, 1.0, 1.0, 1.0)
    rng = np.random.default_rng(3)
    traj = pcm_trajectory_exact(model, ORIGIN2, random_spinor(rng, 6), zb_time_grid(1.0))
    spec = zb_spectrum(traj)
    assert len(spec.peaks) == 1
    assert abs(spec.peaks[0][0] - 1.0) <= spec.resolution
    # non-adjacent content: everything over a bin away from the line
    main_bin = int(round(1.0 / spec.resolution))
    mask = np.ones(spec.power.shape[0], dtype=bool)
    mask[0] = False
    mask[main_bin - 2 : main_bin + 3] = False
    assert spec.power[mask].max() < 1e-10


def test_spectrum_chiral_axial_at_twice_the_gap():
    traj, _ = closed_form_chiral(1.0, 1.0, 1.0, 1.0, np.array([1.0, 0.0, 1.0]) / SQ2,
                                 zb_time_grid(2.0, 2.0))
    spec = zb_spectrum(traj)
    assert len(spec.peaks) == 1
    assert abs(spec.peaks[0][0] - 2.0) <= spec.resolution


@pytest.mark.parametrize("j", [1.0, 2.0])
def test_selection_rule_check(j):
    report = selection_rule_check(j, 1.0, trials=100, seed=555)
    assert report.passed
    assert report.max_spurious_power < 1e-10


def test_selection_rule_spin_cap():
    with pytest.raises(ValueError, match="7/2"):
        selection_rule_check(4.0, 1.0)


def test_amplitude_inverse_gap_scaling():
    spinor = np.array([1.0, 1.0, 0.0]) / SQ2
    masses = np.array([0.5, 1.0, 2.0, 4.0])
    amps = []
    for m in masses:
        traj, _ = closed_form_spin1(1.0, 1.0, m, spinor, zb_time_grid(m))
        amps.append(np.max(np.hypot(traj.pcm[:, 0], traj.pcm[:, 1])))
    exponent = np.polyfit(np.log(masses), np.log(amps), 1)[0]
    assert abs(exponent + 1.0) <= 0.01


def test_frequency_equals_adjacent_gap():
    rng = np.random.default_rng(8)
    for j in (0.5, 1.0, 1.5):
        model = spin_j_continuum(j, 1.0, 1.0, 1.3)
        traj = pcm_trajectory_exact(
            model, ORIGIN2, random_spinor(rng, model.band_count), zb_time_grid(1.3)
        )
        spec = zb_spectrum(traj)
        freq = max(spec.peaks, key=lambda p: p[1])[0]
        assert abs(freq - 1.3) <= spec.resolution


def test_exact_reversal_identity_at_inversion_point():
    model_plus = maxwell_lattice(1.0, 3.0)   # m = +2
    model_minus = maxwell_lattice(1.0, 1.0)  # m = -2
    rng = np.random.default_rng(13)
    times = zb_time_grid(2.0)
    for _ in range(20):
        spinor = random_spinor(rng, 3)
        fwd = pcm_trajectory_exact(model_plus, ORIGIN2, spinor, times)
        rev = pcm_trajectory_exact(model_minus, ORIGIN2, spinor, -times[::-1])
        assert np.max(np.abs(rev.pcm[::-1] + fwd.pcm)) < 1e-10
