"""Finite-width packets decay and drift, but keep their rotation sense.

A Gaussian packet of width d averages the point trajectories over a
momentum window of size ~1/d.  Close to a transition the gap varies
across that window, so the components dephase: the oscillation decays
and a slow drift appears.  The sense of rotation, which is what encodes
the local topology, is untouched.
"""

import numpy as np

from zbtopo import WavePacket, maxwell_lattice, rotation_index, wavepacket_trajectory

spinor = np.array([1.0, 1.0, 0.0]) / np.sqrt(2.0)

print("packets at k0 = (0,0) near the M = 2 transition:")
print(f"{'M':>4} {'width':>6} | {'first-quarter amp':>17} {'last-quarter amp':>16} | sense")
for M in (1.9, 2.1):
    for width in (20.0, 1000.0):
        model = maxwell_lattice(1.0, M)
        packet = WavePacket(width=width, center=np.zeros(2), spinor=spinor)
        traj = wavepacket_trajectory(model, packet)

        t = traj.times
        basis = np.stack([np.ones_like(t), t], axis=1)
        coef, *_ = np.linalg.lstsq(basis, traj.pcm, rcond=None)
        osc = traj.pcm - basis @ coef
        radius = np.hypot(osc[:, 0], osc[:, 1])
        quarter = len(radius) // 4
        early, late = radius[:quarter].max(), radius[-quarter:].max()
        drift = np.linalg.norm(coef[1, :2])
        sense = rotation_index(traj)
        print(
            f"{M:>4.1f} {width:>6.0f} | {early:>17.3f} {late:>16.3f} | {sense:+d}"
            f"   (drift speed {drift:.3f})"
        )

print(
    "\nThe d = 20 packet loses amplitude within the run and drifts slightly;"
    "\nthe d = 1000 packet is indistinguishable from the point trajectory."
    "\nEither way the rotation sense matches sgn(M - 2)."
)
