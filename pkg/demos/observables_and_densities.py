"""Reducing observables and density matrices, not just states.

A state prepared inside the dressed slow sector never sees the off-diagonal
blocks: expectation values of any observable computed from the 2x2 reduction
match the exact 3x3 ones at machine precision. A bare slow state is close to
but not inside that sector, so its reduced expectations track only up to the
dressed-fast weight it carries.
"""

import pathlib

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

import blochwave as bw

OUT = pathlib.Path(__file__).resolve().parent.parent / "demo_output"
OUT.mkdir(exist_ok=True)

h = bw.lambda_hamiltonian(bw.lambda_benchmark())
full = bw.assemble(h)
b = bw.fixed_point(h, tol=1e-13)
model = bw.build_model(b, h)
p = h.p

px = bw.dressed_projector(model.x, p)
print(f"dressed projector: rank {np.trace(px).real:.0f}, "
      f"[H, P_X] = {np.linalg.norm(full @ px - px @ full, 2):.2e}")

# observable: population of the eliminated excited state
a_fast = np.diag([0.0, 0.0, 1.0]).astype(complex)
a_eff = bw.effective_observable(a_fast, model.x, p)
print("reduced excited-state population operator:")
print(np.array_str(a_eff, precision=5, suppress_small=True))

times = np.linspace(0.0, 200.0, 1200)
eta0 = np.array([1.0, 0.0], dtype=complex)

# dressed preparation: lift eta0 through X, evolve both pictures
psi0 = model.x @ np.concatenate([eta0, [0.0]])
exact = bw.propagate_exact(full, psi0, times)
eta = bw.propagate_effective(model.h_alpha, eta0, times)
full_expect = np.einsum("it,ij,jt->t", exact.amplitudes.conj(), a_fast,
                        exact.amplitudes).real
red_expect = np.einsum("it,ij,jt->t", eta.amplitudes.conj(), a_eff,
                       eta.amplitudes).real
print(f"dressed preparation: max deviation {np.max(np.abs(full_expect - red_expect)):.2e}")

# bare preparation: same comparison, now limited by the sector mismatch
psi0_bare = np.array([1.0, 0.0, 0.0], dtype=complex)
exact_bare = bw.propagate_exact(full, psi0_bare, times)
eta0_bare = (model.x.conj().T @ psi0_bare)[:p]
eta_bare = bw.propagate_effective(model.h_alpha, eta0_bare / np.linalg.norm(eta0_bare), times)
full_b = np.einsum("it,ij,jt->t", exact_bare.amplitudes.conj(), a_fast,
                   exact_bare.amplitudes).real
red_b = np.einsum("it,ij,jt->t", eta_bare.amplitudes.conj(), a_eff,
                  eta_bare.amplitudes).real
print(f"bare preparation:    max deviation {np.max(np.abs(full_b - red_b)):.2e}")

fig, (ax1, ax2) = plt.subplots(2, 1, figsize=(9, 6.5), sharex=True)
ax1.plot(times, full_expect, "k-", lw=0.8, label="exact")
ax1.plot(times, red_expect, "--", lw=0.9, label="reduced")
ax1.set_ylabel("excited population (dressed prep)")
ax1.legend(fontsize=8)
ax2.plot(times, full_b, "k-", lw=0.8, label="exact")
ax2.plot(times, red_b, "--", lw=0.9, label="reduced")
ax2.set_ylabel("excited population (bare prep)")
ax2.set_xlabel("time")
ax2.legend(fontsize=8)
fig.tight_layout()
fig.savefig(OUT / "observable_reduction.png", dpi=120)

# density route: rho_eff of an exactly evolved pure slow state stays pure
psi_slow = np.array([0.6, 0.8j, 0.0], dtype=complex)
rho0 = np.outer(psi_slow, psi_slow.conj())
traj = bw.propagate_exact(full, psi_slow, times[:300])
purity, mismatch = [], []
eta0_d = (model.x.conj().T @ psi_slow)[:p]
eta0_d = eta0_d / np.linalg.norm(eta0_d)
eta_d = bw.propagate_effective(model.h_alpha, eta0_d, times[:300])
for j in range(300):
    psi_t = traj.amplitudes[:, j]
    reff = bw.effective_density(np.outer(psi_t, psi_t.conj()), rho0, model.x, p)
    purity.append(float(np.trace(reff @ reff).real))
    pure = np.outer(eta_d.amplitudes[:, j], eta_d.amplitudes[:, j].conj())
    mismatch.append(float(np.linalg.norm(reff - pure, 2)))
print(f"reduced density: purity stays within {max(abs(1 - u) for u in purity):.2e} of 1, "
      f"pure-evolution mismatch {max(mismatch):.2e}")

fig2, ax = plt.subplots(figsize=(8, 3.4))
ax.semilogy(times[:300], mismatch, lw=0.8)
ax.set_xlabel("time")
ax.set_ylabel("|| rho_eff - pure ||")
fig2.tight_layout()
fig2.savefig(OUT / "density_reduction.png", dpi=120)
print(f"figures in {OUT}")
