"""A priori diagnostics against observed fixed-point behaviour.

eps = ||delta^-1|| ||omega|| and eps' = ||delta^-1|| ||Omega|| decide whether
the iteration is guaranteed to contract: eps' <= (1 - eps)/2 with eps < 1.
Scanning the coupling strength shows the guarantee is conservative; the
iteration keeps converging some way past the boundary, then stops.
"""

import pathlib
import warnings

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

import blochwave as bw

OUT = pathlib.Path(__file__).resolve().parent.parent / "demo_output"
OUT.mkdir(exist_ok=True)

base = bw.lambda_benchmark()
d = bw.diagnostics(bw.lambda_hamiltonian(base))
print(f"benchmark: eps = {d.eps}, eps' = {d.eps_prime}, a = {d.a_ratio:.2f}")
print(f"guaranteed ball radii: fixed point within {d.ball_radius_min:.4f}, "
      f"uniqueness out to {d.ball_radius:.4f}")

scales = np.linspace(0.2, 6.0, 40)
eps_primes, iters, residuals = [], [], []
for s in scales:
    p = bw.LambdaParams(base.delta, s * 0.4, s * 0.3, base.big_delta)
    hs = bw.lambda_hamiltonian(p)
    eps_primes.append(bw.diagnostics(hs).eps_prime)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)  # expected past the boundary
        try:
            b = bw.fixed_point(hs, max_iter=400, tol=1e-11)
            iters.append(b.order)
            residuals.append(b.residual)
        except bw.NotConverged as exc:
            iters.append(np.nan)
            residuals.append(exc.last_residual)

boundary = 0.5 * (1.0 - d.eps)  # eps barely moves in this scan
fig, (ax1, ax2) = plt.subplots(2, 1, figsize=(8, 7), sharex=True)
ax1.plot(eps_primes, iters, "o-", ms=3)
ax1.axvline(boundary, color="r", ls="--", lw=0.8, label="guarantee boundary")
ax1.set_ylabel("iterations to residual 1e-11")
ax1.legend()
ax2.semilogy(eps_primes, residuals, "o-", ms=3)
ax2.axvline(boundary, color="r", ls="--", lw=0.8)
ax2.set_xlabel("eps'")
ax2.set_ylabel("final residual")
fig.suptitle("convergence of the iteration vs the a priori guarantee")
fig.tight_layout()
fig.savefig(OUT / "convergence_scan.png", dpi=120)

# per-iteration residual history on the benchmark: plain geometric decay
h = bw.lambda_hamiltonian(base)
history = [bw.iterate(h, k).residual for k in range(12)]
fig2, ax = plt.subplots(figsize=(6, 4))
ax.semilogy(range(12), history, "o-")
ax.set_xlabel("iteration k")
ax.set_ylabel("residual of B^(k)")
fig2.tight_layout()
fig2.savefig(OUT / "residual_history.png", dpi=120)

ratios = [history[k + 1] / history[k] for k in range(len(history) - 1)]
print(f"residual contraction factor settles near {ratios[-1]:.4f}")
print(f"figures in {OUT}")
