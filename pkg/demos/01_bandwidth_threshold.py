# Threshold bandwidth h0 for each kernel family, and what happens just above it.
import numpy as np

from modeseek import (KernelProfile, MeanShiftConfig, gen_two_gaussians, hessian_rank_diagnostic,
                      run_all, solve_h0, xmax_norm)
from modeseek.bandwidth import phi

profiles = [
    KernelProfile.gaussian(),
    KernelProfile.laplace(1.0),
    KernelProfile.stretched(1.0, 0.7),
    KernelProfile.stretched(1.0, 0.4),
    KernelProfile.cauchy(P=0.5),
    KernelProfile.cauchy(P=1.2),
]

# phi(q) = -2 q k''/k'; the sufficient condition is phi(q) < 1 with q = 4 R^2 / h^2
qs = np.array([1e-4, 1e-2, 1.0, 1e2])
print("phi(q) at q =", qs)
for p in profiles:
    print(f"  {str(p):18s}", np.round(phi(p, qs), 4))

R = 1.0
print("\nclassification at R = 1")
for p in profiles:
    rep = solve_h0(p, R)
    h0 = "-" if rep.h0 is None else f"{rep.h0:.6f}"
    print(f"  {str(p):18s} {rep.classification.value:22s} h0 = {h0}")

# Gaussian: h0 = 2R exactly. Run just above it and inspect the Hessian at every mode.
ds = gen_two_gaussians(60, 3.0, 0.5, rng_seed=11)
R = xmax_norm(ds.points)
rep = solve_h0(KernelProfile.gaussian(), R)
h = rep.h0 * 1.01
res = run_all(ds.points, KernelProfile.gaussian(), MeanShiftConfig(h=h, merge_tol=1e-4))
print(f"\ntwo blobs, R = {R:.4f}, h0 = {rep.h0:.4f}, h = {h:.4f}: K = {res.K}, "
      f"mean iterations {res.iterations.mean():.1f}")
for m in res.merged_modes:
    d = hessian_rank_diagnostic(ds.points, KernelProfile.gaussian(), h, m)
    print("  mode", np.round(m, 4), "eigenvalues", d.eigenvalues, "certificate", d.certificate)

# below the threshold the certificate is not promised; a narrow bandwidth finds both blobs
h = 0.2 * rep.h0
res = run_all(ds.points, KernelProfile.gaussian(), MeanShiftConfig(h=h, merge_tol=1e-3))
print(f"h = {h:.4f}: K = {res.K}")
for m in res.merged_modes:
    d = hessian_rank_diagnostic(ds.points, KernelProfile.gaussian(), h, m)
    print("  mode", np.round(m, 4), "certificate", d.certificate, "min |eig|", f"{d.min_abs_eigenvalue:.3e}")
