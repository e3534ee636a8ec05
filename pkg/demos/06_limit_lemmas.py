# First mean-shift iterate from a data point as h grows.
# Finite g(0): it tends to the plain mean of all points.
# g(r) ~ r^-beta at 0: it tends to an inverse-distance-power mean of the other points.
import numpy as np

from modeseek import KernelProfile, MeanShiftConfig, ms_step, predict_first_iterate_limit

pts = np.array([[0.0, 0.0], [1.0, 0.0], [3.0, 1.0], [0.5, 2.0]])
seed = 0

for prof in (KernelProfile.gaussian(), KernelProfile.laplace(1.0), KernelProfile.stretched(1.0, 0.7),
             KernelProfile.cauchy(P=1.2), KernelProfile.cauchy(P=1.99)):
    pred = predict_first_iterate_limit(pts, prof, seed)
    print(f"{prof}: {pred.kind.value}, p = {pred.p}, limit {np.round(pred.point, 6)}")
    for h in (1e1, 1e3, 1e6, 1e9):
        y = ms_step(pts, prof, MeanShiftConfig(h=h, eps_q=1e-300), pts[seed], seed)
        print(f"    h = {h:.0e}  distance to limit {np.linalg.norm(y - pred.point):.3e}")

# cauchy:1.99 has beta = 0.995, so the weights approach the power law only like h^-0.01
