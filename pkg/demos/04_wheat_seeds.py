# UCI Wheat Seeds (n = 210, 7 features, 3 classes), z-scored and projected onto
# the first two principal axes, then mean shift at h = 10 max ||x_i||.
#
#   python demos/04_wheat_seeds.py seeds_dataset.txt
#
# The UCI file is whitespace separated with the class (1..3) in the last column.
import sys

import numpy as np

from modeseek import Dataset, KernelProfile, MeanShiftConfig, evaluate, pca2, run_all, xmax_norm, zscore

if len(sys.argv) != 2:
    sys.exit("usage: python demos/04_wheat_seeds.py seeds_dataset.txt")

raw = np.loadtxt(sys.argv[1])
ds = pca2(zscore(Dataset(raw[:, :-1], raw[:, -1].astype(int), provenance=sys.argv[1])))
h = 10 * xmax_norm(ds.points)
print(f"n = {ds.n}, h = {h:.4f}")

for prof in (KernelProfile.gaussian(), KernelProfile.cauchy(P=1.99)):
    res = run_all(ds.points, prof, MeanShiftConfig(h=h, merge_tol=0.05))
    ev = evaluate(res.assignment, ds.labels)
    print(f"\n{prof}: K = {res.K}, ARI = {ev.ari:.4f}, accuracy = {ev.accuracy:.4f}, CvM = {ev.cvm:.4f}")
    print("  sizes", sorted(res.cluster_sizes, reverse=True))
