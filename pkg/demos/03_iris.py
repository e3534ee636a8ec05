# Iris at h = 10 max ||x_i|| after z-scoring.
# Data: a CSV with four feature columns and an integer label column. Point
# MODESEEK_IRIS_CSV at it, or have scikit-learn installed to use its copy.
import os
import sys
import tempfile
from pathlib import Path

from modeseek import KernelProfile, MeanShiftConfig, evaluate, load_csv, run_all, xmax_norm, zscore

path = os.environ.get("MODESEEK_IRIS_CSV")
if path is None:
    try:
        from sklearn.datasets import load_iris
    except ImportError:
        sys.exit("set MODESEEK_IRIS_CSV=/path/to/iris.csv (features..., label)")
    iris = load_iris()
    path = Path(tempfile.mkdtemp()) / "iris.csv"
    rows = [",".join(map(repr, map(float, r))) + f",{t}" for r, t in zip(iris.data, iris.target)]
    path.write_text("sl,sw,pl,pw,label\n" + "\n".join(rows) + "\n")

ds = zscore(load_csv(path, label_column=True))
h = 10 * xmax_norm(ds.points)
print(f"n = {ds.n}, d = {ds.d}, R = {xmax_norm(ds.points):.6f}, h = {h:.4f}")

for prof in (KernelProfile.gaussian(), KernelProfile.laplace(1.0), KernelProfile.cauchy(P=1.99)):
    res = run_all(ds.points, prof, MeanShiftConfig(h=h, merge_tol=0.05))
    ev = evaluate(res.assignment, ds.labels)
    print(f"\n{prof}: K = {res.K}, ARI = {ev.ari:.4f}, accuracy = {ev.accuracy:.4f}, CvM = {ev.cvm:.4f}")
    print("  sizes", sorted(res.cluster_sizes, reverse=True))
    print("  contingency (rows = clusters, cols = species)")
    for row in ev.contingency:
        print("   ", row)
