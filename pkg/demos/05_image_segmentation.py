# Grayscale segmentation: pixels become (row, col, intensity) points, mean shift
# runs with a 300-nearest-neighbour restriction, and the darkest modes form the mask.
#
#   python demos/05_image_segmentation.py [image.pgm] [mask.pgm]
#
# Without arguments a synthetic dark disk on a light field is used.
import sys
import time

import numpy as np

from modeseek import GrayImage, KernelProfile, load_pgm, segment, write_pgm

if len(sys.argv) > 1:
    img = load_pgm(sys.argv[1])
    truth = None
else:
    yy, xx = np.indices((32, 32))
    truth = (yy - 14) ** 2 + (xx - 18) ** 2 <= 8**2
    img = GrayImage.from_array(np.where(truth, 60, 210))

t0 = time.perf_counter()
seg = segment(img, KernelProfile.cauchy(P=1.99), h_mult=10, knn=300, dark_quantile=0.35)
print(f"{img.width}x{img.height} image, {time.perf_counter() - t0:.2f}s")
print(f"median NN distance {seg.median_nn:.4f}, merge tol {seg.config.merge_tol:.4f}, K = {seg.result.K}")
print("mode intensities", np.round(seg.mode_intensity, 1))
print(f"threshold {seg.threshold:.1f}, foreground pixels {seg.mask.sum()}")
if truth is not None:
    print(f"IoU against the disk: {(seg.mask & truth).sum() / (seg.mask | truth).sum():.3f}")

# coarse text rendering of the mask
for row in seg.mask[:: max(1, img.height // 24)]:
    print("".join("#" if v else "." for v in row[:: max(1, img.width // 48)]))

if len(sys.argv) > 2:
    write_pgm(seg.mask, sys.argv[2])
