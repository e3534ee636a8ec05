"""Mean-shift mode seeking with completely monotone kernel profiles."""

__version__ = "0.1.0"

from .asymptotics import LimitKind, LimitPrediction, cm_exponent_bound_check, predict_first_iterate_limit
from .bandwidth import BandwidthReport, Classification, phi, solve_h0
from .data import Dataset, GrayImage, gen_two_gaussians, image_features, load_csv, load_pgm, pca2, write_csv, write_pgm, zscore
from .density import DensityEval, hessian_rank_diagnostic, kde, kde_gradient, kde_hessian
from .evaluation import ClusterSizeDist, EvalReport, adjusted_rand_index, cvm_distance, evaluate, many_to_one_accuracy
from .linalg import jacobi_eigh
from .meanshift import DegenerateStepError, MeanShiftConfig, RunResult, merge_modes, ms_step, run_all, run_from_seed, xmax_norm
from .profiles import DomainError, Family, KernelProfile, eval_g, eval_k, eval_k2, parse_kernel, powerlaw_exponent
from .segmentation import segment
