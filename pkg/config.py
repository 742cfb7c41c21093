"""
Configuration for the numerical radius toolkit
All tolerances, grid sizes and exit codes are defined here for easy adjustment
"""
import os
from dotenv import load_dotenv

load_dotenv()

# Environment overrides
ENV_SEED = os.getenv("WRADIUS_SEED", "")
LOG_LEVEL = os.getenv("WRADIUS_LOG_LEVEL", "WARNING")
ENV_WORKERS = os.getenv("WRADIUS_WORKERS", "")

# Numerical tolerances (relative unless noted)
TOLERANCES = {
    "hermitian_asymmetry": 1e-10,   # ‖H − H*‖ ≤ tol·(1 + ‖H‖_F)
    "psd_clamp": 1e-10,             # eigenvalues ≥ −tol·λ_max are clamped to 0
    "polar_rank_cutoff": 1e-12,     # σ ≤ cutoff·σ_max is treated as zero
    "contraction_slack": 1e-10,     # ‖K‖ ≤ 1 + slack
    "reconstruction": 1e-8,         # ‖g(|A*|)·K·f(|A|) − A‖ ≤ tol·(1 + ‖A‖)
    "lemma_slack": 1e-10,           # absolute slack of the mixed Schwarz inequality
    "function_pair": 1e-10,         # |f(λ)g(λ) − λ| ≤ tol·(1 + λ)
    "eigen_slack": 1e-13,           # rounding allowance on computed eigenvalues
    "kernel_residual": 1e-12,       # eigh/svd residuals ≤ tol·dimension·(1 + scale)
    "norm_width": 1e-14,            # half-width of a norm enclosure, per dimension
    "sweep_relative": 1e-8,         # default sweep tol = value·(1 + ‖A‖)
    "report_width": 1e-8,           # absolute width of the true w in a bound report
}

# Certified θ-sweep for w(A)
SWEEP = {
    "initial_directions": 64,
    "max_rounds": 40,
    "max_directions": 1 << 20,
    "golden_iterations": 40,
}

# t-grid used by every min-over-t bound
T_GRID = {
    "points": 201,
    "golden_iterations": 50,
}

# Ensemble verification defaults
VERIFY = {
    "seed": 42,
    "count": 200,
    "n": 2,
    "d": 2,
    "ensemble": "gaussian",
    "t_values": (0.0, 0.25, 0.5, 0.75, 1.0),
    "identity_rtol": 1e-7,
    "soundness_slack": 1e-8,
    "sweep_tol": 1e-8,
    "lemma_samples": 5,
    "workers": 1,
}

ENSEMBLES = ("gaussian", "nilpotent", "normal", "positive", "shift")

# CLI exit codes
EXIT_CODES = {
    "ok": 0,
    "violation": 1,
    "parse": 2,
    "dimension": 3,
    "unknown_bound": 4,
    "usage": 64,
}

# Matrix file format
SCHEMA_VERSION = 1
FORMAT_PRECISION = 17  # significant digits for canonical serialization

FIXTURES_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), "data", "fixtures")
