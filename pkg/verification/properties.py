"""
Property suites run by `verify` over a seeded ensemble
Each suite records pass/fail checks with a margin (≥ 0 means the property holds)
"""
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, Iterable, List, Optional
import logging

import numpy as np
from pydantic import BaseModel

import config
from analyzers import block_bounds, operator_bounds
from analyzers.block_bounds import BoundId
from analyzers.radius import numerical_radius
from ensembles import EnsembleSpec, complex_gaussian, generate_instance, random_unitary
from linalg.block_matrix import BlockOperatorMatrix
from linalg.enclosure import Enclosure
from linalg.matcore import eig_residuals, hermitian_eig, norm2, svd, svd_residuals
from linalg.specfun import abs_factors, contraction_factorization, lemma_slack, power_pair

logger = logging.getLogger(__name__)


class PropertyCheck:
    """Outcome of one property on one ensemble instance"""
    def __init__(self, name: str, passed: bool, explanation: str, instance: int, margin: float):
        self.name = name
        self.passed = passed
        self.explanation = explanation
        self.instance = instance
        self.margin = margin  # distance to violation; negative when violated


SUITES = (
    "kernels",
    "lemma",
    "radius",
    "soundness",
    "refinement",
    "contraction",
    "exact_values",
    "single_operator",
    "two_block",
    "derived",
    "ensemble",
)


def _zero_corner(X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    """[[0, X], [Y, 0]]"""
    Z = np.zeros_like(X)
    return np.block([[Z, X], [Y, Z]])


class InstanceVerifier:
    """Runs the property suites on one block operator matrix"""

    def __init__(self, A: BlockOperatorMatrix, index: int, spec: EnsembleSpec, tol: Optional[float] = None):
        self.A = A
        self.index = index
        self.spec = spec
        self.M = A.flatten()
        self.m = self.M.shape[0]
        self.rng = np.random.default_rng(np.random.SeedSequence(spec.seed, spawn_key=(index, 1)))
        self.tol = tol or config.VERIFY["sweep_tol"]
        self.slack = config.VERIFY["soundness_slack"]
        self.rtol = config.VERIFY["identity_rtol"]
        self.t_values = config.VERIFY["t_values"]
        self.checks: List[PropertyCheck] = []
        self._true_w: Optional[Enclosure] = None

    def true_w(self) -> Enclosure:
        if self._true_w is None:
            self._true_w = numerical_radius(self.M, self.tol)
        return self._true_w

    def w(self, X: np.ndarray) -> Enclosure:
        return numerical_radius(X, self.tol)

    def record(self, name: str, margin: float, explanation: str) -> None:
        self.checks.append(PropertyCheck(name, bool(margin >= 0.0), explanation, self.index, float(margin)))

    def record_bound(self, name: str, bound: float, true_w: Enclosure) -> None:
        """A bound is sound when it reaches the lower end of the true enclosure"""
        self.record(name, bound + self.slack - true_w.lo, f"bound {bound:.12g} vs w ≥ {true_w.lo:.12g}")

    def record_identity(self, name: str, value: float, expected: float) -> None:
        margin = self.rtol * (1.0 + abs(expected)) - abs(value - expected)
        self.record(name, margin, f"computed {value:.12g}, expected {expected:.12g}")

    def analyze(self, suites: Optional[Iterable[str]] = None) -> List[PropertyCheck]:
        """Run the selected suites (all by default)"""
        self.checks = []
        for suite in suites or SUITES:
            getattr(self, f"check_{suite}")()
        return self.checks

    # Suites

    def check_kernels(self):
        """Residuals of the Hermitian eigensolver and the SVD"""
        limit = config.TOLERANCES["kernel_residual"] * self.m

        H = self.M + self.M.conj().T
        res = eig_residuals(H, hermitian_eig(H))
        scale = limit * (1.0 + res["scale"])
        self.record("kernels:eig_reconstruction", scale - res["reconstruction"], f"residual {res['reconstruction']:.3e}")
        self.record("kernels:eig_orthonormality", limit - res["orthonormality"], f"residual {res['orthonormality']:.3e}")

        res = svd_residuals(self.M, svd(self.M))
        scale = limit * (1.0 + res["scale"])
        self.record("kernels:svd_reconstruction", scale - res["reconstruction"], f"residual {res['reconstruction']:.3e}")
        worst = max(res["orthonormality_u"], res["orthonormality_v"])
        self.record("kernels:svd_orthonormality", limit - worst, f"residual {worst:.3e}")

    def check_lemma(self):
        """Contraction factorization quality and the mixed Schwarz inequality"""
        norm = norm2(self.M)
        for t in self.t_values:
            pair = power_pair(t)
            fac = contraction_factorization(self.M, pair)
            self.record(
                "lemma:reconstruction",
                config.TOLERANCES["reconstruction"] * (1.0 + norm) - fac.reconstruction_residual,
                f"t={t:g}: ‖g(|A*|)Kf(|A|) − A‖ = {fac.reconstruction_residual:.3e}",
            )
            self.record(
                "lemma:contraction_norm",
                1.0 + config.TOLERANCES["contraction_slack"] - fac.contraction_norm,
                f"t={t:g}: ‖K‖ = {fac.contraction_norm:.15g}",
            )
            for _ in range(config.VERIFY["lemma_samples"]):
                x = complex_gaussian(self.rng, self.m)
                y = complex_gaussian(self.rng, self.m)
                x /= np.linalg.norm(x)
                y /= np.linalg.norm(y)
                slack = lemma_slack(self.M, pair, x, y, factorization=fac)
                self.record("lemma:inequality", slack + config.TOLERANCES["lemma_slack"], f"t={t:g}: rhs − lhs = {slack:.3e}")

    def check_radius(self):
        """½‖A‖ ≤ w(A) ≤ ‖A‖ and rotation invariance"""
        w = self.true_w()
        norm = norm2(self.M)
        self.record("radius:half_norm_below", w.hi + self.slack - 0.5 * norm, f"w ≤ {w.hi:.12g}, ½‖A‖ = {0.5 * norm:.12g}")
        self.record("radius:norm_above", norm + self.tol - w.lo, f"w ≥ {w.lo:.12g}, ‖A‖ = {norm:.12g}")

        phi = float(self.rng.uniform(0.0, 2.0 * np.pi))
        rotated = self.w(np.exp(1j * phi) * self.M)
        self.record("radius:rotation_invariance", 2.0 * self.tol - abs(rotated.mid - w.mid),
                    f"φ={phi:.6f}: {rotated.mid:.12g} vs {w.mid:.12g}")

    def check_soundness(self):
        """Every catalogue bound dominates the true numerical radius"""
        w = self.true_w()
        for bound_id in BoundId:
            if bound_id in block_bounds.T_FAMILIES:
                for t in self.t_values:
                    result = block_bounds.evaluate_bound(self.A, bound_id, t)
                    self.record_bound(f"soundness:{bound_id.value}", result.value.hi, w)
            else:
                result = block_bounds.evaluate_bound(self.A, bound_id)
                self.record_bound(f"soundness:{bound_id.value}", result.value.hi, w)

    def check_refinement(self):
        """rem12 ≤ rem2(t) entrywise, and rem12_i ≤ bhunia_sqrt ≤ aok ≤ hou_du at the w level"""
        for family, base in block_bounds.MIN_FAMILIES.items():
            minimized = block_bounds.minimize_over_t(self.A, family).aux
            for t in self.t_values:
                fixed = block_bounds.aux_matrix(self.A, base, t)
                margin = float(np.min(fixed - minimized + 1e-12 * (1.0 + fixed)))
                self.record(f"refinement:{family.value}_entries", margin, f"t={t:g}: min entry gap {margin:.3e}")

        chain = [BoundId.REM12_I, BoundId.BHUNIA_SQRT, BoundId.AOK, BoundId.HOU_DU]
        values = [block_bounds.evaluate_bound(self.A, b).value.hi for b in chain]
        for (lower, upper), (a, b) in zip(zip(chain, chain[1:]), zip(values, values[1:])):
            self.record(f"refinement:{lower.value}<={upper.value}", b + self.slack - a, f"{a:.12g} ≤ {b:.12g}")

    def check_contraction(self):
        """cor1_1(t) entries stay below the aok entries (|K| ≤ I)"""
        aok = block_bounds.aux_matrix(self.A, BoundId.AOK)
        off = ~np.eye(self.A.n, dtype=bool)
        for t in self.t_values:
            cor = block_bounds.aux_matrix(self.A, BoundId.COR1_1, t)
            margin = float(np.min((aok - cor + 1e-10 * (1.0 + aok))[off])) if off.any() else 0.0
            self.record("contraction:cor1_1<=aok", margin, f"t={t:g}: min entry gap {margin:.3e}")

    def check_exact_values(self):
        """Closed-form numerical radii of 2×2 operator matrices"""
        X = self.M
        Y = complex_gaussian(self.rng, (self.m, self.m))
        zero = np.zeros_like(X)

        self.record_identity("exact:square_zero", self.w(_zero_corner(X, zero)).mid, 0.5 * norm2(X))
        self.record_identity("exact:self_adjoint_corner", self.w(_zero_corner(X, X.conj().T)).mid, norm2(X))

        P = X.conj().T @ X
        Q = Y.conj().T @ Y
        self.record_identity("exact:positive_corner", self.w(_zero_corner(P, Q)).mid, 0.5 * norm2(P + Q))

        w = self.w(_zero_corner(X, Y.conj().T))
        lower = operator_bounds.lower_bound_sum(X, Y)
        self.record("exact:half_sum_lower", w.hi + self.slack - lower, f"½‖A+B‖ = {lower:.12g} ≤ w ≤ {w.hi:.12g}")

    def check_single_operator(self):
        """w(A) ≤ prop1_min ≤ ‖A‖, the concavity chain, and p112(t) ≤ kittaneh_sq"""
        norm = norm2(self.M)
        w = self.true_w()
        eps = 1e-10 * (1.0 + norm)

        prop1_min = operator_bounds.single_operator_bound(self.M, "prop1_min").value.hi
        self.record_bound("single:prop1_min", prop1_min, w)
        self.record("single:prop1_min<=norm", norm + eps - prop1_min, f"{prop1_min:.12g} ≤ {norm:.12g}")

        absA, absAstar = abs_factors(self.M)
        mean_norm = norm2(0.5 * (absA + absAstar))
        kittaneh_sq = operator_bounds.single_operator_bound(self.M, "kittaneh_sq").value.hi
        for t in self.t_values:
            prop1 = operator_bounds.single_operator_bound(self.M, "prop1", t).value.hi
            concave = norm ** t * mean_norm ** (1.0 - t)
            self.record("single:prop1_concavity", concave + eps - prop1, f"t={t:g}: {prop1:.12g} ≤ {concave:.12g}")
            self.record("single:concavity<=norm", norm + eps - concave, f"t={t:g}: {concave:.12g} ≤ {norm:.12g}")

            p112 = operator_bounds.single_operator_bound(self.M, "p112", t).value.hi
            self.record("single:p112<=kittaneh_sq", kittaneh_sq + self.slack - p112, f"t={t:g}: {p112:.12g} ≤ {kittaneh_sq:.12g}")

    def check_two_block(self):
        """Bounds for 2×2 grids; skipped for other grid sizes"""
        if self.A.n != 2:
            return
        X, Y = self.A.block(0, 1), self.A.block(1, 0)
        off_w = self.w(_zero_corner(X, Y))

        for t in self.t_values:
            prop5 = operator_bounds.two_block_bound(X, Y, "prop5", t).value.hi
            self.record_bound("two_block:prop5", prop5, off_w)

        p2_min = operator_bounds.two_block_bound(X, Y, "p2_min").value.hi
        p2_max = operator_bounds.two_block_bound(X, Y, "p2_max").value.hi
        self.record_bound("two_block:p2_min", p2_min, off_w)
        self.record("two_block:p2_min<=p2_max", p2_max + 1e-12 - p2_min, f"{p2_min:.12g} ≤ {p2_max:.12g}")

        p22 = operator_bounds.two_block_bound(X, Y, "p22", C=self.A.block(0, 0), D=self.A.block(1, 1)).value.hi
        self.record_bound("two_block:p22", p22, self.true_w())

        absX, absXstar = abs_factors(X)
        absY, absYstar = abs_factors(Y)
        half = operator_bounds.two_block_bound(X, Y, "prop5", 0.5).value.hi
        closed = 0.5 * np.sqrt(norm2(absX + absYstar)) * np.sqrt(norm2(absXstar + absY))
        self.record_identity("two_block:prop5_half_closed_form", half, float(closed))

    def check_derived(self):
        """Product, sum-of-products, commutator and unitary bounds against swept radii"""
        size = self.m
        A = self.M
        B, C, D = (complex_gaussian(self.rng, (size, size)) for _ in range(3))

        w_ab = self.w(A @ B)
        for t in self.t_values:
            self.record_bound("derived:product", operator_bounds.product_bound(A, B, t).value.hi, w_ab)
        self.record_bound("derived:product_min", operator_bounds.product_bound(A, B).value.hi, w_ab)

        for variant in operator_bounds.SumProductVariant:
            bound = operator_bounds.sum_product_bound(A, B, C, D, variant).value.hi
            self.record_bound(f"derived:{variant.value}_sum", bound, self.w(A @ B + C @ D))
            self.record_bound(f"derived:{variant.value}_difference", bound, self.w(A @ B - C @ D))

        commutator = operator_bounds.commutator_bound(A, B)
        self.record_bound("derived:commutator_sum", commutator.value.hi, self.w(A @ B + B @ A))
        self.record_bound("derived:commutator_difference", commutator.value.hi, self.w(A @ B - B @ A))
        half = commutator.params["t_half_value"]
        self.record("derived:commutator<=t_half", half + 1e-12 * (1.0 + half) - commutator.value.hi,
                    f"{commutator.value.hi:.12g} ≤ {half:.12g}")

        U, V = random_unitary(self.rng, size), random_unitary(self.rng, size)
        unitary_sum = operator_bounds.unitary_bound(A, "sum").value.hi
        for label, X in (("AU+VA", A @ U + V @ A), ("AU-VA", A @ U - V @ A),
                         ("AU+VA*", A @ U + V @ A.conj().T), ("AU-VA*", A @ U - V @ A.conj().T)):
            self.record_bound(f"derived:unitary_sum[{label}]", unitary_sum, self.w(X))
        self.record_bound("derived:unitary_product", operator_bounds.unitary_bound(A, "product").value.hi, self.w(A @ U))

    def check_ensemble(self):
        """Identities specific to the ensemble the instance was drawn from"""
        ensemble = self.spec.ensemble
        norm = norm2(self.M)

        if ensemble == "nilpotent":
            zero = np.zeros_like(self.M)
            self.record_identity("ensemble:nilpotent_corner", self.w(_zero_corner(self.M, zero)).mid, 0.5 * norm)
            if norm2(self.M @ self.M) <= config.TOLERANCES["eigen_slack"] * (1.0 + norm) ** 2:
                self.record_identity("ensemble:square_zero", self.true_w().mid, 0.5 * norm)
        elif ensemble in ("normal", "positive"):
            self.record_identity(f"ensemble:{ensemble}_w_equals_norm", self.true_w().mid, norm)


# Aggregation

class PropertyTally(BaseModel):
    name: str
    checked: int
    violated: int
    worst_margin: float


class Violation(BaseModel):
    property: str
    instance: int
    seed: int
    explanation: str
    margin: float
    matrix: List[List[List[float]]]


class VerificationSummary(BaseModel):
    spec: EnsembleSpec
    checked: int
    violated: int
    properties: List[PropertyTally]
    violations: List[Violation]

    @property
    def ok(self) -> bool:
        return self.violated == 0


MAX_REPORTED_VIOLATIONS = 20


def _verify_instance(spec: EnsembleSpec, index: int, suites: Optional[Iterable[str]],
                     tol: Optional[float]) -> List[PropertyCheck]:
    A = generate_instance(spec, index)
    checks = InstanceVerifier(A, index, spec, tol).analyze(suites)
    logger.debug("instance %d: %d checks", index, len(checks))
    return checks


def verify_ensemble(spec: EnsembleSpec, workers: int = 1, suites: Optional[Iterable[str]] = None,
                    tol: Optional[float] = None) -> VerificationSummary:
    """
    Run the property suites over every instance of the ensemble
    The summary is independent of the worker count
    """
    suites = list(suites) if suites else None
    indices = range(spec.count)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            per_instance = list(pool.map(lambda i: _verify_instance(spec, i, suites, tol), indices))
    else:
        per_instance = [_verify_instance(spec, i, suites, tol) for i in indices]

    tallies: Dict[str, PropertyTally] = {}
    violations: List[Violation] = []
    for checks in per_instance:
        for check in checks:
            tally = tallies.setdefault(check.name, PropertyTally(name=check.name, checked=0, violated=0, worst_margin=np.inf))
            tally.checked += 1
            tally.worst_margin = min(tally.worst_margin, check.margin)
            if check.passed:
                continue
            tally.violated += 1
            if len(violations) < MAX_REPORTED_VIOLATIONS:
                M = generate_instance(spec, check.instance).flatten()
                violations.append(Violation(
                    property=check.name,
                    instance=check.instance,
                    seed=spec.seed,
                    explanation=check.explanation,
                    margin=check.margin,
                    matrix=[[[z.real, z.imag] for z in row] for row in M],
                ))

    properties = sorted(tallies.values(), key=lambda t: t.name)
    total = sum(t.checked for t in properties)
    violated = sum(t.violated for t in properties)
    if violated:
        logger.warning("%d of %d checks violated", violated, total)
    return VerificationSummary(spec=spec, checked=total, violated=violated, properties=properties, violations=violations)
