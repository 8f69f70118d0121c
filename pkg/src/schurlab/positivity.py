"""Positivity of real (k,k)-forms on C^n.

With q = n - k, a real (k,k)-form u is positive when u ^ i^{q^2} beta ^ conj(beta)
is a positive multiple of the reference volume for every non-zero (q,0)-form
beta, and weakly positive when this holds for decomposable beta only. Positivity
is decided from the complement Gram matrix; weak positivity is searched by
alternating minimization and only ever certifies failures.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .exact import ONE, ZERO, ExactComplex, as_exact, format_rational, i_power, psd_factor, quadratic_value, rational_vectors
from .hermitian import CUTOFF, check_hermitian, zero_band
from .multilinear import Form, conjugate, form_from_vector, hermitian_gram, volume_coefficient, wedge, wedge_all

__all__ = [
    "POSITIVE",
    "DEGENERATE",
    "NOT_NONNEGATIVE",
    "WEAK_SAMPLED",
    "WEAK_COUNTEREXAMPLE",
    "PositivityVerdict",
    "StrongDecomposition",
    "FalsificationError",
    "is_positive",
    "is_nonnegative",
    "is_weakly_positive",
    "build_strongly_positive",
    "wedge_positivity_check",
    "plucker",
]

POSITIVE = "Positive"
DEGENERATE = "NonNegativeDegenerate"
NOT_NONNEGATIVE = "NotNonNegative"
WEAK_SAMPLED = "WeaklyPositiveSampled"
WEAK_COUNTEREXAMPLE = "WeakCounterexample"

DEFAULT_RESTARTS = 64
DEFAULT_SWEEPS = 200
DEFAULT_SAMPLES = 1000
SWEEP_TOL = 1e-12


class FalsificationError(AssertionError):
    """A proven statement failed on an exact instance; ``bundle`` reproduces it."""

    def __init__(self, message: str, bundle: dict):
        super().__init__(message)
        self.bundle = bundle


@dataclass(frozen=True)
class PositivityVerdict:
    level: str
    margin: float
    witness: object = None  # a (q,0)-Form, or a list of (1,0)-Forms for weak witnesses
    value: Fraction | None = None  # exact pairing of the witness
    stats: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.level in (NOT_NONNEGATIVE, WEAK_COUNTEREXAMPLE):
            if self.witness is None or self.value is None or self.value >= 0:
                raise AssertionError(f"{self.level} verdict without a strictly negative exact witness")

    @property
    def is_positive(self) -> bool:
        return self.level in (POSITIVE, WEAK_SAMPLED)

    @property
    def is_counterexample(self) -> bool:
        return self.level in (NOT_NONNEGATIVE, WEAK_COUNTEREXAMPLE)

    def to_json(self) -> dict:
        out = {"level": self.level, "margin": float(self.margin)}
        if isinstance(self.witness, Form):
            out["witness"] = self.witness.to_json()
        elif self.witness is not None:
            out["witness"] = [w.to_json() for w in self.witness]
        if self.value is not None:
            out["value"] = format_rational(self.value)
        out["stats"] = {
            "restarts": int(self.stats.get("restarts", 0)),
            "samples": int(self.stats.get("samples", 0)),
            "seed": int(self.stats.get("seed", 0)),
        }
        return out


@dataclass(frozen=True)
class StrongDecomposition:
    """Terms alpha_s = beta_1 ^ ... ^ beta_k given by their (1,0)-form factors."""

    n: int
    k: int
    terms: tuple
    coefficients: tuple

    def assemble(self) -> Form:
        total = Form.zero(self.n, self.k, self.k)
        ik = i_power(self.k * self.k)
        for factors, c in zip(self.terms, self.coefficients):
            alpha = wedge_all(list(factors), self.n)
            total = total + wedge(alpha, conjugate(alpha)).scale(ik * c)
        return total


def _check_input(u: Form) -> tuple[int, int, int]:
    if u.p != u.q:
        raise ValueError(f"expected a (k,k)-form, got bidegree {u.bidegree}")
    if u.p > u.n:
        raise ValueError(f"k={u.p} exceeds n={u.n}")
    if not u.is_exact():
        raise TypeError("positivity checks need an exact form")
    if not u.is_real():
        raise ValueError("form is not real")
    return u.n, u.p, u.n - u.p


def _normalize(w: Sequence[ExactComplex]) -> list[ExactComplex]:
    """Scale exactly so that the largest entry (by modulus) becomes 1."""
    k = max(range(len(w)), key=lambda i: w[i].abs2())
    piv = w[k]
    return [c / piv for c in w] if piv else list(w)


def is_positive(u: Form, cutoff: float = CUTOFF) -> PositivityVerdict:
    """Positive iff the complement Gram matrix H is positive definite."""
    n, k, q = _check_input(u)
    H = hermitian_gram(u, "complement", exact=True)
    chk = check_hermitian(H, cutoff)
    stats = {"cutoff": chk.band}
    if chk.positive:
        return PositivityVerdict(POSITIVE, chk.margin, stats=stats)
    # the pairing of beta = sum b_K e^K is b^T H conj(b), so b = conj(w)
    b = [c.conjugate() for c in _normalize(chk.witness)] if chk.witness is not None else None
    beta = form_from_vector(n, q, b) if b is not None else None
    value = quadratic_value(H, [c.conjugate() for c in b]) if b is not None else None
    if chk.kind == "indefinite":
        return PositivityVerdict(NOT_NONNEGATIVE, chk.margin, beta, value, stats)
    return PositivityVerdict(DEGENERATE, chk.margin, beta, value, stats)


def is_nonnegative(u: Form, cutoff: float = CUTOFF) -> tuple[PositivityVerdict, list[Form] | None]:
    """PSD test on the coefficient Gram G; when PSD, (k,0)-forms alpha_s with
    u = sum_s i^{k^2} alpha_s ^ conj(alpha_s), reassembled exactly."""
    n, k, q = _check_input(u)
    G = hermitian_gram(u, "coefficient", exact=True)
    chk = check_hermitian(G, cutoff)
    if chk.kind == "indefinite":
        # G and H are congruent, so H supplies the (q,0)-form witness
        verdict = is_positive(u, cutoff)
        if verdict.level != NOT_NONNEGATIVE:
            raise AssertionError("coefficient and complement Gram matrices disagree")
        return PositivityVerdict(NOT_NONNEGATIVE, chk.margin, verdict.witness, verdict.value), None
    alphas = [form_from_vector(n, k, w) for w in psd_factor(G)]
    ik = i_power(k * k)
    total = Form.zero(n, k, k)
    for a in alphas:
        total = total + wedge(a, conjugate(a)).scale(ik)
    if total != u:
        raise AssertionError("non-negative decomposition does not reassemble the form")
    level = POSITIVE if chk.positive else DEGENERATE
    return PositivityVerdict(level, chk.margin), alphas


# -- weak positivity -------------------------------------------------------------------
def plucker(frame: np.ndarray, q: int) -> np.ndarray:
    """Coordinates b_K = det(frame[:, K]) of beta_1 ^ ... ^ beta_q over q-subsets K."""
    n = frame.shape[-1]
    cols = list(itertools.combinations(range(n), q))
    sub = frame[..., :, cols]  # (..., q, C, q)
    sub = np.moveaxis(sub, -2, -3)  # (..., C, q, q)
    return np.linalg.det(sub)


def _exact_plucker(rows: list[list[ExactComplex]], q: int, n: int) -> list[ExactComplex]:
    out = []
    for K in itertools.combinations(range(n), q):
        total = ZERO
        for perm in itertools.permutations(range(q)):
            term = ONE
            for a in range(q):
                term = term * rows[a][K[perm[a]]]
                if not term:
                    break
            if term:
                sign = _perm_sign(perm)
                total = total + term if sign > 0 else total - term
        out.append(total)
    return out


def _perm_sign(perm) -> int:
    inv = sum(1 for a in range(len(perm)) for b in range(a + 1, len(perm)) if perm[a] > perm[b])
    return -1 if inv & 1 else 1


def _orthonormal_rows(mat: np.ndarray) -> np.ndarray:
    qmat, _ = np.linalg.qr(mat.conj().T)
    return qmat.conj().T


def _phi(H: np.ndarray, b: np.ndarray) -> float:
    return float(np.real(b @ H @ b.conj()))


def _alternating_run(H: np.ndarray, frame: np.ndarray, q: int, sweeps: int, tol: float):
    n = frame.shape[1]
    eye = np.eye(n, dtype=complex)
    prev = _phi(H, plucker(frame, q))
    for _ in range(sweeps):
        for j in range(q):
            others = np.delete(frame, j, axis=0)
            # basis of the orthogonal complement of the other rows
            _, _, vh = np.linalg.svd(others.conj(), full_matrices=True)
            P = vh[q - 1 :].conj().T  # n x (n-q+1), orthonormal columns
            trial = np.repeat(frame[None], n, axis=0)
            trial[:, j, :] = eye
            M = plucker(trial, q).T  # C x n, b = M beta_j
            C = M @ P
            S = C.T @ H @ C.conj()
            S = (S + S.conj().T) / 2
            _, vecs = np.linalg.eigh(S)
            frame[j] = P @ vecs[:, 0].conj()
        val = _phi(H, plucker(frame, q))
        if prev - val < tol:
            prev = val
            break
        prev = val
    return prev, frame


def _certify_frame(H_exact, frame: np.ndarray, q: int, n: int):
    """Round each row to Gaussian rationals and evaluate exactly; returns (rows, value) or None."""
    candidates = [list(rational_vectors(row)) for row in frame]
    for level in range(len(candidates[0])):
        rows = [c[min(level, len(c) - 1)] for c in candidates]
        b = _exact_plucker(rows, q, n)
        val = quadratic_value(H_exact, [c.conjugate() for c in b])
        if val < 0:
            return rows, val
    return None


def is_weakly_positive(
    u: Form,
    restarts: int = DEFAULT_RESTARTS,
    sweeps: int = DEFAULT_SWEEPS,
    samples: int = DEFAULT_SAMPLES,
    seed: int = 0,
    tol: float = SWEEP_TOL,
    cutoff: float = CUTOFF,
) -> PositivityVerdict:
    """Search for a decomposable beta with a non-positive pairing.

    Only exact counterexamples are conclusive; otherwise the verdict is
    WeaklyPositiveSampled with the smallest normalized value seen.
    """
    n, k, q = _check_input(u)
    if restarts <= 0 and samples <= 0:
        raise ValueError("weak positivity search needs a non-zero budget")
    stats = {"restarts": restarts, "samples": samples, "seed": seed}
    if q == 0:
        tau = volume_coefficient(u)
        if tau > 0:
            return PositivityVerdict(WEAK_SAMPLED, float(tau), stats={**stats, "exact": True})
        if tau < 0:
            return PositivityVerdict(WEAK_COUNTEREXAMPLE, float(tau), [], tau, {**stats, "exact": True})
        return PositivityVerdict(DEGENERATE, 0.0, [], tau, {**stats, "exact": True})
    if q in (1, n - 1, n):
        v = is_positive(u, cutoff)
        level = {POSITIVE: WEAK_SAMPLED, NOT_NONNEGATIVE: WEAK_COUNTEREXAMPLE}.get(v.level, v.level)
        witness = v.witness
        if witness is not None and q == 1:
            witness = [witness]
        return PositivityVerdict(level, v.margin, witness, v.value, {**stats, "exact": True})

    H_exact = hermitian_gram(u, "complement", exact=True)
    H = np.array([[complex(c) for c in row] for row in H_exact], dtype=complex)
    band = zero_band(H, cutoff)
    rng = np.random.default_rng(seed)
    best_val, best_frame = np.inf, None
    for _ in range(restarts):
        frame = _orthonormal_rows(rng.normal(size=(q, n)) + 1j * rng.normal(size=(q, n)))
        val, frame = _alternating_run(H, frame, q, sweeps, tol)
        if val < best_val:
            best_val, best_frame = val, frame.copy()
    if samples > 0:
        frames = rng.normal(size=(samples, q, n)) + 1j * rng.normal(size=(samples, q, n))
        b = plucker(frames, q)
        vals = np.real(np.einsum("sk,kl,sl->s", b, H, b.conj())) / np.sum(np.abs(b) ** 2, axis=1)
        i = int(np.argmin(vals))
        if vals[i] < best_val:
            best_val, best_frame = float(vals[i]), _orthonormal_rows(frames[i])
    if best_val <= band:
        hit = _certify_frame(H_exact, best_frame, q, n)
        if hit is not None:
            rows, val = hit
            witness = [form_from_vector(n, 1, row) for row in rows]
            return PositivityVerdict(WEAK_COUNTEREXAMPLE, best_val, witness, val, stats)
    return PositivityVerdict(WEAK_SAMPLED, best_val, stats=stats)


# -- constructors and products ------------------------------------------------------------
def build_strongly_positive(
    terms: Sequence[Sequence], coefficients: Sequence | None = None, n: int | None = None
) -> tuple[Form, StrongDecomposition]:
    """sum_s c_s i^{k^2} alpha_s ^ conj(alpha_s) with alpha_s = wedge of the given (1,0)-forms.

    Factors may be (1,0)-Forms or coefficient vectors of length n.
    """
    coefficients = [Fraction(1)] * len(terms) if coefficients is None else [Fraction(c) for c in coefficients]
    if len(coefficients) != len(terms):
        raise ValueError("one coefficient per term")
    if any(c < 0 for c in coefficients):
        raise ValueError("coefficients must be non-negative")
    parsed = []
    for factors in terms:
        fs = []
        for f in factors:
            if not isinstance(f, Form):
                f = Form.covector(len(f), [as_exact(c) if not isinstance(c, ExactComplex) else c for c in f])
            if f.bidegree != (1, 0):
                raise ValueError("factors must be (1,0)-forms")
            fs.append(f)
        parsed.append(tuple(fs))
    degrees = {len(fs) for fs in parsed}
    if len(degrees) > 1:
        raise ValueError(f"mixed degrees among terms: {sorted(degrees)}")
    dims = {f.n for fs in parsed for f in fs} | ({n} if n is not None else set())
    if len(dims) > 1:
        raise ValueError("factors live in different dimensions")
    if not dims:
        raise ValueError("an empty term list needs n")
    n = dims.pop()
    k = degrees.pop() if degrees else 0
    dec = StrongDecomposition(n, k, tuple(parsed), tuple(coefficients))
    if not parsed:
        return Form.zero(n, 0, 0), dec
    return dec.assemble(), dec


def wedge_positivity_check(u: Form, v: Form) -> PositivityVerdict:
    """is_positive(u ^ v) for positive u and v; anything but Positive is a falsification."""
    for name, f in (("u", u), ("v", v)):
        verdict = is_positive(f)
        if verdict.level != POSITIVE:
            raise ValueError(f"{name} is not positive ({verdict.level})")
    if u.p + v.p > u.n:
        raise ValueError("total degree exceeds n")
    product = wedge(u, v)
    verdict = is_positive(product)
    if verdict.level != POSITIVE:
        raise FalsificationError(
            "product of positive forms is not positive",
            {"u": u.to_json(), "v": v.to_json(), "verdict": verdict.to_json()},
        )
    return verdict
